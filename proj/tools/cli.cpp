#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nodehilb/nodehilb.hpp"

namespace nodehilb::cli {

namespace {

using json = nlohmann::ordered_json;

// Desk-scale limits; RUN_SCALE=k multiplies each upper bound by k.
constexpr int kMaxRelationsAmbient = 5;
constexpr int kMaxPoints = 15;
constexpr int kMaxSeriesOrder = 60;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int run_scale()
{
    const char* env = std::getenv("RUN_SCALE");
    if (env == nullptr || *env == '\0') {
        return 1;
    }
    try {
        const int k = std::stoi(env);
        return std::max(k, 1);
    } catch (const std::exception&) {
        return 1;
    }
}

void check_bound(const char* what, int value, int lo, int hi)
{
    if (value < lo || value > hi) {
        throw UsageError(std::string(what) + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                         "], got " + std::to_string(value) + " (set RUN_SCALE to raise the upper bound)");
    }
}

std::string str(const Rational& r) { return to_string(r); }

/// Coefficients of row n, j = 0..max(n, last nonzero), clipped to the window.
json row_coeffs(const series::Series2& s, int n)
{
    const auto row = s.row(n);
    const int last = std::min(s.order(), std::max(n, row.degree()));
    json coeffs = json::array();
    for (int j = 0; j <= last; ++j) {
        coeffs.push_back(str(row.coeff(static_cast<std::size_t>(j))));
    }
    return coeffs;
}

json locator(int n, int j) { return json{{"n", n}, {"d", 2 * j}}; }

// One named check in a verify report.
struct Check {
    explicit Check(std::string n) : name(std::move(n)) {}

    std::string name;
    bool pass = true;
    json details = json::object();
    std::optional<std::string> locator;

    json to_json() const
    {
        json j{{"name", name}, {"status", pass ? "pass" : "fail"}};
        if (locator) {
            j["locator"] = *locator;
        }
        j["details"] = details;
        return j;
    }
};

// ---------------------------------------------------------------------------
// verify suites

Check relations_check(int m)
{
    const auto report = verify_relations(static_cast<std::size_t>(m));
    Check c{"relations m=" + std::to_string(m)};
    json families = json::object();
    for (const auto& r : report.checks) {
        auto& fam = families[r.family];
        if (fam.is_null()) {
            fam = json{{"checked", 0}, {"passed", 0}};
        }
        fam["checked"] = fam["checked"].get<int>() + 1;
        if (r.pass) {
            fam["passed"] = fam["passed"].get<int>() + 1;
        } else if (c.pass) {
            c.pass = false;
            c.locator = r.family + " at i=" + std::to_string(r.i) + ", j=" + std::to_string(r.j) + ": got " + r.actual;
        }
    }
    c.details = json{{"m", m}, {"families", families}};
    return c;
}

std::vector<Check> node_checks(int n_max)
{
    const node::NodeModule module(n_max + 2);
    std::vector<Check> checks;

    {
        Check c{"dimensions"};
        const auto closed = series::closed_form_pv(n_max);
        json pieces = json::array();
        for (int n = 0; n <= n_max; ++n) {
            for (int j = 0; j <= n; ++j) {
                const auto& pc = module.piece(n, j);
                pieces.push_back(json{{"n", n},
                                      {"d", 2 * j},
                                      {"dim_vpp", pc.dim_vpp()},
                                      {"dim_u", pc.dim_u()},
                                      {"dim", pc.dim()}});
                if (c.pass && closed.at(n, j) != Rational(static_cast<long>(pc.dim()))) {
                    c.pass = false;
                    c.locator = "V_{" + std::to_string(n) + "," + std::to_string(2 * j) + "} = " +
                                std::to_string(pc.dim()) + " vs closed form " + str(closed.at(n, j));
                }
            }
        }
        c.details = json{{"pieces", pieces}};
        checks.push_back(std::move(c));
    }

    {
        Check c{"operator relations"};
        const auto report = module.check_operator_relations(n_max);
        json per = json::object();
        for (const auto& e : report.entries) {
            auto& r = per[e.relation];
            if (r.is_null()) {
                r = json{{"pieces", 0}, {"passed", 0}};
            }
            r["pieces"] = r["pieces"].get<int>() + 1;
            if (e.pass) {
                r["passed"] = r["passed"].get<int>() + 1;
            } else if (c.pass) {
                c.pass = false;
                c.locator = e.relation + " on V_{" + std::to_string(e.n) + "," + std::to_string(e.d) + "}";
            }
        }
        c.details = json{{"n_max", n_max}, {"relations", per}};
        checks.push_back(std::move(c));
    }

    {
        Check c{"generation"};
        const auto report = module.check_generation(n_max);
        json entries = json::array();
        for (const auto& e : report.entries) {
            entries.push_back(json{{"K", e.target_points},
                                   {"n", e.fundamental_points},
                                   {"rank", e.rank},
                                   {"dim", e.dim},
                                   {"status", e.pass() ? "pass" : "fail"}});
            if (c.pass && !e.pass()) {
                c.pass = false;
                c.locator = "V_{" + std::to_string(e.target_points) + "," + std::to_string(2 * e.fundamental_points) +
                            "}: rank " + std::to_string(e.rank) + " < dim " + std::to_string(e.dim);
            }
        }
        c.details = json{{"entries", entries}};
        checks.push_back(std::move(c));
    }

    {
        Check c{"injectivity"};
        const auto report = module.check_injectivity(n_max);
        json per = json::object();
        for (const auto& e : report.entries) {
            auto& r = per[e.generator];
            if (r.is_null()) {
                r = json{{"pieces", 0}, {"injective", 0}};
            }
            r["pieces"] = r["pieces"].get<int>() + 1;
            if (e.pass()) {
                r["injective"] = r["injective"].get<int>() + 1;
            } else if (c.pass) {
                c.pass = false;
                c.locator = e.generator + " on V_{" + std::to_string(e.n) + "," + std::to_string(e.d) + "}";
            }
        }
        c.details = json{{"generators", per}};
        checks.push_back(std::move(c));
    }

    {
        Check c{"U preserved"};
        std::size_t tested = 0;
        for (int deg = 1; deg <= n_max; ++deg) {
            for (std::uint32_t s = 0; s + 1 <= static_cast<std::uint32_t>(deg); ++s) {
                const std::uint32_t ab = static_cast<std::uint32_t>(deg) - 1 - s;
                for (std::uint32_t a = 0; a <= ab; ++a) {
                    const node::UBasisElement u{a, ab - a, s};
                    for (const auto& g : a_generators(node::kAmbient)) {
                        ++tested;
                        if (c.pass && !module.preserves_u(g, u)) {
                            c.pass = false;
                            c.locator = g.name() + " applied to " + u.poly().to_string();
                        }
                    }
                }
            }
        }
        c.details = json{{"pairs_tested", tested}};
        checks.push_back(std::move(c));
    }

    {
        Check c{"no extension"};
        const auto report = module.check_no_extension();
        auto witness = [](const node::ExtensionWitness& w) {
            return json{{"u", w.u.to_string()},
                        {"multiplier", w.multiplier.to_string()},
                        {"product", w.product.to_string()},
                        {"reduced", w.reduced.rep.to_string()},
                        {"outside_U", w.product_outside_u}};
        };
        c.pass = report.certified();
        if (!c.pass) {
            c.locator = "separate y_i multiplication appears to preserve U";
        }
        c.details = json{{"y1", witness(report.via_y1)}, {"y2", witness(report.via_y2)},
                         {"control_y1_plus_y2", witness(report.control)}};
        checks.push_back(std::move(c));
    }
    return checks;
}

std::string comparison_locator(const series::SeriesComparison& cmp, const char* what)
{
    const auto [n, j] = *cmp.first_difference;
    return std::string(what) + " first differ at q^" + std::to_string(n) + " t^" + std::to_string(2 * j);
}

std::vector<Check> series_checks(int order)
{
    std::vector<Check> checks;
    const auto closed = series::closed_form_pv(order);
    {
        Check c{"closed form = Mayer-Vietoris"};
        const auto cmp = series::series_equal(closed, series::mv_pv(order));
        c.pass = cmp.equal;
        if (!cmp.equal) {
            c.locator = comparison_locator(cmp, "closed and mv");
        }
        c.details = json{{"order", order}};
        checks.push_back(std::move(c));
    }
    {
        Check c{"closed form = paving"};
        const auto cmp = series::series_equal(closed, series::paving_pv(order));
        c.pass = cmp.equal;
        if (!cmp.equal) {
            c.locator = comparison_locator(cmp, "closed and paving");
        }
        c.details = json{{"order", order}};
        checks.push_back(std::move(c));
    }
    {
        Check c{"module identity"};
        const int bound = std::min(order, kMaxPoints);
        const node::NodeModule module(bound);
        const auto report = series::module_pv_identity(order, module, bound);
        c.pass = report.all_pass();
        if (!report.difference_vs_closed.equal) {
            c.locator = comparison_locator(report.difference_vs_closed, "P_V''-P_U and closed");
        } else if (report.enumeration_mismatch) {
            const auto& m = *report.enumeration_mismatch;
            c.locator = m.which + " at (" + std::to_string(m.n) + "," + std::to_string(m.d) + "): series " +
                        str(m.series_value) + " vs enumerated " + std::to_string(m.enumerated);
        }
        c.details = json{{"order", order}, {"enumeration_bound", bound}};
        checks.push_back(std::move(c));
    }
    return checks;
}

/// The top zeta class zeta a^(n-k-1) b^(k-1), the only class of H^{<2n}(M_{n,k})
/// killed by both pullbacks when 1 <= k <= n-1.
std::optional<hilb::CohBasisElem> expected_kernel_element(int n, int k)
{
    if (k < 1 || k > n - 1) {
        return std::nullopt;
    }
    return hilb::CohBasisElem{n, k, hilb::CohKind::Zeta, n - k - 1, k - 1};
}

bool kernel_matches(const hilb::ComponentKernel& ck)
{
    const auto expected = expected_kernel_element(ck.n, ck.k);
    if (!expected) {
        return ck.basis.empty();
    }
    return ck.basis.size() == 1 && ck.basis[0].terms().size() == 1 &&
           ck.basis[0].terms().begin()->first == *expected;
}

json kernel_json(int n)
{
    json comps = json::array();
    for (const auto& ck : hilb::kernel_intersection(n)) {
        json basis = json::array();
        for (const auto& cls : ck.basis) {
            json terms = json::array();
            for (const auto& [e, coef] : cls.terms()) {
                terms.push_back(json{{"element", e.to_string()}, {"degree", e.degree()}, {"coeff", str(coef)}});
            }
            basis.push_back(terms);
        }
        const auto expected = expected_kernel_element(n, ck.k);
        comps.push_back(json{{"k", ck.k},
                             {"dimension", ck.basis.size()},
                             {"basis", basis},
                             {"expected", expected ? json(expected->to_string()) : json(nullptr)},
                             {"matches", kernel_matches(ck)}});
    }
    return comps;
}

std::vector<Check> kernel_checks(int n_max)
{
    std::vector<Check> checks;
    {
        Check c{"per-component kernels"};
        json levels = json::array();
        for (int n = 2; n <= n_max; ++n) {
            json dims = json::array();
            for (const auto& ck : hilb::kernel_intersection(n)) {
                dims.push_back(ck.basis.size());
                if (c.pass && !kernel_matches(ck)) {
                    c.pass = false;
                    c.locator = "M_{" + std::to_string(n) + "," + std::to_string(ck.k) + "}";
                }
            }
            levels.push_back(json{{"n", n}, {"kernel_dims", dims}});
        }
        c.details = json{{"levels", levels}};
        checks.push_back(std::move(c));
    }
    {
        Check c{"basis census = component polynomial"};
        for (int n = 0; n <= n_max && c.pass; ++n) {
            for (int k = 0; k <= n; ++k) {
                if (hilb::poincare_from_basis(n, k) != series::component_poincare(n, k)) {
                    c.pass = false;
                    c.locator = "M_{" + std::to_string(n) + "," + std::to_string(k) + "}";
                    break;
                }
            }
        }
        checks.push_back(std::move(c));
    }
    {
        Check c{"Mayer-Vietoris dimensions"};
        const node::NodeModule module(n_max);
        for (int n = 0; n <= n_max && c.pass; ++n) {
            const auto report = hilb::mv_dimension_check(n, module);
            for (const auto& e : report.entries) {
                if (!e.pass()) {
                    c.pass = false;
                    c.locator = "n=" + std::to_string(n) + ", d=" + std::to_string(e.d);
                    break;
                }
            }
        }
        checks.push_back(std::move(c));
    }
    {
        Check c{"paving census = series"};
        const auto paving = series::paving_pv(n_max);
        for (int n = 0; n <= n_max; ++n) {
            if (hilb::paving_census(n) != paving.row(n)) {
                c.pass = false;
                c.locator = "n=" + std::to_string(n);
                break;
            }
        }
        checks.push_back(std::move(c));
    }
    {
        Check c{"pullbacks commute"};
        for (int n = 0; n + 2 <= n_max; ++n) {
            const auto a = hilb::pullback_matrix(hilb::Pullback::X1, n) * hilb::pullback_matrix(hilb::Pullback::X2, n + 1);
            const auto b = hilb::pullback_matrix(hilb::Pullback::X2, n) * hilb::pullback_matrix(hilb::Pullback::X1, n + 1);
            if (!(a == b)) {
                c.pass = false;
                c.locator = "level " + std::to_string(n + 2) + " -> " + std::to_string(n);
                break;
            }
        }
        checks.push_back(std::move(c));
    }
    return checks;
}

int emit_report(std::ostream& out, const std::string& target, json params, const std::vector<Check>& checks)
{
    const bool ok = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    json arr = json::array();
    for (const auto& c : checks) {
        arr.push_back(c.to_json());
    }
    json report{{"target", target}, {"parameters", std::move(params)}, {"status", ok ? "pass" : "fail"},
                {"checks", arr}};
    out << report.dump(2) << '\n';
    return ok ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// subcommands

int run_betti(std::ostream& out, std::ostream& err, int n_max, const std::string& format)
{
    check_bound("--n-max", n_max, 0, kMaxPoints * run_scale());
    const node::NodeModule module(n_max);
    const auto table = module.betti_table(n_max);
    const auto closed = series::closed_form_pv(n_max);
    std::optional<std::pair<int, int>> mismatch;
    for (int n = 0; n <= n_max && !mismatch; ++n) {
        for (int j = 0; j <= n; ++j) {
            if (closed.at(n, j) != table.at(n, j)) {
                mismatch = std::make_pair(n, j);
                break;
            }
        }
    }
    if (format == "json") {
        json rows = json::array();
        for (std::size_t n = 0; n < table.rows.size(); ++n) {
            rows.push_back(json{{"n", n}, {"dims", table.rows[n]}});
        }
        json cross{{"against", "closed_form"}, {"status", mismatch ? "fail" : "pass"}};
        if (mismatch) {
            cross["locator"] = locator(mismatch->first, mismatch->second);
        }
        out << json{{"n_max", n_max}, {"rows", rows}, {"cross_check", cross}}.dump(2) << '\n';
    } else if (format == "csv") {
        out << "n,d,dim\n";
        for (std::size_t n = 0; n < table.rows.size(); ++n) {
            for (std::size_t j = 0; j < table.rows[n].size(); ++j) {
                out << n << ',' << 2 * j << ',' << table.rows[n][j] << '\n';
            }
        }
    } else {
        for (const auto& row : table.rows) {
            for (std::size_t j = 0; j < row.size(); ++j) {
                out << (j ? " " : "") << row[j];
            }
            out << '\n';
        }
    }
    if (mismatch) {
        err << "betti: enumeration disagrees with the closed form at n=" << mismatch->first
            << ", d=" << 2 * mismatch->second << '\n';
        return kExitCheckFailed;
    }
    return kExitOk;
}

int run_series(std::ostream& out, const std::string& which, int order, const std::string& format)
{
    check_bound("--order", order, 0, kMaxSeriesOrder * run_scale());
    series::Series2 s(order);
    if (which == "closed") {
        s = series::closed_form_pv(order);
    } else if (which == "paving") {
        s = series::paving_pv(order);
    } else if (which == "mv") {
        s = series::mv_pv(order);
    } else {
        s = series::module_pv(order);
    }
    if (format == "json") {
        json rows = json::array();
        for (int n = 0; n <= order; ++n) {
            rows.push_back(json{{"n", n}, {"coeffs", row_coeffs(s, n)}});
        }
        out << json{{"order", order}, {"rows", rows}}.dump(2) << '\n';
    } else if (format == "csv") {
        out << "n,d,coeff\n";
        for (int n = 0; n <= order; ++n) {
            const auto coeffs = row_coeffs(s, n);
            for (std::size_t j = 0; j < coeffs.size(); ++j) {
                out << n << ',' << 2 * j << ',' << coeffs[j].get<std::string>() << '\n';
            }
        }
    } else {
        for (int n = 0; n <= order; ++n) {
            out << n << ": " << s.row(n).to_string() << '\n';
        }
    }
    return kExitOk;
}

int run_components(std::ostream& out, int n, int m, const std::string& format)
{
    if (n < 0 || m < 1) {
        throw UsageError("components: need --n >= 0 and --m >= 1");
    }
    const Integer count = hilb::component_count(n, m);
    const bool listed = m == 2;
    if (listed) {
        check_bound("--n (component listing for m=2)", n, 0, 1000 * run_scale());
    }
    if (format == "json") {
        json j{{"n", n}, {"m", m}, {"count", to_string(count)}};
        if (listed) {
            json comps = json::array();
            for (const auto& c : hilb::components(n)) {
                comps.push_back(json{{"n", c.n}, {"k", c.k}});
            }
            json inter = json::array();
            for (const auto& e : hilb::intersections(n)) {
                inter.push_back(json{{"n", e.n},
                                     {"between", {e.k, e.k + 1}},
                                     {"restriction_left", e.restriction_left},
                                     {"restriction_right", e.restriction_right}});
            }
            j["components"] = comps;
            j["intersections"] = inter;
        }
        out << j.dump(2) << '\n';
    } else {
        out << "components: " << count << '\n';
        if (listed) {
            for (const auto& c : hilb::components(n)) {
                out << "M_{" << c.n << ',' << c.k << "}\n";
            }
            out << "intersections: " << hilb::intersections(n).size() << '\n';
            for (const auto& e : hilb::intersections(n)) {
                out << "E^" << e.n << "_{" << e.k << ',' << e.k + 1 << "} = M_{" << e.n << ',' << e.k << "} cap M_{"
                    << e.n << ',' << e.k + 1 << "}\n";
            }
        }
    }
    return kExitOk;
}

int run_kernel(std::ostream& out, int n, const std::string& format)
{
    check_bound("--n", n, 1, kMaxPoints * run_scale());
    const auto comps = kernel_json(n);
    const bool ok = std::all_of(comps.begin(), comps.end(), [](const json& c) { return c["matches"].get<bool>(); });
    if (format == "plain") {
        for (const auto& c : comps) {
            out << "M_{" << n << ',' << c["k"].get<int>() << "}: ";
            if (c["basis"].empty()) {
                out << "0";
            } else {
                out << "span{";
                bool first = true;
                for (const auto& vec : c["basis"]) {
                    out << (first ? "" : ", ");
                    first = false;
                    bool first_term = true;
                    for (const auto& t : vec) {
                        const auto coeff = t["coeff"].get<std::string>();
                        out << (first_term ? "" : " + ") << (coeff == "1" ? "" : coeff + "*")
                            << t["element"].get<std::string>();
                        first_term = false;
                    }
                }
                out << '}';
            }
            out << '\n';
        }
    } else {
        out << json{{"n", n}, {"components", comps}, {"status", ok ? "pass" : "fail"}}.dump(2) << '\n';
    }
    return ok ? kExitOk : kExitCheckFailed;
}

int run_paving(std::ostream& out, int n, const std::string& format)
{
    check_bound("--n", n, 0, 200 * run_scale());
    const auto cells = hilb::paving_cells(n);
    const auto census = hilb::paving_census(n);
    const bool ok = census == series::paving_pv(n).row(n);
    if (format == "json") {
        json arr = json::array();
        for (const auto& c : cells) {
            arr.push_back(json{{"a", c.a}, {"b", c.b}, {"c", c.c}, {"d", c.d}, {"dim", c.dim()}});
        }
        json coeffs = json::array();
        for (int j = 0; j <= n; ++j) {
            coeffs.push_back(str(census.coeff(static_cast<std::size_t>(j))));
        }
        out << json{{"n", n}, {"cells", arr}, {"census", coeffs}, {"matches_series", ok}}.dump(2) << '\n';
    } else if (format == "csv") {
        out << "a,b,c,d,dim\n";
        for (const auto& c : cells) {
            out << c.a << ',' << c.b << ',' << c.c << ',' << c.d << ',' << c.dim() << '\n';
        }
    } else {
        for (const auto& c : cells) {
            out << "(a=" << c.a << ", b=" << c.b << ", c=" << c.c << ", d=" << c.d << ") dim " << c.dim() << '\n';
        }
        out << "census: " << census.to_string() << '\n';
    }
    return ok ? kExitOk : kExitCheckFailed;
}

int run_verify(std::ostream& out, const std::string& target, int m, int n_max, int order, int kernel_n)
{
    const int scale = run_scale();
    if (target == "relations") {
        check_bound("--m", m, 1, kMaxRelationsAmbient * scale);
        return emit_report(out, target, json{{"m", m}}, {relations_check(m)});
    }
    if (target == "node") {
        check_bound("--n-max", n_max, 0, kMaxPoints * scale);
        return emit_report(out, target, json{{"n_max", n_max}}, node_checks(n_max));
    }
    if (target == "series") {
        check_bound("--order", order, 0, kMaxSeriesOrder * scale);
        return emit_report(out, target, json{{"order", order}}, series_checks(order));
    }
    if (target == "kernel") {
        check_bound("--n", kernel_n, 2, kMaxPoints * scale);
        return emit_report(out, target, json{{"n", kernel_n}}, kernel_checks(kernel_n));
    }
    // all
    check_bound("--n-max", n_max, 0, kMaxPoints * scale);
    check_bound("--order", order, 0, kMaxSeriesOrder * scale);
    check_bound("--n", kernel_n, 2, kMaxPoints * scale);
    std::vector<Check> checks;
    for (int mm = 1; mm <= kMaxRelationsAmbient; ++mm) {
        checks.push_back(relations_check(mm));
    }
    for (auto& c : node_checks(n_max)) {
        checks.push_back(std::move(c));
    }
    for (auto& c : series_checks(order)) {
        checks.push_back(std::move(c));
    }
    for (auto& c : kernel_checks(kernel_n)) {
        checks.push_back(std::move(c));
    }
    return emit_report(out, target, json{{"m_max", kMaxRelationsAmbient}, {"n_max", n_max}, {"order", order}, {"n", kernel_n}},
                       checks);
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact verification of the A-module structure on the homology of Hilbert schemes of points on the node",
                 "nodehilb"};
    app.require_subcommand(1);

    const std::vector<std::string> table_formats{"plain", "json", "csv"};

    int betti_n = 5;
    std::string betti_format = "plain";
    auto* betti = app.add_subcommand("betti", "Dimensions V_{n,d} of the coset model, cross-checked against the closed form");
    betti->add_option("--n-max", betti_n, "Largest number of points")->capture_default_str();
    betti->add_option("--format", betti_format)->check(CLI::IsMember(table_formats))->capture_default_str();

    std::string which = "closed";
    int series_order = 30;
    std::string series_format = "plain";
    auto* ser = app.add_subcommand("series", "Poincare series of V by one of four routes");
    ser->add_option("--which", which)->check(CLI::IsMember({"closed", "paving", "mv", "module"}))->capture_default_str();
    ser->add_option("--order", series_order, "Truncation order in q")->capture_default_str();
    ser->add_option("--format", series_format)->check(CLI::IsMember(table_formats))->capture_default_str();

    int comp_n = 2;
    int comp_m = 2;
    std::string comp_format = "plain";
    auto* comp = app.add_subcommand("components", "Irreducible components of C^[n] (listed for m = 2)");
    comp->add_option("--n", comp_n)->capture_default_str();
    comp->add_option("--m", comp_m, "Number of branches")->capture_default_str();
    comp->add_option("--format", comp_format)->check(CLI::IsMember({"plain", "json"}))->capture_default_str();

    int kern_n = 4;
    std::string kern_format = "json";
    auto* kern = app.add_subcommand("kernel", "Per-component kernels of the pullbacks x1*, x2*");
    kern->add_option("--n", kern_n)->capture_default_str();
    kern->add_option("--format", kern_format)->check(CLI::IsMember({"plain", "json"}))->capture_default_str();

    int pav_n = 2;
    std::string pav_format = "plain";
    auto* pav = app.add_subcommand("paving", "Affine cells of C^[n] with their dimensions");
    pav->add_option("--n", pav_n)->capture_default_str();
    pav->add_option("--format", pav_format)->check(CLI::IsMember(table_formats))->capture_default_str();

    std::string target;
    int verify_m = 2;
    int verify_n_max = 10;
    int verify_order = 30;
    int verify_kernel_n = 8;
    auto* ver = app.add_subcommand("verify", "Run a verification suite; exit code 0 iff every check passes");
    ver->add_option("target", target)
        ->required()
        ->check(CLI::IsMember({"relations", "node", "series", "kernel", "all"}));
    ver->add_option("--m", verify_m, "Ambient for relations")->capture_default_str();
    ver->add_option("--n-max", verify_n_max, "Bound for node checks")->capture_default_str();
    ver->add_option("--order", verify_order, "Truncation order for series checks")->capture_default_str();
    ver->add_option("--n", verify_kernel_n, "Largest level for kernel checks")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*betti) {
            return run_betti(out, err, betti_n, betti_format);
        }
        if (*ser) {
            return run_series(out, which, series_order, series_format);
        }
        if (*comp) {
            return run_components(out, comp_n, comp_m, comp_format);
        }
        if (*kern) {
            return run_kernel(out, kern_n, kern_format);
        }
        if (*pav) {
            return run_paving(out, pav_n, pav_format);
        }
        return run_verify(out, target, verify_m, verify_n_max, verify_order, verify_kernel_n);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace nodehilb::cli
