#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"

using json = nlohmann::ordered_json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "nodehilb");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = nodehilb::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST(CliBetti, PlainGolden)
{
    const auto r = invoke({"betti", "--n-max", "5"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "1\n1 2\n1 3 3\n1 4 5 4\n1 5 7 7 5\n1 6 9 10 9 6\n");
    EXPECT_EQ(invoke({"betti", "--n-max", "0"}).out, "1\n");
}

TEST(CliBetti, JsonAndCsv)
{
    const auto r = invoke({"betti", "--n-max", "3", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["n_max"], 3);
    ASSERT_EQ(j["rows"].size(), 4U);
    EXPECT_EQ(j["rows"][3]["dims"], json::parse("[1, 4, 5, 4]"));
    EXPECT_EQ(j["cross_check"]["status"], "pass");

    const auto c = invoke({"betti", "--n-max", "1", "--format", "csv"});
    EXPECT_EQ(c.out, "n,d,dim\n0,0,1\n1,0,1\n1,2,2\n");
}

TEST(CliSeries, JsonSchema)
{
    for (const char* which : {"closed", "paving", "mv", "module"}) {
        const auto r = invoke({"series", "--which", which, "--order", "6", "--format", "json"});
        ASSERT_EQ(r.code, 0) << which;
        const auto j = json::parse(r.out);
        ASSERT_EQ(j.size(), 2U);
        EXPECT_EQ(j.begin().key(), "order");
        EXPECT_EQ(j["order"], 6);
        ASSERT_EQ(j["rows"].size(), 7U);
        EXPECT_EQ(j["rows"][2]["n"], 2);
        EXPECT_EQ(j["rows"][2]["coeffs"], json::parse(R"(["1", "3", "3"])"));
        for (const auto& row : j["rows"]) {
            ASSERT_EQ(row.size(), 2U);
            for (const auto& c : row["coeffs"]) {
                ASSERT_TRUE(c.is_string());
            }
        }
    }
}

TEST(CliComponents, Listing)
{
    auto j = json::parse(invoke({"components", "--n", "2", "--m", "2", "--format", "json"}).out);
    EXPECT_EQ(j["count"], "3");
    EXPECT_EQ(j["components"].size(), 3U);
    EXPECT_EQ(j["intersections"].size(), 2U);

    j = json::parse(invoke({"components", "--n", "4", "--m", "2", "--format", "json"}).out);
    EXPECT_EQ(j["count"], "5");
    EXPECT_EQ(j["intersections"].size(), 4U);

    j = json::parse(invoke({"components", "--n", "0", "--m", "2", "--format", "json"}).out);
    EXPECT_EQ(j["count"], "1");

    j = json::parse(invoke({"components", "--n", "3", "--m", "3", "--format", "json"}).out);
    EXPECT_EQ(j["count"], "10");
}

TEST(CliKernel, Json)
{
    const auto r = invoke({"kernel", "--n", "4", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["status"], "pass");
    ASSERT_EQ(j["components"].size(), 5U);
    EXPECT_EQ(j["components"][0]["dimension"], 0);
    EXPECT_EQ(j["components"][2]["dimension"], 1);
    EXPECT_EQ(j["components"][2]["expected"], "zeta*a*b");
    EXPECT_EQ(j["components"][1]["expected"], "zeta*a^2");
    for (const auto& c : j["components"]) {
        EXPECT_TRUE(c["matches"].get<bool>());
    }
}

TEST(CliKernel, PlainGolden)
{
    const auto r = invoke({"kernel", "--n", "4", "--format", "plain"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "M_{4,0}: 0\nM_{4,1}: span{zeta*a^2}\nM_{4,2}: span{zeta*a*b}\nM_{4,3}: span{zeta*b^2}\nM_{4,4}: 0\n");
}

TEST(CliPaving, Json)
{
    const auto r = invoke({"paving", "--n", "2", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["cells"].size(), 7U);
    EXPECT_TRUE(j["matches_series"].get<bool>());
}

TEST(CliVerify, PassingTargets)
{
    auto r = invoke({"verify", "relations", "--m", "2"});
    EXPECT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    EXPECT_EQ(j["target"], "relations");
    EXPECT_EQ(j["status"], "pass");
    for (const auto& c : j["checks"]) {
        EXPECT_EQ(c["status"], "pass") << c["name"];
    }

    r = invoke({"verify", "series", "--order", "30"});
    EXPECT_EQ(r.code, 0);
    j = json::parse(r.out);
    EXPECT_EQ(j["status"], "pass");

    r = invoke({"verify", "node", "--n-max", "5"});
    EXPECT_EQ(r.code, 0);
    r = invoke({"verify", "kernel", "--n", "6"});
    EXPECT_EQ(r.code, 0);
}

TEST(CliUsage, Errors)
{
    EXPECT_EQ(invoke({"betti", "--n-max", "16"}).code, 2);
    EXPECT_EQ(invoke({"betti", "--n-max", "-1"}).code, 2);
    EXPECT_EQ(invoke({"series", "--order", "61"}).code, 2);
    EXPECT_EQ(invoke({"verify", "relations", "--m", "6"}).code, 2);
    EXPECT_EQ(invoke({"betti", "--format", "xml"}).code, 2);
    EXPECT_EQ(invoke({"series", "--which", "other"}).code, 2);
    EXPECT_EQ(invoke({"verify", "everything"}).code, 2);
    EXPECT_EQ(invoke({"frobnicate"}).code, 2);
    EXPECT_EQ(invoke({}).code, 2);
    const auto r = invoke({"betti", "--n-max", "16"});
    EXPECT_NE(r.err.find("RUN_SCALE"), std::string::npos);
}

TEST(CliOutput, DeterministicAndRoundTrips)
{
    const std::vector<std::vector<std::string>> commands{
        {"betti", "--n-max", "6", "--format", "json"},
        {"series", "--which", "module", "--order", "10", "--format", "json"},
        {"kernel", "--n", "5", "--format", "json"},
        {"verify", "relations", "--m", "2"},
    };
    for (const auto& cmd : commands) {
        const auto a = invoke(cmd);
        const auto b = invoke(cmd);
        ASSERT_EQ(a.out, b.out);
        EXPECT_EQ(json::parse(a.out).dump(2) + "\n", a.out);
    }
}
