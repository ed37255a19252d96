#pragma once

#include "hilbgeom.hpp"
#include "linalg.hpp"
#include "node_module.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "series.hpp"
#include "weyl.hpp"
