#pragma once

#include "curvspec/error.hpp"
#include "curvspec/fixtures.hpp"
#include "curvspec/flat.hpp"
#include "curvspec/group_io.hpp"
#include "curvspec/hyperbolic.hpp"
#include "curvspec/liealg.hpp"
#include "curvspec/rational.hpp"
#include "curvspec/spherical.hpp"
#include "curvspec/tolerance.hpp"
