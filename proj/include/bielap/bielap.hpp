#pragma once

#include "bielap/geometry.hpp"
#include "bielap/quadrature.hpp"
#include "bielap/kernels.hpp"
#include "bielap/system.hpp"
#include "bielap/potential.hpp"
#include "bielap/problems.hpp"
#include "bielap/harness.hpp"
