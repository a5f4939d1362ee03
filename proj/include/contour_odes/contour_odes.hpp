// Umbrella header: pulls in the quadrature engine, contour factories, both
// solution families, the coefficient engine, and the property harness.

#pragma once

#include "contour_odes/quadrature.hpp"
#include "contour_odes/contours.hpp"
#include "contour_odes/phi.hpp"
#include "contour_odes/psi.hpp"
#include "contour_odes/series.hpp"
#include "contour_odes/verify.hpp"
