// Factory functions for the contours the integral representations live on.
//
// All factories produce Contour objects whose junction points are built from
// identical std::polar expressions, so the exact-coincidence invariant of
// validate_contour holds by construction. Infinite rays are truncated at a
// caller-supplied outer radius; pick it with choose_truncation_radius.

#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "contour_odes/quadrature.hpp"

namespace contour_odes {

struct OutOfSector : std::domain_error {
  using std::domain_error::domain_error;
};

struct BadIndex : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Open sector of ray directions theta on which the arc-detour contour exists
// (and on which the first solution family decays): |theta| < n pi / (2n+2).
inline std::pair<double, double> decay_sector_bounds(int n) {
  if (n < 2) throw std::invalid_argument("order n must be at least 2");
  const double half_width = double(n) * pi / (2.0 * double(n) + 2.0);
  return {-half_width, half_width};
}

// Derived geometry of the arc-detour contour for a target point z = |z| e^{i theta}:
// ray angles mu/tau tilted against theta, arc radius R growing like |z|^{1/n}.
struct ArcDetourSpec {
  double theta;
  int n;
  double mu;
  double tau;
  double R;
  double B;
};

inline ArcDetourSpec arc_detour_spec(double theta, int n, double z_abs) {
  const auto [lo, hi] = decay_sector_bounds(n);
  if (!(theta > lo && theta < hi))
    throw OutOfSector("ray direction " + std::to_string(theta) +
                      " outside the open decay sector of order " + std::to_string(n));
  if (!(z_abs > 0.0)) throw std::invalid_argument("z_abs must be positive");

  ArcDetourSpec spec;
  spec.theta = theta;
  spec.n = n;
  spec.mu = -pi / (n + 1.0) - theta / n;
  spec.tau = pi / (n + 1.0) - theta / n;
  const double a = std::min(std::cos(spec.mu + theta), std::cos(spec.tau + theta));
  spec.B = 0.9 * std::pow((n + 1.0) * a, 1.0 / n);
  spec.R = spec.B * std::pow(z_abs, 1.0 / n);
  return spec;
}

// Wedge through the origin: in from the truncation radius along angle
// -pi/(n+1) + rotation, out along +pi/(n+1) + rotation.
inline Contour rotated_wedge_contour(int n, int j, double truncation) {
  if (n < 2) throw std::invalid_argument("order n must be at least 2");
  if (j < 1 || j > n + 1)
    throw BadIndex("wedge index " + std::to_string(j) + " outside [1, " + std::to_string(n + 1) +
                   "]");
  if (!(truncation > 0.0)) throw std::invalid_argument("truncation must be positive");
  const double rotation = 2.0 * pi * (j - 1.0) / (n + 1.0);
  Contour c{{Ray{-pi / (n + 1.0) + rotation, 0.0, truncation, false},
             Ray{pi / (n + 1.0) + rotation, 0.0, truncation, true}},
            false};
  validate_contour(c);
  return c;
}

inline Contour wedge_contour(int n, double truncation) {
  return rotated_wedge_contour(n, 1, truncation);
}

// Wedge deformed to detour around the origin along the arc |w| = R.
inline Contour arc_detour_contour(const ArcDetourSpec& spec, double truncation) {
  if (!(truncation > spec.R))
    throw InvalidContour("truncation radius must exceed the detour arc radius");
  Contour c{{Ray{spec.mu, spec.R, truncation, false}, Arc{cplx(0.0), spec.R, spec.mu, spec.tau},
             Ray{spec.tau, spec.R, truncation, true}},
            false};
  validate_contour(c);
  return c;
}

inline Contour arc_detour_contour(double theta, int n, double z_abs, double truncation) {
  return arc_detour_contour(arc_detour_spec(theta, n, z_abs), truncation);
}

// Real-axis hairpin: in along angle 0 to w = 1, over the upper unit
// semicircle, out along angle pi.
inline Contour upper_semicircle_detour(double truncation) {
  if (!(truncation > 1.0)) throw std::invalid_argument("truncation must exceed 1");
  Contour c{{Ray{0.0, 1.0, truncation, false}, Arc{cplx(0.0), 1.0, 0.0, pi},
             Ray{pi, 1.0, truncation, true}},
            false};
  validate_contour(c);
  return c;
}

// Mirror image through w -> -w: in along angle pi to w = -1, under the lower
// unit semicircle, out along the positive real axis (angle 2 pi, so that the
// junction with the arc endpoint coincides exactly).
inline Contour lower_semicircle_detour(double truncation) {
  if (!(truncation > 1.0)) throw std::invalid_argument("truncation must exceed 1");
  Contour c{{Ray{pi, 1.0, truncation, false}, Arc{cplx(0.0), 1.0, pi, 2.0 * pi},
             Ray{2.0 * pi, 1.0, truncation, true}},
            false};
  validate_contour(c);
  return c;
}

}  // namespace contour_odes
