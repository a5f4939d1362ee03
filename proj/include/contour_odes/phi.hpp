// The first solution family: entire solutions of
//
//     f^(n) + (-1)^(n+1) b f^(k) + (-1)^(n+1) z f = 0,   n >= 2, 0 < k < n,
//
// represented as contour integrals
//
//     phi(z) = (1/2 pi i) Int exp{-wz + b alpha w^(k+1) + beta w^(n+1)} dw
//
// over a wedge through the origin (or, for z inside the decay sector, over
// the arc-detour deformation, which is numerically far better conditioned).
// The p-th derivative inserts a factor (-w)^p into the integrand.
//
// The b = 0 member u, its rotations f_j(z) = u(beta_j z) by the (n+1)-st
// roots of unity, and the rotated-wedge variants u_j are also provided,
// together with the closed form for u^(p)(0) and the Wronskian of any
// selection of at most n of the f_j at the origin.
//
// The n = 2, b = 0 member is the Airy function Ai.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "contour_odes/contours.hpp"
#include "contour_odes/quadrature.hpp"

namespace contour_odes {

struct DuplicateIndex : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PhiParams {
  int n;
  int k;
  cplx b{};

  double alpha() const { return (k % 2 == 0 ? -1.0 : 1.0) / (k + 1.0); }
  double beta() const { return 1.0 / (n + 1.0); }
  double gamma() const { return (k + 1.0) * pi / (n + 1.0); }
  // undefined at b = 0; evaluation code treats b = 0 as the simplified branch
  double lambda() const { return std::arg(b); }
};

inline void validate(const PhiParams& params) {
  if (params.n < 2) throw std::invalid_argument("phi family requires n >= 2");
  if (params.k <= 0 || params.k >= params.n)
    throw std::invalid_argument("phi family requires 0 < k < n");
}

// beta_j = exp{2 pi i (j-1)/(n+1)}, j = 1..n+1 (index 0 unused semantics:
// the returned vector is 0-based, entry j-1 holds beta_j).
inline std::vector<cplx> roots_of_unity(int n) {
  std::vector<cplx> roots;
  roots.reserve(n + 1);
  for (int j = 1; j <= n + 1; ++j) roots.push_back(std::polar(1.0, 2.0 * pi * (j - 1.0) / (n + 1.0)));
  return roots;
}

inline cplx ipow(cplx w, int p) {
  cplx out(1.0);
  for (int i = 0; i < p; ++i) out *= w;
  return out;
}

enum class PhiContour { automatic, wedge, detour };

namespace detail {

// r^p <= exp(p r) for r > 0 turns the polynomial factor of a derivative into
// a degree-1 growth term for the truncation budget.
inline std::vector<std::pair<int, double>> phi_growth_terms(const PhiParams& params, int p,
                                                            double z_abs, bool on_detour) {
  std::vector<std::pair<int, double>> growth;
  if (!on_detour) growth.emplace_back(1, z_abs);
  growth.emplace_back(params.k + 1, std::abs(params.b * params.alpha()));
  growth.emplace_back(1, double(p));
  return growth;
}

inline bool inside_detour_window(double theta, int n, double z_abs) {
  const auto [lo, hi] = decay_sector_bounds(n);
  return z_abs >= 2.0 && theta >= lo + 0.05 && theta <= hi - 0.05;
}

}  // namespace detail

// (1/2 pi i) Int (-w)^p exp{-wz + b alpha w^(k+1) + beta w^(n+1)} dw.
// Contour selection: the origin wedge everywhere, switching to the arc
// detour when |z| >= 2 and arg z sits at least 0.05 rad inside the decay
// sector (the two agree by Cauchy's theorem; the detour avoids the severe
// cancellation the wedge suffers for large |z| in the sector).
inline EvalResult phi_eval(const PhiParams& params, int p, cplx z, const QuadratureSpec& spec,
                           PhiContour contour = PhiContour::automatic) {
  validate(params);
  if (p < 0) throw std::invalid_argument("derivative order must be nonnegative");

  const double theta = std::arg(z);
  const double z_abs = std::abs(z);
  bool use_detour = false;
  switch (contour) {
    case PhiContour::automatic:
      use_detour = detail::inside_detour_window(theta, params.n, z_abs);
      break;
    case PhiContour::wedge:
      use_detour = false;
      break;
    case PhiContour::detour:
      use_detour = true;
      break;
  }

  const cplx balpha = params.b * params.alpha();
  const double beta = params.beta();
  auto integrand = [&](cplx w) {
    return ipow(-w, p) * std::exp(-w * z + balpha * ipow(w, params.k + 1) +
                                  beta * ipow(w, params.n + 1));
  };

  Contour path;
  double truncation = 0.0;
  if (use_detour) {
    const ArcDetourSpec det = arc_detour_spec(theta, params.n, z_abs);
    const double decay = beta * std::min(std::abs(std::cos((params.n + 1.0) * det.mu)),
                                         std::abs(std::cos((params.n + 1.0) * det.tau)));
    truncation = choose_truncation_radius(params.n + 1, decay,
                                          detail::phi_growth_terms(params, p, z_abs, true),
                                          spec.tail_tol);
    while (truncation <= 1.5 * det.R) truncation *= 2.0;
    path = arc_detour_contour(det, truncation);
  } else {
    truncation = choose_truncation_radius(params.n + 1, beta,
                                          detail::phi_growth_terms(params, p, z_abs, false),
                                          spec.tail_tol);
    path = wedge_contour(params.n, truncation);
  }

  EvalResult out = integrate_path(integrand, path, spec);
  out.value /= cplx(0.0, 2.0 * pi);
  out.error_estimate = (out.error_estimate + spec.tail_tol) / (2.0 * pi);
  out.truncation_radius_used = truncation;
  return out;
}

// Closed form for the b = 0 member:
//   u^(p)(0) = (-1)^p (1/pi) sin((p+1)pi/(n+1)) (n+1)^((p+1)/(n+1)-1) Gamma((p+1)/(n+1)),
// exactly zero when p+1 is a multiple of n+1. Equals the 1-D integral
//   ((-1)^p/pi) Int_0^inf r^p exp{-r^(n+1)/(n+1)} sin((p+1)pi/(n+1)) dr,
// which the tests re-derive by quadrature.
inline double u_deriv_zero(int n, int p) {
  if (n < 2) throw std::invalid_argument("u family requires n >= 2");
  if (p < 0) throw std::invalid_argument("derivative order must be nonnegative");
  if ((p + 1) % (n + 1) == 0) return 0.0;
  const double frac = (p + 1.0) / (n + 1.0);
  const double sign = (p % 2 == 0) ? 1.0 : -1.0;
  return sign / pi * std::sin(frac * pi) * std::pow(n + 1.0, frac - 1.0) * std::tgamma(frac);
}

// Real part of the p-th derivative at the origin, as two real half-line
// integrals over the wedge rays (an oracle for Re phi_eval(params, p, 0)
// that involves no complex quadrature):
//
//   Re phi^(p)(0) = ((-1)^p / 2 pi) Int_0^inf r^p [ e1(r) sin{|b| alpha r^(k+1) sin(gamma - lambda)
//                     + (p+1)pi/(n+1)} + e2(r) sin{|b| alpha r^(k+1) sin(gamma + lambda)
//                     + (p+1)pi/(n+1)} ] dr,
//   e1/e2(r) = exp{|b| alpha r^(k+1) cos(gamma -/+ lambda) - beta r^(n+1)}.
inline double phi_deriv_zero_re(const PhiParams& params, int p, const QuadratureSpec& spec) {
  validate(params);
  if (p < 0) throw std::invalid_argument("derivative order must be nonnegative");

  const double alpha = params.alpha();
  const double beta = params.beta();
  const double gamma = params.gamma();
  const double lambda = params.lambda();
  const double babs = std::abs(params.b);
  const double phase = (p + 1.0) * pi / (params.n + 1.0);
  const double sign = (p % 2 == 0) ? 1.0 : -1.0;

  const double truncation = choose_truncation_radius(
      params.n + 1, beta, detail::phi_growth_terms(params, p, 0.0, true), spec.tail_tol);

  auto integrand = [&](cplx w) {
    const double r = w.real();
    const double rk = std::pow(r, params.k + 1.0);
    const double e1 = std::exp(babs * alpha * rk * std::cos(gamma - lambda) -
                               beta * std::pow(r, params.n + 1.0));
    const double e2 = std::exp(babs * alpha * rk * std::cos(gamma + lambda) -
                               beta * std::pow(r, params.n + 1.0));
    const double s1 = std::sin(babs * alpha * rk * std::sin(gamma - lambda) + phase);
    const double s2 = std::sin(babs * alpha * rk * std::sin(gamma + lambda) + phase);
    return cplx(std::pow(r, double(p)) * (e1 * s1 + e2 * s2), 0.0);
  };
  const EvalResult r =
      integrate_path(integrand, Contour{{Line{cplx(0.0), cplx(truncation, 0.0)}}, false}, spec);
  return sign / (2.0 * pi) * r.value.real();
}

// u = phi with b = 0 (the k slot is inert there).
inline EvalResult u_eval(int n, int p, cplx z, const QuadratureSpec& spec) {
  return phi_eval(PhiParams{n, 1, cplx(0.0)}, p, z, spec);
}

// f_j(z) = u(beta_j z); the p-th derivative carries the chain-rule factor beta_j^p.
inline EvalResult fj_eval(int n, int j, int p, cplx z, const QuadratureSpec& spec) {
  if (j < 1 || j > n + 1)
    throw BadIndex("rotation index " + std::to_string(j) + " outside [1, " + std::to_string(n + 1) +
                   "]");
  const cplx beta_j = std::polar(1.0, 2.0 * pi * (j - 1.0) / (n + 1.0));
  EvalResult out = u_eval(n, p, beta_j * z, spec);
  out.value *= ipow(beta_j, p);
  return out;
}

// u_j: the u integrand over the j-th rotated wedge. Satisfies
// u_j(z) = beta_j f_j(z), which the tests assert.
inline EvalResult uj_eval(int n, int j, int p, cplx z, const QuadratureSpec& spec) {
  if (n < 2) throw std::invalid_argument("u family requires n >= 2");
  if (p < 0) throw std::invalid_argument("derivative order must be nonnegative");
  const double beta = 1.0 / (n + 1.0);
  const double truncation = choose_truncation_radius(
      n + 1, beta, {{1, std::abs(z)}, {1, double(p)}}, spec.tail_tol);
  const Contour path = rotated_wedge_contour(n, j, truncation);
  auto integrand = [&](cplx w) {
    return ipow(-w, p) * std::exp(-w * z + beta * ipow(w, n + 1));
  };
  EvalResult out = integrate_path(integrand, path, spec);
  out.value /= cplx(0.0, 2.0 * pi);
  out.error_estimate = (out.error_estimate + spec.tail_tol) / (2.0 * pi);
  out.truncation_radius_used = truncation;
  return out;
}

// Wronskian of the selected f_j at the origin, via the product form
//   W = prod_{p=0}^{m-1} u^(p)(0) * prod_{i<l} (beta_{js[l]} - beta_{js[i]})
// (the Vandermonde factor of the matrix [beta_j^p]). Nonzero for any choice
// of m <= n distinct indices, since u^(p)(0) != 0 for 0 <= p <= n-1.
inline cplx phi_wronskian_zero(int n, const std::vector<int>& js) {
  if (n < 2) throw std::invalid_argument("u family requires n >= 2");
  if (js.empty() || js.size() > std::size_t(n))
    throw std::invalid_argument("selection must contain between 1 and n indices");
  for (std::size_t a = 0; a < js.size(); ++a) {
    if (js[a] < 1 || js[a] > n + 1)
      throw BadIndex("rotation index " + std::to_string(js[a]) + " outside [1, " +
                     std::to_string(n + 1) + "]");
    for (std::size_t b = a + 1; b < js.size(); ++b)
      if (js[a] == js[b]) throw DuplicateIndex("rotation index " + std::to_string(js[a]) + " repeated");
  }

  const std::vector<cplx> roots = roots_of_unity(n);
  cplx w(1.0);
  for (std::size_t p = 0; p < js.size(); ++p) w *= u_deriv_zero(n, int(p));
  for (std::size_t a = 0; a < js.size(); ++a)
    for (std::size_t b = a + 1; b < js.size(); ++b)
      w *= roots[js[b] - 1] - roots[js[a] - 1];
  return w;
}

// | phi^(n)(z) + (-1)^(n+1) [ b phi^(k)(z) + z phi(z) ] |; small values
// certify the solution property pointwise.
inline double ode_residual_phi(const PhiParams& params, cplx z, const QuadratureSpec& spec) {
  validate(params);
  const double sign = (params.n % 2 == 0) ? -1.0 : 1.0;
  const cplx fn = phi_eval(params, params.n, z, spec).value;
  const cplx fk = phi_eval(params, params.k, z, spec).value;
  const cplx f0 = phi_eval(params, 0, z, spec).value;
  return std::abs(fn + sign * (params.b * fk + z * f0));
}

}  // namespace contour_odes
