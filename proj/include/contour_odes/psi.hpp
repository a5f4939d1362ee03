// The second solution family: entire solutions of
//
//     f^(n) - z f^(k) - f = 0,   1 < k < n,
//
// represented as circle integrals around the essential singularity at w = 0,
//
//     psi(z) = (1/2 pi i) Oint_{|w|=R} w^(k-2) exp{z/w - sigma w^-(n-k+1)
//                                                - eta w^(k-1) ... } dw
//
// with sigma = 1/(n-k+1), eta = 1/(k-1), exponent written out as
// z/w - 1/((n-k+1) w^(n-k+1)) - w^(k-1)/(k-1). The s-th derivative in z
// inserts w^-s. Any circle radius gives the same value; evaluation scales
// R = max(1, |z|^(1/k)) so the integrand stays tame as |z| grows.
//
// Three special members get their own entry points:
//   U     = the (n,k) = (4,3) member (even, real on both axes),
//   H     = a second independent solution of the same ODE, as an integral
//           over the real-axis hairpin (no 1/2 pi i prefactor),
//   H_neg = z -> H(-z), over the mirrored hairpin,
//   G     = 2 pi i times the (3,2) member, over a circle of any radius.
//
// 2 pi i U(z) = H(z) + H(-z) identically; identity_residual measures it.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include "contour_odes/contours.hpp"
#include "contour_odes/quadrature.hpp"

namespace contour_odes {

struct CertFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownName : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PsiParams {
  int n;
  int k;

  double sigma() const { return 1.0 / (n - k + 1.0); }
  double eta() const { return 1.0 / (k - 1.0); }
};

inline void validate(const PsiParams& params) {
  if (params.k <= 1 || params.k >= params.n)
    throw std::invalid_argument("psi family requires 1 < k < n");
}

// Numerical certificate that the family member is a nontrivial solution:
// the phase Q(n,k,theta) of the defining integrand stays under pi/2 in
// magnitude (so cos Q > 0 throughout), forcing Re psi^(k-1)(0) > 0.
struct PsiExistenceCert {
  int n;
  int k;
  double q_bound;
  double re_value;
};

namespace detail {

inline cplx ipow_signed(cplx w, int e) {
  cplx out(1.0);
  const int a = e < 0 ? -e : e;
  for (int i = 0; i < a; ++i) out *= w;
  return e < 0 ? 1.0 / out : out;
}

}  // namespace detail

// (1/2 pi i) Oint w^(k-2-s) exp{z/w - 1/((n-k+1) w^(n-k+1)) - w^(k-1)/(k-1)} dw
// on |w| = max(1, |z|^(1/k)).
inline EvalResult psi_eval(const PsiParams& params, int s, cplx z, const QuadratureSpec& spec) {
  validate(params);
  if (s < 0) throw std::invalid_argument("derivative order must be nonnegative");
  const double radius = std::max(1.0, std::pow(std::abs(z), 1.0 / params.k));
  const double sigma = params.sigma();
  const double eta = params.eta();
  auto integrand = [&](cplx w) {
    return detail::ipow_signed(w, params.k - 2 - s) *
           std::exp(z / w - sigma * detail::ipow_signed(w, -(params.n - params.k + 1)) -
                    eta * detail::ipow_signed(w, params.k - 1));
  };
  EvalResult out = integrate_circle_spectral(integrand, cplx(0.0), radius, spec);
  out.value /= cplx(0.0, 2.0 * pi);
  out.error_estimate /= 2.0 * pi;
  out.truncation_radius_used = radius;
  return out;
}

// U = the (4,3) member: (1/2 pi i) Oint w^(1-p) exp{z/w - 1/(2w^2) - w^2/2} dw.
inline EvalResult U_eval(int p, cplx z, const QuadratureSpec& spec) {
  return psi_eval(PsiParams{4, 3}, p, z, spec);
}

namespace detail {

// Shared by H over the real-axis hairpin and H(-z) over its mirror. The
// rays live on |w| >= 1, where |exp(z/w)| <= exp(|z|); the p = 0 integrand
// carries an extra factor w, bounded by exp(r).
template <class F>
EvalResult hairpin_integral(F&& integrand, int p, cplx z, bool upper,
                            const QuadratureSpec& spec) {
  const double truncation = choose_truncation_radius(
      2, 0.5, {{0, std::abs(z)}, {1, p == 0 ? 1.0 : 0.0}}, spec.tail_tol);
  const Contour path =
      upper ? upper_semicircle_detour(truncation) : lower_semicircle_detour(truncation);
  EvalResult out = integrate_path(integrand, path, spec);
  out.error_estimate += spec.tail_tol;
  out.truncation_radius_used = truncation;
  return out;
}

}  // namespace detail

// H^(p)(z) = Int_A w^(1-p) exp{z/w - 1/(2w^2) - w^2/2} dw, A the hairpin in
// from +infinity to 1, over the upper unit semicircle, out to -infinity.
inline EvalResult H_eval(int p, cplx z, const QuadratureSpec& spec) {
  if (p < 0) throw std::invalid_argument("derivative order must be nonnegative");
  auto integrand = [&](cplx w) {
    return detail::ipow_signed(w, 1 - p) * std::exp(z / w - 0.5 / (w * w) - 0.5 * w * w);
  };
  return detail::hairpin_integral(integrand, p, z, true, spec);
}

// p-th derivative of z -> H(-z): substituting w -> -w in the defining
// integral maps the hairpin to its mirror and leaves the integrand fixed,
//   (d/dz)^p H(-z) = Int_P w^(1-p) exp{z/w - 1/(2w^2) - w^2/2} dw,
// so traversing both hairpins together closes up into the full unit circle
// (the ray pieces cancel pairwise), which is the identity with 2 pi i U.
inline EvalResult H_neg_eval(int p, cplx z, const QuadratureSpec& spec) {
  if (p < 0) throw std::invalid_argument("derivative order must be nonnegative");
  auto integrand = [&](cplx w) {
    return detail::ipow_signed(w, 1 - p) * std::exp(z / w - 0.5 / (w * w) - 0.5 * w * w);
  };
  return detail::hairpin_integral(integrand, p, z, false, spec);
}

// G^(p)(z) = Oint_{|w|=R} w^-p exp{z/w - 1/(2w^2) - w} dw, any R > 0
// (no 1/2 pi i prefactor); equals 2 pi i times the (3,2) member.
inline EvalResult G_eval(int p, cplx z, double radius, const QuadratureSpec& spec) {
  if (p < 0) throw std::invalid_argument("derivative order must be nonnegative");
  auto integrand = [&](cplx w) {
    return detail::ipow_signed(w, -p) * std::exp(z / w - 0.5 / (w * w) - w);
  };
  EvalResult out = integrate_circle_spectral(integrand, cplx(0.0), radius, spec);
  out.truncation_radius_used = radius;
  return out;
}

// Name-based dispatcher for the special members; G picks the same radius
// scaling the (3,2) member uses.
inline EvalResult special_eval(std::string_view name, int p_or_s, cplx z,
                               const QuadratureSpec& spec) {
  if (name == "U") return U_eval(p_or_s, z, spec);
  if (name == "H") return H_eval(p_or_s, z, spec);
  if (name == "Hneg" || name == "H_neg") return H_neg_eval(p_or_s, z, spec);
  if (name == "G") return G_eval(p_or_s, z, std::max(1.0, std::sqrt(std::abs(z))), spec);
  throw UnknownName("unknown special function '" + std::string(name) + "'");
}

// H'(0) by two real 1-D integrals (both manifestly negative):
//   H'(0) = -Int_0^pi sin(t) e^{-cos 2t} dt - 2 Int_1^inf exp{-1/(2r^2) - r^2/2} dr.
inline double h_prime_zero(const QuadratureSpec& spec) {
  const EvalResult arc = integrate_path(
      [](cplx t) {
        const double th = t.real();
        return cplx(std::sin(th) * std::exp(-std::cos(2.0 * th)), 0.0);
      },
      Contour{{Line{cplx(0.0), cplx(pi, 0.0)}}, false}, spec);
  const double truncation = choose_truncation_radius(2, 0.5, {}, spec.tail_tol);
  const EvalResult ray = integrate_path(
      [](cplx t) {
        const double r = t.real();
        return cplx(std::exp(-0.5 / (r * r) - 0.5 * r * r), 0.0);
      },
      Contour{{Line{cplx(1.0, 0.0), cplx(truncation, 0.0)}}, false}, spec);
  return -arc.value.real() - 2.0 * ray.value.real();
}

// | 2 pi i U(z) - H(z) - H(-z) |.
inline double identity_residual(cplx z, const QuadratureSpec& spec) {
  const cplx u = U_eval(0, z, spec).value;
  const cplx h = H_eval(0, z, spec).value;
  const cplx h_neg = H_neg_eval(0, z, spec).value;
  return std::abs(cplx(0.0, 2.0 * pi) * u - h - h_neg);
}

// Evaluates the two ingredients of the existence argument on the unit
// circle: the phase bound max |Q(n,k,theta)| (must stay under pi/2, in fact
// under sigma + eta <= 3/2) and Re psi^(k-1)(0) = (1/2 pi) Int e^P cos Q
// (must be positive). Throws CertFailure if either check fails, which would
// signal an implementation bug rather than a mathematical one.
inline PsiExistenceCert psi_existence_check(const PsiParams& params, const QuadratureSpec& spec) {
  validate(params);
  const double sigma = params.sigma();
  const double eta = params.eta();
  const double a = double(params.n - params.k + 1);
  const double c = double(params.k - 1);
  auto P = [&](double th) { return -sigma * std::cos(a * th) - eta * std::cos(c * th); };
  auto Q = [&](double th) { return sigma * std::sin(a * th) - eta * std::sin(c * th); };

  double q_bound = 0.0;
  const int samples = 4001;
  for (int i = 0; i < samples; ++i) {
    const double th = -pi + 2.0 * pi * i / (samples - 1.0);
    q_bound = std::max(q_bound, std::abs(Q(th)));
  }

  const EvalResult integral = integrate_path(
      [&](cplx t) {
        const double th = t.real();
        return cplx(std::exp(P(th)) * std::cos(Q(th)), 0.0);
      },
      Contour{{Line{cplx(-pi, 0.0), cplx(pi, 0.0)}}, false}, spec);
  const double re_value = integral.value.real() / (2.0 * pi);

  if (q_bound >= pi / 2.0)
    throw CertFailure("phase bound " + std::to_string(q_bound) + " reached pi/2");
  if (!(re_value > 0.0))
    throw CertFailure("Re psi^(k-1)(0) = " + std::to_string(re_value) + " is not positive");
  return PsiExistenceCert{params.n, params.k, q_bound, re_value};
}

// | psi^(n)(z) - z psi^(k)(z) - psi(z) |.
inline double ode_residual_psi(const PsiParams& params, cplx z, const QuadratureSpec& spec) {
  validate(params);
  const cplx fn = psi_eval(params, params.n, z, spec).value;
  const cplx fk = psi_eval(params, params.k, z, spec).value;
  const cplx f0 = psi_eval(params, 0, z, spec).value;
  return std::abs(fn - z * fk - f0);
}

}  // namespace contour_odes
