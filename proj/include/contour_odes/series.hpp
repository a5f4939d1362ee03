// Maclaurin-coefficient engine for both solution families.
//
// Expanding the essential-singularity factors of the circle integrand as a
// double series turns the s-th derivative at 0 into a residue sum over the
// lattice points of one linear Diophantine constraint:
//
//   psi^(s)(0) = Sum over i,j >= 0 with j(k-1) - i(n-k+1) = s+1-k of
//                (-1)^(i+j) sigma^i eta^j / (i! j!).
//
// For the (4,3) member U(z) = Sum a_{2 nu} z^{2 nu} the sums collapse to the
// closed forms
//
//   a_0      = -(1/2) Sum_m 1/(4^m m! (m+1)!),
//   a_{2 nu} = ((-1)^(nu+1) / (2^(nu-1) (2 nu)!)) Sum_m 1/(4^m m! (m+nu-1)!).
//
// All sums run in exact rational arithmetic with a relative stopping rule
// (a coefficient near index 400 is ~1e-1300, far below any absolute double
// threshold), keeping both a double value (which may underflow to 0) and the
// exact natural log of |coefficient|, on which the growth-order and type
// estimators operate.
//
// recurrence_extend continues a seed of derivatives at 0 through the ODE
// coefficient recurrence; cross-checking it against the residue sums and the
// closed forms is the main internal-consistency test of the engine.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "contour_odes/phi.hpp"
#include "contour_odes/psi.hpp"

namespace contour_odes {

struct TooFewCoefficients : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SeedLengthMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SeriesCoeffs {
  std::variant<PhiParams, PsiParams> family;
  std::vector<cplx> coeffs;      // index m -> coefficient of z^m
  std::vector<double> log_abs;   // log |coeffs[m]|; exact even where the double underflows
  std::string provenance;       // residue_sum | closed_form_U | recurrence | quadrature_seed
  double trunc_tol = 1e-16;
};

struct OrderTypeEstimate {
  double rho_hat;
  double tau_hat;
  int nu_used;
};

namespace detail {

namespace mp = boost::multiprecision;

inline mp::cpp_int factorial_int(int m) {
  mp::cpp_int f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

inline double log_abs_int(const mp::cpp_int& x) {
  const mp::cpp_int a = mp::abs(x);
  if (a == 0) return -std::numeric_limits<double>::infinity();
  const unsigned top_bit = mp::msb(a);
  const unsigned shift = top_bit > 52 ? top_bit - 52 : 0;
  const double head = mp::cpp_int(a >> shift).convert_to<double>();
  return std::log(head) + double(shift) * std::numbers::ln2;
}

inline double log_abs_rational(const mp::cpp_rational& q) {
  if (q == 0) return -std::numeric_limits<double>::infinity();
  return log_abs_int(mp::numerator(q)) - log_abs_int(mp::denominator(q));
}

// Exact residue sum for psi^(s)(0). The constraint j(k-1) - i(n-k+1) = s+1-k
// is solved by a base point plus multiples of (c/g, a/g); both indices grow
// along the family, so terms decay factorially and the first term is the
// largest.
inline mp::cpp_rational psi_deriv_zero_exact(const PsiParams& params, int s, double trunc_tol) {
  const int a = params.n - params.k + 1;
  const int c = params.k - 1;
  const int d = s + 1 - params.k;
  const int g = std::gcd(a, c);
  if ((d % g + g) % g != 0) return 0;

  long i0 = -1, j0 = -1;
  for (long j = 0; j <= long(a) / g + std::abs(long(d)) / c + 1; ++j) {
    const long t = c * j - d;
    if (t >= 0 && t % a == 0) {
      i0 = t / a;
      j0 = j;
      break;
    }
  }
  if (i0 < 0) return 0;

  const mp::cpp_rational tol(trunc_tol);
  mp::cpp_rational sum = 0;
  mp::cpp_rational first = 0;
  for (long step = 0;; ++step) {
    const long i = i0 + step * (c / g);
    const long j = j0 + step * (a / g);
    const mp::cpp_int den = mp::pow(mp::cpp_int(a), unsigned(i)) *
                            mp::pow(mp::cpp_int(c), unsigned(j)) * factorial_int(int(i)) *
                            factorial_int(int(j));
    const mp::cpp_rational term(1, den);
    if (step == 0)
      first = term;
    else if (term < tol * first)
      break;
    sum += ((i + j) % 2 == 0) ? term : -term;
  }
  return sum;
}

// Exact closed form for the (4,3) coefficients a_{2 nu}.
inline mp::cpp_rational U_coeff_exact(int nu, double trunc_tol) {
  const int offset = (nu == 0) ? 1 : nu - 1;
  const mp::cpp_rational tol(trunc_tol);
  mp::cpp_rational sum = 0;
  mp::cpp_rational first = 0;
  for (int m = 0;; ++m) {
    const mp::cpp_int den = mp::pow(mp::cpp_int(4), unsigned(m)) * factorial_int(m) *
                            factorial_int(m + offset);
    const mp::cpp_rational term(1, den);
    if (m == 0)
      first = term;
    else if (term < tol * first)
      break;
    sum += term;
  }
  if (nu == 0) return -sum / 2;
  const mp::cpp_rational prefactor(mp::cpp_int((nu + 1) % 2 == 0 ? 1 : -1),
                                   mp::pow(mp::cpp_int(2), unsigned(nu - 1)) *
                                       factorial_int(2 * nu));
  return prefactor * sum;
}

inline double rising_product(int m, int count) {
  double p = 1.0;
  for (int i = m + 1; i <= m + count; ++i) p *= double(i);
  return p;
}

}  // namespace detail

// psi^(s)(0) by the residue sum; exactly 0 when the Diophantine constraint
// has no solutions (which covers every odd s once n is even and k odd).
inline double psi_deriv_zero_sum(const PsiParams& params, int s, double trunc_tol) {
  validate(params);
  if (s < 0) throw std::invalid_argument("derivative order must be nonnegative");
  if (!(trunc_tol > 0.0)) throw std::invalid_argument("trunc_tol must be positive");
  return detail::psi_deriv_zero_exact(params, s, trunc_tol).convert_to<double>();
}

// a_{2 nu} of the (4,3) member by the closed-form single sum.
inline double U_coeff(int nu, double trunc_tol) {
  if (nu < 0) throw std::invalid_argument("coefficient index must be nonnegative");
  if (!(trunc_tol > 0.0)) throw std::invalid_argument("trunc_tol must be positive");
  return detail::U_coeff_exact(nu, trunc_tol).convert_to<double>();
}

// Full even series of the (4,3) member through z^(2 nu_max), with exact logs.
inline SeriesCoeffs U_series(int nu_max, double trunc_tol) {
  SeriesCoeffs out;
  out.family = PsiParams{4, 3};
  out.provenance = "closed_form_U";
  out.trunc_tol = trunc_tol;
  out.coeffs.assign(2 * nu_max + 1, cplx(0.0));
  out.log_abs.assign(2 * nu_max + 1, -std::numeric_limits<double>::infinity());
  for (int nu = 0; nu <= nu_max; ++nu) {
    const auto exact = detail::U_coeff_exact(nu, trunc_tol);
    out.coeffs[2 * nu] = cplx(exact.convert_to<double>(), 0.0);
    out.log_abs[2 * nu] = detail::log_abs_rational(exact);
  }
  return out;
}

// Series of any psi member through z^m_max by residue sums.
inline SeriesCoeffs psi_series(const PsiParams& params, int m_max, double trunc_tol) {
  validate(params);
  SeriesCoeffs out;
  out.family = params;
  out.provenance = "residue_sum";
  out.trunc_tol = trunc_tol;
  out.coeffs.assign(m_max + 1, cplx(0.0));
  out.log_abs.assign(m_max + 1, -std::numeric_limits<double>::infinity());
  for (int m = 0; m <= m_max; ++m) {
    const auto deriv = detail::psi_deriv_zero_exact(params, m, trunc_tol);
    const detail::mp::cpp_rational coeff =
        deriv / detail::mp::cpp_rational(detail::factorial_int(m));
    out.coeffs[m] = cplx(coeff.convert_to<double>(), 0.0);
    out.log_abs[m] = detail::log_abs_rational(coeff);
  }
  return out;
}

// Derivative seeds for recurrence_extend.
inline std::vector<cplx> u_seed(int n) {
  std::vector<cplx> seed;
  for (int p = 0; p < n; ++p) seed.emplace_back(u_deriv_zero(n, p), 0.0);
  return seed;
}

inline std::vector<cplx> psi_seed(const PsiParams& params, double trunc_tol) {
  std::vector<cplx> seed;
  for (int s = 0; s < params.n; ++s)
    seed.emplace_back(psi_deriv_zero_sum(params, s, trunc_tol), 0.0);
  return seed;
}

inline std::vector<cplx> phi_quadrature_seed(const PhiParams& params, const QuadratureSpec& spec) {
  std::vector<cplx> seed;
  for (int p = 0; p < params.n; ++p) seed.push_back(phi_eval(params, p, cplx(0.0), spec).value);
  return seed;
}

// Continues f = Sum c_m z^m through the ODE coefficient recurrence:
//   first family:  c_{m+n} (m+n)!/m! = -(-1)^(n+1) [ b c_{m+k} (m+k)!/m! + c_{m-1} ],
//   second family: c_{m+n} (m+n)!/m! = [m>=1] c_{m+k-1} (m+k-1)!/(m-1)! + c_m.
// The seed holds the derivatives f^(p)(0), p = 0..n-1.
inline SeriesCoeffs recurrence_extend(const std::variant<PhiParams, PsiParams>& family,
                                      const std::vector<cplx>& seed, int m_max) {
  const int n = std::holds_alternative<PhiParams>(family) ? std::get<PhiParams>(family).n
                                                          : std::get<PsiParams>(family).n;
  std::visit([](const auto& params) { validate(params); }, family);
  if (int(seed.size()) != n)
    throw SeedLengthMismatch("seed holds " + std::to_string(seed.size()) +
                             " derivatives, the ODE order is " + std::to_string(n));
  if (m_max < n) throw std::invalid_argument("m_max must be at least the ODE order");

  SeriesCoeffs out;
  out.family = family;
  out.provenance = "recurrence";
  out.coeffs.assign(m_max + 1, cplx(0.0));
  double pfact = 1.0;
  for (int p = 0; p < n; ++p) {
    if (p > 0) pfact *= p;
    out.coeffs[p] = seed[p] / pfact;
  }

  if (std::holds_alternative<PhiParams>(family)) {
    const PhiParams& params = std::get<PhiParams>(family);
    const double sign = (params.n % 2 == 0) ? 1.0 : -1.0;  // -(-1)^(n+1)
    for (int m = 0; m + n <= m_max; ++m) {
      const cplx driven = params.b * out.coeffs[m + params.k] * detail::rising_product(m, params.k) +
                          (m >= 1 ? out.coeffs[m - 1] : cplx(0.0));
      out.coeffs[m + n] = sign * driven / detail::rising_product(m, n);
    }
  } else {
    const PsiParams& params = std::get<PsiParams>(family);
    for (int m = 0; m + n <= m_max; ++m) {
      cplx driven = out.coeffs[m];
      if (m >= 1)
        driven += out.coeffs[m + params.k - 1] * detail::rising_product(m - 1, params.k);
      out.coeffs[m + n] = driven / detail::rising_product(m, n);
    }
  }

  out.log_abs.resize(out.coeffs.size());
  for (std::size_t m = 0; m < out.coeffs.size(); ++m)
    out.log_abs[m] = std::log(std::abs(out.coeffs[m]));
  return out;
}

inline cplx series_sum(const SeriesCoeffs& series, cplx z) {
  cplx acc(0.0);
  cplx zp(1.0);
  for (const cplx& c : series.coeffs) {
    acc += c * zp;
    zp *= z;
  }
  return acc;
}

// Growth order and type from the coefficient tail. The asymptotic law
// -log|c_m| = (1/rho) m log m + B m + C is fitted by least squares over the
// top half of the nonzero indices (the raw ratio (m log m)/(-log|c_m|)
// converges only logarithmically and is still ~20% off at m = 400); the
// type then comes from the classical formula
//   tau = (e rho)^(-1) limsup m |c_m|^(rho/m),
// with the limsup read as the maximum over the same top half.
inline OrderTypeEstimate order_type_estimate(const SeriesCoeffs& series, bool even_only) {
  std::vector<std::pair<double, double>> pts;  // (m, log|c_m|)
  for (std::size_t m = 1; m < series.log_abs.size(); ++m) {
    if (even_only && m % 2 == 1) continue;
    if (!std::isfinite(series.log_abs[m])) continue;
    pts.emplace_back(double(m), series.log_abs[m]);
  }
  if (pts.size() < 20)
    throw TooFewCoefficients("order estimation needs at least 20 nonzero coefficients, got " +
                             std::to_string(pts.size()));

  const std::size_t start = pts.size() / 2;
  const std::size_t count = pts.size() - start;
  double mean_x1 = 0.0, mean_x2 = 0.0, mean_y = 0.0;
  for (std::size_t i = start; i < pts.size(); ++i) {
    mean_x1 += pts[i].first * std::log(pts[i].first);
    mean_x2 += pts[i].first;
    mean_y += -pts[i].second;
  }
  mean_x1 /= count;
  mean_x2 /= count;
  mean_y /= count;

  double s11 = 0.0, s12 = 0.0, s22 = 0.0, s1y = 0.0, s2y = 0.0;
  for (std::size_t i = start; i < pts.size(); ++i) {
    const double x1 = pts[i].first * std::log(pts[i].first) - mean_x1;
    const double x2 = pts[i].first - mean_x2;
    const double y = -pts[i].second - mean_y;
    s11 += x1 * x1;
    s12 += x1 * x2;
    s22 += x2 * x2;
    s1y += x1 * y;
    s2y += x2 * y;
  }
  const double det = s11 * s22 - s12 * s12;
  const double slope = (s1y * s22 - s2y * s12) / det;
  const double rho = 1.0 / slope;

  double tau_scan = 0.0;
  for (std::size_t i = start; i < pts.size(); ++i) {
    const double m = pts[i].first;
    tau_scan = std::max(tau_scan, m * std::exp(rho / m * pts[i].second));
  }
  const double tau = tau_scan / (std::numbers::e * rho);
  return OrderTypeEstimate{rho, tau, int(pts.back().first)};
}

}  // namespace contour_odes
