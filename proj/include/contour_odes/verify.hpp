// Property harness: named residual checks over point grids, plus the
// max-modulus growth-order estimator and the sector decay fit.
//
// Each registered property evaluates a residual at every grid point,
// normalizes it by 1 + |z| (quadrature noise grows with |z| through the
// truncation radius), and compares the maximum against a threshold of
// 100 * spec.abs_tol. A report either passes or carries the violation; the
// full default suite doubles as the repository's acceptance gate.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "contour_odes/phi.hpp"
#include "contour_odes/psi.hpp"

namespace contour_odes {

struct UnknownProperty : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonPositiveModulus : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using FamilyParams = std::variant<std::monostate, PhiParams, PsiParams>;

struct PropertyReport {
  std::string property_id;
  std::string family;
  std::string params;
  std::vector<cplx> grid;
  std::vector<double> residuals;  // per point, already normalized by 1 + |z|
  double max_violation = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct DecayFit {
  int slope_sign;  // -1, 0, or +1
  double k_hat;    // fitted decay rate, positive when slope_sign is -1
};

namespace detail {

inline std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string render_params(const FamilyParams& params) {
  if (std::holds_alternative<std::monostate>(params)) return "";
  if (const PhiParams* p = std::get_if<PhiParams>(&params)) {
    return "n=" + std::to_string(p->n) + " k=" + std::to_string(p->k) + " b=" +
           fmt_double(p->b.real()) + (p->b.imag() < 0 ? "" : "+") + fmt_double(p->b.imag()) + "i";
  }
  const PsiParams& p = std::get<PsiParams>(params);
  return "n=" + std::to_string(p.n) + " k=" + std::to_string(p.k);
}

template <class T>
const T& require_params(const FamilyParams& params, const char* property_id) {
  const T* p = std::get_if<T>(&params);
  if (!p)
    throw std::invalid_argument(std::string(property_id) + ": wrong parameter kind for property");
  return *p;
}

inline void require_monostate(const FamilyParams& params, const char* property_id) {
  if (!std::holds_alternative<std::monostate>(params))
    throw std::invalid_argument(std::string(property_id) + ": property takes no parameters");
}

inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(x.size());
  my /= double(x.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return num / den;
}

inline void require_increasing(const std::vector<double>& radii, std::size_t min_count) {
  if (radii.size() < min_count)
    throw std::invalid_argument("need at least " + std::to_string(min_count) + " radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw std::invalid_argument("radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw std::invalid_argument("radii must be strictly increasing");
  }
}

}  // namespace detail

inline std::vector<std::string> registered_properties() {
  return {"phi_real", "identity_UH", "psi_even", "wronskian_nonzero", "U_imag_axis_negative"};
}

// Evaluates one named property over a grid. The residual at each point is
// normalized by 1 + |z|; wronskian_nonzero instead enumerates all full-size
// ray-index subsets (the grid argument is ignored and the report's grid
// records subset ordinals), with residual max(0, 1e-3 - |W|).
inline PropertyReport run_property(const std::string& property_id, const FamilyParams& params,
                                   const std::vector<cplx>& grid, const QuadratureSpec& spec) {
  if (grid.empty()) throw std::invalid_argument("grid must be nonempty");

  PropertyReport report;
  report.property_id = property_id;
  report.params = detail::render_params(params);
  report.threshold = 100.0 * spec.abs_tol;

  if (property_id == "phi_real") {
    const PhiParams& p = detail::require_params<PhiParams>(params, "phi_real");
    report.family = "phi";
    for (const cplx& z : grid) {
      report.grid.push_back(z);
      const cplx v = phi_eval(p, 0, cplx(z.real(), 0.0), spec).value;
      report.residuals.push_back(std::abs(v.imag()) / (1.0 + std::abs(z)));
    }
  } else if (property_id == "identity_UH") {
    detail::require_monostate(params, "identity_UH");
    report.family = "psi";
    for (const cplx& z : grid) {
      report.grid.push_back(z);
      report.residuals.push_back(identity_residual(z, spec) / (1.0 + std::abs(z)));
    }
  } else if (property_id == "psi_even") {
    const PsiParams& p = detail::require_params<PsiParams>(params, "psi_even");
    report.family = "psi";
    for (const cplx& z : grid) {
      report.grid.push_back(z);
      const cplx a = psi_eval(p, 0, z, spec).value;
      const cplx b = psi_eval(p, 0, -z, spec).value;
      report.residuals.push_back(std::abs(a - b) / (1.0 + std::abs(z)));
    }
  } else if (property_id == "wronskian_nonzero") {
    const PhiParams& p = detail::require_params<PhiParams>(params, "wronskian_nonzero");
    report.family = "phi";
    int ordinal = 0;
    for (int skip = 1; skip <= p.n + 1; ++skip, ++ordinal) {
      std::vector<int> js;
      for (int j = 1; j <= p.n + 1; ++j)
        if (j != skip) js.push_back(j);
      report.grid.push_back(cplx(double(ordinal), 0.0));
      const double w = std::abs(phi_wronskian_zero(p.n, js));
      report.residuals.push_back(std::max(0.0, 1e-3 - w));
    }
  } else if (property_id == "U_imag_axis_negative") {
    detail::require_monostate(params, "U_imag_axis_negative");
    report.family = "psi";
    for (const cplx& z : grid) {
      report.grid.push_back(z);
      const cplx v = U_eval(0, z, spec).value;
      report.residuals.push_back((std::max(0.0, v.real()) + std::abs(v.imag())) /
                                 (1.0 + std::abs(z)));
    }
  } else {
    throw UnknownProperty("no property registered under \"" + property_id + "\"");
  }

  report.max_violation = *std::max_element(report.residuals.begin(), report.residuals.end());
  report.passed = report.max_violation <= report.threshold;
  return report;
}

inline FamilyParams default_property_params(const std::string& property_id) {
  if (property_id == "phi_real") return PhiParams{2, 1, cplx(0.0)};
  if (property_id == "psi_even") return PsiParams{4, 3};
  if (property_id == "wronskian_nonzero") return PhiParams{3, 1, cplx(0.0)};
  if (property_id == "identity_UH" || property_id == "U_imag_axis_negative")
    return std::monostate{};
  throw UnknownProperty("no property registered under \"" + property_id + "\"");
}

inline std::vector<cplx> default_property_grid(const std::string& property_id) {
  std::vector<cplx> grid;
  if (property_id == "phi_real") {
    for (int j = 0; j <= 24; ++j) grid.emplace_back(-3.0 + 0.25 * j, 0.0);
  } else if (property_id == "identity_UH") {
    for (int j = 0; j < 20; ++j) grid.push_back(std::polar(2.0 * (j + 1) / 20.0, pi * j / 10.0));
  } else if (property_id == "psi_even") {
    for (int j = 0; j < 10; ++j)
      grid.push_back(std::polar(2.0 * (j + 1) / 10.0, 2.0 * pi * j / 10.0 + 0.35));
  } else if (property_id == "wronskian_nonzero") {
    grid.emplace_back(0.0, 0.0);  // placeholder; subsets are enumerated from n
  } else if (property_id == "U_imag_axis_negative") {
    for (int j = 0; j <= 20; ++j) grid.emplace_back(0.0, 0.5 * j);
  } else {
    throw UnknownProperty("no property registered under \"" + property_id + "\"");
  }
  return grid;
}

inline PropertyReport run_property_default(const std::string& property_id,
                                           const QuadratureSpec& spec) {
  return run_property(property_id, default_property_params(property_id),
                      default_property_grid(property_id), spec);
}

// Growth order from the maximum modulus: fits log log M(r) against log r,
// where M(r) is the max of |f| over theta_samples equally spaced directions.
// The evaluator must genuinely grow (M(r) > 1) for the double log to exist.
inline double estimate_order_max_modulus(const std::function<cplx(cplx)>& evaluator,
                                         const std::vector<double>& radii, int theta_samples) {
  detail::require_increasing(radii, 3);
  if (theta_samples < 64) throw std::invalid_argument("theta_samples must be at least 64");

  std::vector<double> log_r, loglog_m;
  for (const double r : radii) {
    double m = 0.0;
    for (int j = 0; j < theta_samples; ++j)
      m = std::max(m, std::abs(evaluator(std::polar(r, 2.0 * pi * j / theta_samples))));
    if (!(m > 1.0))
      throw NonPositiveModulus("max modulus " + detail::fmt_double(m) + " at radius " +
                               detail::fmt_double(r) + " leaves log log M undefined");
    log_r.push_back(std::log(r));
    loglog_m.push_back(std::log(std::log(m)));
  }
  return detail::fit_slope(log_r, loglog_m);
}

// Decay rate inside the sector: fits log |phi(r e^{i theta})| against
// r^{1+1/n}. A correct evaluation decays, so slope_sign must come out -1
// and k_hat = -slope positive.
inline DecayFit decay_fit(const PhiParams& params, double theta, const std::vector<double>& radii,
                          const QuadratureSpec& spec) {
  validate(params);
  const auto [lo, hi] = decay_sector_bounds(params.n);
  if (!(theta > lo && theta < hi))
    throw OutOfSector("theta " + detail::fmt_double(theta) + " is not strictly inside (" +
                      detail::fmt_double(lo) + ", " + detail::fmt_double(hi) + ")");
  detail::require_increasing(radii, 3);

  const double growth = 1.0 + 1.0 / params.n;
  std::vector<double> xs, ys;
  for (const double r : radii) {
    const cplx v = phi_eval(params, 0, std::polar(r, theta), spec).value;
    const double a = std::abs(v);
    if (!(a > 0.0))
      throw NonPositiveModulus("phi vanished at radius " + detail::fmt_double(r));
    xs.push_back(std::pow(r, growth));
    ys.push_back(std::log(a));
  }
  const double slope = detail::fit_slope(xs, ys);
  const int sign = slope < 0.0 ? -1 : (slope > 0.0 ? 1 : 0);
  return DecayFit{sign, -slope};
}

// Flat JSON rendering of a report, with round-trip-safe floats.
inline std::string report_to_json(const PropertyReport& report) {
  std::string out = "{\"property_id\":\"" + report.property_id + "\",\"family\":\"" +
                    report.family + "\",\"params\":\"" + report.params + "\",\"grid\":[";
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    if (i) out += ",";
    out += "[" + detail::fmt_double(report.grid[i].real()) + "," +
           detail::fmt_double(report.grid[i].imag()) + "]";
  }
  out += "],\"residuals\":[";
  for (std::size_t i = 0; i < report.residuals.size(); ++i) {
    if (i) out += ",";
    out += detail::fmt_double(report.residuals[i]);
  }
  out += "],\"max_violation\":" + detail::fmt_double(report.max_violation) +
         ",\"threshold\":" + detail::fmt_double(report.threshold) +
         ",\"passed\":" + (report.passed ? "true" : "false") + "}";
  return out;
}

}  // namespace contour_odes
