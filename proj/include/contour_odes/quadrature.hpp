// Complex-valued adaptive quadrature over piecewise contours in the w-plane.
//
// Provides:
//   - PathSegment / Contour: rays, arcs, lines and circles with exact endpoint
//     chaining (junctions are constructed from identical std::polar calls, so
//     connectedness is checked with operator== rather than a tolerance).
//   - integrate_path: Gauss-Kronrod 7/15 embedded rule with priority-queue
//     bisection on each segment.
//   - integrate_circle_spectral: trapezoidal rule with point-doubling on full
//     circles (spectrally convergent for analytic integrands).
//   - choose_truncation_radius: safe finite radius replacing an infinite ray,
//     from an exponential domination inequality.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace contour_odes {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidContour : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateExponent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accuracy contract for every integral evaluation.
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 4000;
  double tail_tol = 1e-13;     // budget for the discarded tail of truncated rays
  int max_circle_points = 1 << 17;
};

struct EvalResult {
  cplx value{};
  double error_estimate = 0.0;
  std::optional<double> truncation_radius_used{};
  long points_used = 0;
};

// Straight ray through the origin at fixed angle, traversed over the radius
// interval [r_start, r_end] (outward) or [r_end, r_start] (inward).
// r_end may be +infinity until a truncation radius is substituted.
struct Ray {
  double angle;
  double r_start;
  double r_end;
  bool outward = true;
};

// Circular arc, traversed from theta_start to theta_end (either direction).
struct Arc {
  cplx center;
  double radius;
  double theta_start;
  double theta_end;
};

struct Line {
  cplx from;
  cplx to;
};

// Full circle, start/end point at angle 0.
struct Circle {
  cplx center;
  double radius;
  bool ccw = true;
};

using PathSegment = std::variant<Ray, Arc, Line, Circle>;

struct Contour {
  std::vector<PathSegment> segments;
  bool closed = false;
};

inline bool segment_starts_at_infinity(const PathSegment& seg) {
  const auto* ray = std::get_if<Ray>(&seg);
  return ray && !ray->outward && std::isinf(ray->r_end);
}

inline bool segment_ends_at_infinity(const PathSegment& seg) {
  const auto* ray = std::get_if<Ray>(&seg);
  return ray && ray->outward && std::isinf(ray->r_end);
}

inline cplx segment_start(const PathSegment& seg) {
  return std::visit(
      [](const auto& s) -> cplx {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ray>)
          return std::polar(s.outward ? s.r_start : s.r_end, s.angle);
        else if constexpr (std::is_same_v<T, Arc>)
          return s.center + std::polar(s.radius, s.theta_start);
        else if constexpr (std::is_same_v<T, Line>)
          return s.from;
        else
          return s.center + std::polar(s.radius, 0.0);
      },
      seg);
}

inline cplx segment_end(const PathSegment& seg) {
  return std::visit(
      [](const auto& s) -> cplx {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ray>)
          return std::polar(s.outward ? s.r_end : s.r_start, s.angle);
        else if constexpr (std::is_same_v<T, Arc>)
          return s.center + std::polar(s.radius, s.theta_end);
        else if constexpr (std::is_same_v<T, Line>)
          return s.to;
        else
          return s.center + std::polar(s.radius, 0.0);
      },
      seg);
}

// Structural checks: per-segment invariants, exact junction coincidence,
// infinite endpoints only at the extreme ends, closure when claimed.
inline void validate_contour(const Contour& contour) {
  if (contour.segments.empty()) throw InvalidContour("contour has no segments");
  const std::size_t last = contour.segments.size() - 1;
  for (std::size_t i = 0; i < contour.segments.size(); ++i) {
    const PathSegment& seg = contour.segments[i];
    if (const auto* ray = std::get_if<Ray>(&seg)) {
      if (ray->r_start < 0.0 || !(ray->r_start < ray->r_end))
        throw InvalidContour("ray requires 0 <= r_start < r_end");
    } else if (const auto* arc = std::get_if<Arc>(&seg)) {
      if (!(arc->radius > 0.0)) throw InvalidContour("arc radius must be positive");
    } else if (const auto* circ = std::get_if<Circle>(&seg)) {
      if (!(circ->radius > 0.0)) throw InvalidContour("circle radius must be positive");
    }
    if (segment_starts_at_infinity(seg) && i != 0)
      throw InvalidContour("infinite start allowed only on the first segment");
    if (segment_ends_at_infinity(seg) && i != last)
      throw InvalidContour("infinite end allowed only on the last segment");
  }
  for (std::size_t i = 0; i + 1 < contour.segments.size(); ++i) {
    if (segment_end(contour.segments[i]) != segment_start(contour.segments[i + 1]))
      throw InvalidContour("consecutive segments do not share an endpoint");
  }
  if (contour.closed) {
    if (segment_starts_at_infinity(contour.segments.front()) ||
        segment_ends_at_infinity(contour.segments.back()))
      throw InvalidContour("closed contour cannot reach infinity");
    if (contour.segments.size() > 1 || !std::holds_alternative<Circle>(contour.segments.front())) {
      if (segment_start(contour.segments.front()) != segment_end(contour.segments.back()))
        throw InvalidContour("closed contour endpoints do not coincide");
    }
  }
}

namespace detail {

// Kronrod 15 abscissae on [-1, 1] (nonnegative half; odd indices are the
// embedded Gauss-7 nodes, index 7 is the midpoint).
inline constexpr std::array<double, 8> gk_node = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> gk_wk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> gk_wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
  double a;
  double b;
  cplx value;
  double abserr;
  double resabs;
};

struct WorstFirst {
  bool operator()(const Interval& x, const Interval& y) const { return x.abserr < y.abserr; }
};

// One application of the embedded 7/15 pair on [a, b], with the classical
// error damping and a round-off floor proportional to the L1 mass.
template <class G>
Interval gk15(G&& g, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<cplx, 15> fv;
  std::array<double, 15> wk;
  int idx = 0;

  fv[idx] = g(mid);
  wk[idx] = gk_wk[7];
  ++idx;
  cplx resg = gk_wg[3] * fv[0];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * gk_node[j];
    const cplx f1 = g(mid - dx);
    const cplx f2 = g(mid + dx);
    fv[idx] = f1;
    wk[idx] = gk_wk[j];
    ++idx;
    fv[idx] = f2;
    wk[idx] = gk_wk[j];
    ++idx;
    if (j % 2 == 1) resg += gk_wg[(j - 1) / 2] * (f1 + f2);
  }

  cplx resk{};
  double resabs = 0.0;
  for (int i = 0; i < 15; ++i) {
    resk += wk[i] * fv[i];
    resabs += wk[i] * std::abs(fv[i]);
  }
  const cplx reskh = 0.5 * resk;
  double resasc = 0.0;
  for (int i = 0; i < 15; ++i) resasc += wk[i] * std::abs(fv[i] - reskh);

  const double ah = std::abs(half);
  resabs *= ah;
  resasc *= ah;
  double abserr = std::abs(resk - resg) * ah;
  if (resasc != 0.0 && abserr != 0.0)
    abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  abserr = std::max(abserr, 50.0 * eps * resabs);
  return {a, b, resk * half, abserr, resabs};
}

struct SegmentTotals {
  cplx value{};
  double abserr = 0.0;
  double resabs = 0.0;
  long points = 0;
};

// Adaptive bisection over [a, b] for a parametrized integrand g (which must
// already include the dw/dt factor). `budget` is shared across all segments
// of one path. Converges when the accumulated error estimate drops under
// max(abs_tol, rel_tol * |value|, round-off floor).
template <class G>
SegmentTotals adapt_interval(G&& g, double a, double b, const QuadratureSpec& spec, int& budget) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  SegmentTotals done;

  std::priority_queue<Interval, std::vector<Interval>, WorstFirst> queue;
  Interval whole = gk15(g, a, b);
  done.points += 15;
  cplx total_value = whole.value;
  double total_err = whole.abserr;
  double total_resabs = whole.resabs;
  queue.push(whole);

  auto converged = [&]() {
    const double tol = std::max({spec.abs_tol, spec.rel_tol * std::abs(total_value + done.value),
                                 100.0 * eps * (total_resabs + done.resabs)});
    return total_err + done.abserr <= tol;
  };

  while (!converged()) {
    if (queue.empty() || budget <= 0)
      throw NonConvergence("adaptive quadrature: subdivision budget exhausted");
    Interval worst = queue.top();
    queue.pop();
    total_value -= worst.value;
    total_err -= worst.abserr;
    total_resabs -= worst.resabs;

    const double width = worst.b - worst.a;
    const double scale = std::max({std::abs(worst.a), std::abs(worst.b), 1.0});
    if (width <= 8.0 * eps * scale) {
      done.value += worst.value;
      done.abserr += worst.abserr;
      done.resabs += worst.resabs;
      continue;
    }

    --budget;
    const double mid = 0.5 * (worst.a + worst.b);
    for (const Interval& child : {gk15(g, worst.a, mid), gk15(g, mid, worst.b)}) {
      total_value += child.value;
      total_err += child.abserr;
      total_resabs += child.resabs;
      queue.push(child);
    }
    done.points += 30;
  }

  done.value += total_value;
  done.abserr += total_err;
  done.resabs += total_resabs;
  return done;
}

template <class F>
SegmentTotals integrate_segment(F&& f, const PathSegment& seg, const QuadratureSpec& spec,
                                int& budget) {
  if (segment_starts_at_infinity(seg) || segment_ends_at_infinity(seg))
    throw InvalidContour("infinite ray endpoint reached quadrature; truncate first");
  return std::visit(
      [&](const auto& s) -> SegmentTotals {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ray>) {
          const cplx dir = std::polar(1.0, s.angle);
          SegmentTotals t =
              adapt_interval([&](double r) { return f(std::polar(r, s.angle)); }, s.r_start,
                             s.r_end, spec, budget);
          t.value *= dir;
          if (!s.outward) t.value = -t.value;
          return t;
        } else if constexpr (std::is_same_v<T, Arc>) {
          const double lo = std::min(s.theta_start, s.theta_end);
          const double hi = std::max(s.theta_start, s.theta_end);
          SegmentTotals t = adapt_interval(
              [&](double th) {
                const cplx rot = std::polar(s.radius, th);
                return f(s.center + rot) * cplx(0.0, 1.0) * rot;
              },
              lo, hi, spec, budget);
          if (s.theta_end < s.theta_start) t.value = -t.value;
          return t;
        } else if constexpr (std::is_same_v<T, Line>) {
          const cplx delta = s.to - s.from;
          SegmentTotals t = adapt_interval(
              [&](double u) { return f(s.from + u * delta); }, 0.0, 1.0, spec, budget);
          t.value *= delta;
          return t;
        } else {
          SegmentTotals t = adapt_interval(
              [&](double th) {
                const cplx rot = std::polar(s.radius, th);
                return f(s.center + rot) * cplx(0.0, 1.0) * rot;
              },
              0.0, 2.0 * pi, spec, budget);
          if (!s.ccw) t.value = -t.value;
          return t;
        }
      },
      seg);
}

}  // namespace detail

// Integrates `integrand` over the contour, segment by segment in order.
// The reported error estimate is the sum of per-segment embedded-rule
// estimates; it is an indicator, not a certified bound.
template <class F>
EvalResult integrate_path(F&& integrand, const Contour& contour, const QuadratureSpec& spec) {
  validate_contour(contour);
  EvalResult out;
  int budget = spec.max_subdivisions;
  for (const PathSegment& seg : contour.segments) {
    detail::SegmentTotals t = detail::integrate_segment(integrand, seg, spec, budget);
    out.value += t.value;
    out.error_estimate += t.abserr;
    out.points_used += t.points;
  }
  return out;
}

// Equally spaced trapezoidal rule on |w - center| = radius with point
// doubling (32, 64, 128, ...) until successive values agree. Previous
// evaluations are reused at every doubling.
template <class F>
EvalResult integrate_circle_spectral(F&& integrand, cplx center, double radius,
                                     const QuadratureSpec& spec) {
  if (!(radius > 0.0)) throw InvalidContour("circle radius must be positive");
  constexpr double eps = std::numeric_limits<double>::epsilon();

  long m = 32;
  cplx fsum{};
  double asum = 0.0;
  long points = 0;
  for (long j = 0; j < m; ++j) {
    const cplx rot = std::polar(radius, 2.0 * pi * double(j) / double(m));
    const cplx g = integrand(center + rot) * rot;
    fsum += g;
    asum += std::abs(g);
  }
  points += m;
  cplx prev = cplx(0.0, 2.0 * pi / double(m)) * fsum;

  while (2 * m <= spec.max_circle_points) {
    for (long j = 0; j < m; ++j) {
      const cplx rot = std::polar(radius, 2.0 * pi * (double(j) + 0.5) / double(m));
      const cplx g = integrand(center + rot) * rot;
      fsum += g;
      asum += std::abs(g);
    }
    m *= 2;
    points += m / 2;
    const cplx value = cplx(0.0, 2.0 * pi / double(m)) * fsum;
    const double diff = std::abs(value - prev);
    const double resabs = 2.0 * pi / double(m) * asum;
    if (diff <= std::max({spec.abs_tol, spec.rel_tol * std::abs(value), 100.0 * eps * resabs})) {
      EvalResult out;
      out.value = value;
      out.error_estimate = std::max(diff, 50.0 * eps * resabs);
      out.points_used = points;
      return out;
    }
    prev = value;
  }
  throw NonConvergence("spectral circle rule: max_circle_points reached");
}

// Smallest radius R of the doubling sequence 1, 2, 4, ... such that the decay
// exponent dominates every growth term beyond R,
//     coeff_i * r^{deg_i} <= (c/2m_terms) * r^m   for all r >= R,
// and the tail mass bound exp(-(c/2) R^m) (1 + R) < tail_tol holds. Growth
// terms with zero coefficient impose nothing and are dropped.
inline double choose_truncation_radius(int decay_exponent_degree, double decay_coeff,
                                       const std::vector<std::pair<int, double>>& growth_terms,
                                       double tail_tol) {
  if (!(decay_coeff > 0.0)) throw std::invalid_argument("decay_coeff must be positive");
  if (!(tail_tol > 0.0)) throw std::invalid_argument("tail_tol must be positive");

  std::vector<std::pair<int, double>> active;
  for (const auto& [deg, coeff] : growth_terms)
    if (coeff > 0.0) active.emplace_back(deg, coeff);
  for (const auto& [deg, coeff] : active)
    if (decay_exponent_degree <= deg)
      throw DegenerateExponent("growth degree " + std::to_string(deg) +
                               " is not dominated by decay degree " +
                               std::to_string(decay_exponent_degree));
  if (decay_exponent_degree <= 0)
    throw DegenerateExponent("decay degree must be positive");

  const double half = 0.5 * decay_coeff;
  const double log_tail = std::log(tail_tol);
  const double nterms = double(std::max<std::size_t>(active.size(), 1));

  double radius = 1.0;
  for (int iter = 0; iter < 64; ++iter, radius *= 2.0) {
    bool ok = true;
    for (const auto& [deg, coeff] : active) {
      if (double(decay_exponent_degree - deg) * std::log(radius) <
          std::log(2.0 * nterms * coeff / decay_coeff)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    const double log_tail_mass =
        -half * std::pow(radius, double(decay_exponent_degree)) + std::log1p(radius);
    if (log_tail_mass < log_tail) return radius;
  }
  throw NonConvergence("truncation radius search did not terminate");
}

}  // namespace contour_odes
