#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "contour_odes/series.hpp"

using namespace contour_odes;

namespace {

const QuadratureSpec spec{};
constexpr double tol = 1e-16;

}  // namespace

TEST_CASE("closed-form even coefficients match their frozen values") {
  CHECK(std::abs(U_coeff(0, tol) - (-0.56515910399248502721)) < 1e-15);
  CHECK(std::abs(U_coeff(1, tol) - 0.6330329388760041678) < 1e-15);
  CHECK(std::abs(U_coeff(2, tol) - (-0.023548295999686876134)) < 1e-16);

  CHECK_THROWS_AS(U_coeff(-1, tol), std::invalid_argument);
  CHECK_THROWS_AS(U_coeff(3, 0.0), std::invalid_argument);
}

TEST_CASE("residue sums reproduce the derivatives at the origin") {
  const PsiParams params{4, 3};
  CHECK(std::abs(psi_deriv_zero_sum(params, 0, tol) - (-0.56515910399248502721)) < 1e-15);
  CHECK(psi_deriv_zero_sum(params, 1, tol) == 0.0);
  CHECK(std::abs(psi_deriv_zero_sum(params, 2, tol) - 1.2660658777520083356) < 1e-15);

  // Against quadrature for a member whose sums do not collapse.
  const PsiParams odd{5, 3};
  for (int s = 0; s < 5; ++s) {
    const EvalResult byCircle = psi_eval(odd, s, cplx(0.0), spec);
    CHECK(std::abs(psi_deriv_zero_sum(odd, s, tol) - byCircle.value.real()) < 1e-9);
  }

  CHECK_THROWS_AS(psi_deriv_zero_sum(params, -1, tol), std::invalid_argument);
  CHECK_THROWS_AS(psi_deriv_zero_sum(PsiParams{3, 3}, 0, tol), std::invalid_argument);
}

TEST_CASE("parity: members with even n and odd k have exactly zero odd derivatives") {
  for (int s = 1; s < 20; s += 2) {
    CHECK(psi_deriv_zero_sum(PsiParams{4, 3}, s, tol) == 0.0);
    CHECK(psi_deriv_zero_sum(PsiParams{6, 3}, s, tol) == 0.0);
    CHECK(psi_deriv_zero_sum(PsiParams{6, 5}, s, tol) == 0.0);
  }
}

TEST_CASE("even series: parity, signs, and the leading coefficient") {
  const SeriesCoeffs series = U_series(40, tol);
  REQUIRE(series.coeffs.size() == 81);
  CHECK(series.provenance == "closed_form_U");

  CHECK(series.coeffs[0].real() < 0.0);
  for (int m = 1; m <= 80; m += 2) {
    CHECK(series.coeffs[m] == cplx(0.0));
    CHECK(series.log_abs[m] == -std::numeric_limits<double>::infinity());
  }
  for (int nu = 1; nu <= 40; ++nu) {
    const double sign = (nu % 2 == 0) ? -1.0 : 1.0;  // (-1)^(nu+1)
    CHECK(sign * series.coeffs[2 * nu].real() > 0.0);
  }
}

TEST_CASE("three routes to the even coefficients agree") {
  const SeriesCoeffs closed = U_series(30, tol);
  const SeriesCoeffs residues = psi_series(PsiParams{4, 3}, 60, tol);
  const SeriesCoeffs recurred = recurrence_extend(PsiParams{4, 3}, psi_seed(PsiParams{4, 3}, tol), 60);

  for (int nu = 0; nu <= 30; ++nu) {
    const double a = closed.coeffs[2 * nu].real();
    const double b = residues.coeffs[2 * nu].real();
    const double c = recurred.coeffs[2 * nu].real();
    CHECK(std::abs(a - b) < 1e-10);
    CHECK(std::abs(b - c) < 1e-10);
    CHECK(std::abs(a - c) < 1e-10);
    // The first two routes are both exact-rational; only conversion rounding
    // and the relative truncation of the sums separates them.
    CHECK(std::abs(a - b) <= 5e-15 * std::abs(a) + 1e-300);
  }
}

TEST_CASE("partial sums agree with quadrature inside the unit disk") {
  const SeriesCoeffs even = U_series(30, tol);
  const EvalResult u1 = psi_eval(PsiParams{4, 3}, 0, cplx(0.0, 0.8), spec);
  CHECK(std::abs(series_sum(even, cplx(0.0, 0.8)) - u1.value) < 1e-8);

  const SeriesCoeffs cubic = psi_series(PsiParams{3, 2}, 60, tol);
  const EvalResult p1 = psi_eval(PsiParams{3, 2}, 0, cplx(-0.9), spec);
  CHECK(std::abs(series_sum(cubic, cplx(-0.9)) - p1.value) < 1e-8);

  const SeriesCoeffs quintic = psi_series(PsiParams{5, 3}, 60, tol);
  const EvalResult p2 = psi_eval(PsiParams{5, 3}, 0, cplx(0.7), spec);
  CHECK(std::abs(series_sum(quintic, cplx(0.7)) - p2.value) < 1e-8);

  const SeriesCoeffs airy = recurrence_extend(PhiParams{2, 1, cplx(0.0)}, u_seed(2), 60);
  const EvalResult a1 = u_eval(2, 0, cplx(0.5), spec);
  const EvalResult a2 = u_eval(2, 0, cplx(-0.8), spec);
  CHECK(std::abs(series_sum(airy, cplx(0.5)) - a1.value) < 1e-8);
  CHECK(std::abs(series_sum(airy, cplx(-0.8)) - a2.value) < 1e-8);

  const PhiParams withDrift{3, 2, cplx(1.0)};
  const SeriesCoeffs drifted = recurrence_extend(withDrift, phi_quadrature_seed(withDrift, spec), 60);
  const cplx z(0.3, 0.3);
  const EvalResult d1 = phi_eval(withDrift, 0, z, spec);
  CHECK(std::abs(series_sum(drifted, z) - d1.value) < 1e-8);
}

TEST_CASE("recurrence continuation") {
  SECTION("reproduces the closed-form coefficient from a derivative seed") {
    const SeriesCoeffs series = recurrence_extend(PsiParams{4, 3}, psi_seed(PsiParams{4, 3}, tol), 20);
    CHECK(std::abs(series.coeffs[2].real() - 0.6330329388760041678) < 1e-12);
    CHECK(series.provenance == "recurrence");
  }

  SECTION("Airy coefficient pattern") {
    const SeriesCoeffs airy = recurrence_extend(PhiParams{2, 1, cplx(0.0)}, u_seed(2), 30);
    CHECK(airy.coeffs[2] == cplx(0.0));
    CHECK(airy.coeffs[5] == cplx(0.0));
    CHECK(airy.coeffs[8] == cplx(0.0));
    CHECK(std::abs(airy.coeffs[3] - airy.coeffs[0] / 6.0) < 1e-17);
    CHECK(std::abs(airy.coeffs[4] - airy.coeffs[1] / 12.0) < 1e-17);
    CHECK(std::abs(airy.coeffs[6] - airy.coeffs[3] / 30.0) < 1e-18);
  }

  SECTION("zero seed stays zero") {
    const std::vector<cplx> zero(3, cplx(0.0));
    const SeriesCoeffs series = recurrence_extend(PhiParams{3, 1, cplx(1.0)}, zero, 25);
    for (const cplx& c : series.coeffs) CHECK(c == cplx(0.0));
  }

  SECTION("seed length must match the ODE order") {
    CHECK_THROWS_AS(recurrence_extend(PsiParams{4, 3}, std::vector<cplx>(3), 20),
                    SeedLengthMismatch);
    CHECK_THROWS_AS(recurrence_extend(PhiParams{3, 1, cplx(0.0)}, std::vector<cplx>(4), 20),
                    SeedLengthMismatch);
    CHECK_THROWS_AS(recurrence_extend(PsiParams{4, 3}, std::vector<cplx>(4), 3),
                    std::invalid_argument);
  }
}

TEST_CASE("exact logs survive where the double representation underflows") {
  const SeriesCoeffs series = U_series(200, tol);

  // Moderate indices: the log agrees with the double value.
  for (int nu : {3, 10, 25}) {
    const double direct = std::log(std::abs(series.coeffs[2 * nu].real()));
    CHECK(std::abs(series.log_abs[2 * nu] - direct) < 1e-12 * std::abs(direct));
  }

  // Far tail: the double is gone but the log is still finite.
  CHECK(series.coeffs[400] == cplx(0.0));
  CHECK(std::isfinite(series.log_abs[400]));
  CHECK(series.log_abs[400] < -2500.0);
}

TEST_CASE("coefficient decay sandwich in log space") {
  const SeriesCoeffs series = U_series(200, tol);
  for (int nu = 20; nu <= 200; ++nu) {
    const double envelope = 3.0 * nu * (1.0 - std::log(2.0 * nu));
    CHECK(series.log_abs[2 * nu] <= envelope);
    CHECK(series.log_abs[2 * nu] >= std::log(0.2) + envelope);
  }
}

TEST_CASE("growth order and type from the coefficient tail") {
  SECTION("even family member: order 2/3, type 3/2") {
    const SeriesCoeffs series = U_series(200, tol);
    const OrderTypeEstimate est = order_type_estimate(series, true);
    CHECK(est.rho_hat > 0.647);
    CHECK(est.rho_hat < 0.687);
    CHECK(est.tau_hat > 1.45);
    CHECK(est.tau_hat < 1.55);
    CHECK(est.nu_used == 400);

    // The structurally zero odd slots are skipped either way.
    const OrderTypeEstimate unfiltered = order_type_estimate(series, false);
    CHECK(est.rho_hat == unfiltered.rho_hat);
    CHECK(est.tau_hat == unfiltered.tau_hat);
  }

  SECTION("exponential coefficients give order 1") {
    SeriesCoeffs synthetic;
    synthetic.family = PhiParams{2, 1, cplx(0.0)};
    synthetic.provenance = "closed_form_U";
    for (int m = 0; m <= 200; ++m) {
      const double lg = -std::lgamma(double(m) + 1.0);
      synthetic.log_abs.push_back(lg);
      synthetic.coeffs.emplace_back(std::exp(lg), 0.0);
    }
    const OrderTypeEstimate est = order_type_estimate(synthetic, false);
    CHECK(std::abs(est.rho_hat - 1.0) < 0.1);
  }

  SECTION("cubic member has order 1/2") {
    const SeriesCoeffs series = psi_series(PsiParams{3, 2}, 240, tol);
    const OrderTypeEstimate est = order_type_estimate(series, false);
    CHECK(std::abs(est.rho_hat - 0.5) < 0.02);
  }

  SECTION("too few nonzero coefficients") {
    SeriesCoeffs sparse;
    sparse.family = PsiParams{4, 3};
    sparse.provenance = "residue_sum";
    for (int m = 0; m < 19; ++m) {
      sparse.coeffs.emplace_back(1.0, 0.0);
      sparse.log_abs.push_back(0.0);
    }
    CHECK_THROWS_AS(order_type_estimate(sparse, false), TooFewCoefficients);
  }
}
