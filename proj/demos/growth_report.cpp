// Prints growth order estimates for three circle-integral members from two
// independent routes: the max-modulus slope at large radii and the
// coefficient-tail regression, next to the exact orders they approximate.

#include <cstdio>

#include "contour_odes/contour_odes.hpp"

using namespace contour_odes;

int main() {
  const QuadratureSpec spec{};

  const double d_airy = estimate_order_max_modulus(
      [&](cplx z) { return u_eval(2, 0, z, spec).value; }, {30, 40, 50}, 128);
  std::printf("wedge n=2:    exact order 3/2,  max-modulus fit %.4f\n", d_airy);

  const double d_even = estimate_order_max_modulus(
      [&](cplx z) { return U_eval(0, z, spec).value; }, {60, 100, 140}, 128);
  const OrderTypeEstimate tail = order_type_estimate(U_series(200, 1e-16), true);
  std::printf("circle (4,3): exact order 2/3,  max-modulus fit %.4f, coefficient fit %.4f\n",
              d_even, tail.rho_hat);
  std::printf("circle (4,3): exact type  3/2,  coefficient fit %.4f\n", tail.tau_hat);

  const double d_cubic = estimate_order_max_modulus(
      [&](cplx z) { return psi_eval(PsiParams{3, 2}, 0, z, spec).value; }, {100, 150, 200}, 128);
  std::printf("circle (3,2): exact order 1/2,  max-modulus fit %.4f\n", d_cubic);

  std::printf("\nexistence certificates (|Q| bound must stay below pi/2):\n");
  for (const PsiParams params : {PsiParams{3, 2}, PsiParams{4, 3}, PsiParams{5, 3}}) {
    const PsiExistenceCert cert = psi_existence_check(params, spec);
    std::printf("  (%d,%d): max|Q| = %.6f < %.6f, Re psi^(k-1)(0) = %.12f > 0\n", cert.n, cert.k,
                cert.q_bound, pi / 2, cert.re_value);
  }
  return 0;
}
