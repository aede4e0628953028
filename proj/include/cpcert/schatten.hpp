// schatten.hpp -- Schatten p-norms, conjugate exponents, the norming duality
// map and its finite-difference gradient check, and the Mazur map between
// p-spheres.
#pragma once

#include "cpcert/matcore.hpp"

namespace cpcert {

// p together with its Holder conjugate p' (1/p + 1/p' = 1). p = infinity is
// the operator norm; conjugate(1) = infinity and conjugate(infinity) = 1.
struct SchattenExponent {
  double p;
  double conjugate;
  static SchattenExponent of(double p);
};

double conjugate_exponent(double p);

// (sum_i sigma_i^p)^(1/p); p = infinity gives the largest singular value.
// Evaluates through the singular spectrum with max-scaling so large p does
// not overflow.
double schatten_norm(const Matrix& a, double p);
inline double schatten_norm(const Matrix& a, const SchattenExponent& e) {
  return schatten_norm(a, e.p);
}
// Hermitian fast path: singular values are |eigenvalues|.
double schatten_norm(const HermitianMatrix& h, double p);

// Norming functional of A in C_p: unit p'-norm, pairs with A to ||A||_p.
struct NormGradient {
  Matrix matrix;
  SchattenExponent exponent;  // exponent.p is the p the gradient was taken at
  double source_norm;         // ||A||_p
};

// D_p(A) = ||A||_p^{1-p} |A|^{p-1} U^* for the polar factorization A = U|A|.
// Defined for p in (1, infinity) and A != 0; this is the Frechet gradient of
// X -> ||X||_p at A.
NormGradient duality_map(const Matrix& a, double p);

// M_{p,q}(A) = A |A|^{(p-q)/q}, mapping the unit sphere of C_p onto C_q.
Matrix mazur_map(const Matrix& a, double p, double q);

struct GradientSlopeReport {
  double fd_slope;          // central difference at step t
  double fd_slope_refined;  // Richardson combination of steps t and t/2
  double analytic_slope;    // Re Tr[D_p(A) B]
  double deviation;         // |fd_slope - analytic_slope|
};

// Directional derivative of ||A + tB||_p at t = 0, measured two ways.
GradientSlopeReport gradient_fd_check(const Matrix& a, const Matrix& b,
                                      double p, double t);

}  // namespace cpcert
