#include "cpcert/schatten.hpp"

#include <cmath>
#include <limits>

namespace cpcert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double p_norm_of_values(const RealVector& values, double p) {
  const double top = values.size() ? values.cwiseAbs().maxCoeff() : 0.0;
  if (top == 0.0) return 0.0;
  if (std::isinf(p)) return top;
  if (p == 1.0) return values.cwiseAbs().sum();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    acc += std::pow(std::abs(values[i]) / top, p);
  }
  return top * std::pow(acc, 1.0 / p);
}

void require_norm_exponent(double p, const char* fn) {
  if (std::isnan(p) || p < 1.0) {
    throw std::invalid_argument(std::string(fn) + ": exponent must satisfy p >= 1");
  }
}

}  // namespace

SchattenExponent SchattenExponent::of(double p) {
  require_norm_exponent(p, "SchattenExponent");
  return {p, conjugate_exponent(p)};
}

double conjugate_exponent(double p) {
  require_norm_exponent(p, "conjugate_exponent");
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

double schatten_norm(const Matrix& a, double p) {
  require_norm_exponent(p, "schatten_norm");
  return p_norm_of_values(svd(a).values, p);
}

double schatten_norm(const HermitianMatrix& h, double p) {
  require_norm_exponent(p, "schatten_norm");
  return p_norm_of_values(eig_hermitian(h).eigenvalues, p);
}

NormGradient duality_map(const Matrix& a, double p) {
  if (std::isnan(p) || p <= 1.0 || std::isinf(p)) {
    throw std::invalid_argument("duality_map: defined for p in (1, infinity) only");
  }
  SingularValues sv = svd(a);
  const double top = sv.values.size() ? sv.values[0] : 0.0;
  if (top <= kRankTolerance) {
    throw std::invalid_argument("duality_map: gradient undefined at the zero matrix");
  }
  const double norm = p_norm_of_values(sv.values, p);
  // |A|^{p-1} U^* collapses to V diag(sigma^{p-1}) W^* in the SVD frame.
  const double cutoff = kRankTolerance * top;
  RealVector powered(sv.values.size());
  for (Eigen::Index i = 0; i < sv.values.size(); ++i) {
    powered[i] = sv.values[i] > cutoff ? std::pow(sv.values[i], p - 1.0) : 0.0;
  }
  Matrix grad = std::pow(norm, 1.0 - p) * sv.right *
                powered.cast<Complex>().asDiagonal() * sv.left.adjoint();
  return {std::move(grad), SchattenExponent::of(p), norm};
}

Matrix mazur_map(const Matrix& a, double p, double q) {
  if (!(p > 0.0) || !(q > 0.0) || std::isinf(p) || std::isinf(q)) {
    throw std::invalid_argument("mazur_map: requires finite p, q > 0");
  }
  // A |A|^{(p-q)/q} has singular values sigma^{p/q} in the SVD frame of A.
  SingularValues sv = svd(a);
  const double cutoff = kRankTolerance * (sv.values.size() ? sv.values[0] : 0.0);
  RealVector powered(sv.values.size());
  for (Eigen::Index i = 0; i < sv.values.size(); ++i) {
    powered[i] = sv.values[i] > cutoff ? std::pow(sv.values[i], p / q) : 0.0;
  }
  return sv.left * powered.cast<Complex>().asDiagonal() * sv.right.adjoint();
}

GradientSlopeReport gradient_fd_check(const Matrix& a, const Matrix& b,
                                      double p, double t) {
  if (t == 0.0 || std::isnan(t)) {
    throw std::invalid_argument("gradient_fd_check: step must be nonzero");
  }
  const auto norm_at = [&](double s) { return schatten_norm(a + s * b, p); };
  const double fd = (norm_at(t) - norm_at(-t)) / (2.0 * t);
  const double fd_half = (norm_at(0.5 * t) - norm_at(-0.5 * t)) / t;
  const double refined = (4.0 * fd_half - fd) / 3.0;
  const double analytic = trace_inner(duality_map(a, p).matrix, b).real();
  return {fd, refined, analytic, std::abs(fd - analytic)};
}

}  // namespace cpcert
