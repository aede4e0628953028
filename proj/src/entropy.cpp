#include "cpcert/entropy.hpp"

#include <cmath>
#include <limits>

namespace cpcert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Overlap traces at or below this floor count as zero (orthogonal supports).
constexpr double kUnderflowFloor = 1e-300;
constexpr double kSupportMassTolerance = 1e-10;

void require_open_unit(double alpha, const char* fn) {
  if (std::isnan(alpha) || alpha <= 0.0 || alpha >= 1.0) {
    throw std::invalid_argument(std::string(fn) + ": alpha must lie in (0, 1)");
  }
}

void require_same_dim(const DensityMatrix& rho, const DensityMatrix& sigma,
                      const char* fn) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument(std::string(fn) + ": dimension mismatch");
  }
}

// Tr[rho^a sigma^b] = sum_ij lambda_i^a mu_j^b |<u_i|v_j>|^2 over the
// supports; evaluated in the joint eigenbasis overlap, not by forming the
// powered matrices.
double power_overlap(const DensityMatrix& rho, const DensityMatrix& sigma,
                     double a, double b) {
  const RealVector& lam = rho.eigenvalues();
  const RealVector& mu = sigma.eigenvalues();
  const double lam_cut = kRankTolerance * lam.maxCoeff();
  const double mu_cut = kRankTolerance * mu.maxCoeff();
  Matrix overlap = rho.eigenvectors().adjoint() * sigma.eigenvectors();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam[i] <= lam_cut) continue;
    const double la = std::pow(lam[i], a);
    for (Eigen::Index j = 0; j < mu.size(); ++j) {
      if (mu[j] <= mu_cut) continue;
      acc += la * std::pow(mu[j], b) * std::norm(overlap(i, j));
    }
  }
  return acc;
}

// ||rho^s - sigma^s||_r through the Hermitian eigenvalue path.
double power_difference_norm(const DensityMatrix& rho, const DensityMatrix& sigma,
                             double s, double r) {
  return schatten_norm(HermitianMatrix(rho.power(s) - sigma.power(s)), r);
}

}  // namespace

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "trace_distance");
  return schatten_norm(HermitianMatrix(rho.mat() - sigma.mat()), 1.0);
}

double renyi_relative_entropy(const DensityMatrix& rho,
                              const DensityMatrix& sigma, double alpha) {
  require_open_unit(alpha, "renyi_relative_entropy");
  require_same_dim(rho, sigma, "renyi_relative_entropy");
  const double overlap = power_overlap(rho, sigma, alpha, 1.0 - alpha);
  if (overlap <= kUnderflowFloor) return kInf;
  return std::log(overlap) / (alpha - 1.0);
}

double von_neumann_relative_entropy(const DensityMatrix& rho,
                                    const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "von_neumann_relative_entropy");
  const RealVector& lam = rho.eigenvalues();
  const RealVector& mu = sigma.eigenvalues();
  const double mu_cut = kRankTolerance * mu.maxCoeff();
  Matrix overlap = rho.eigenvectors().adjoint() * sigma.eigenvectors();

  // Mass of rho outside supp(sigma) decides finiteness.
  double supported_mass = 0.0;
  double cross = 0.0;  // Tr[rho log sigma] over supp(sigma)
  for (Eigen::Index j = 0; j < mu.size(); ++j) {
    if (mu[j] <= mu_cut) continue;
    double col_mass = 0.0;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      col_mass += lam[i] * std::norm(overlap(i, j));
    }
    supported_mass += col_mass;
    cross += col_mass * std::log(mu[j]);
  }
  if (1.0 - supported_mass > kSupportMassTolerance) return kInf;

  double self = 0.0;  // Tr[rho log rho], with 0 log 0 = 0
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam[i] > 0.0) self += lam[i] * std::log(lam[i]);
  }
  return self - cross;
}

double trace_overlap(const DensityMatrix& rho, const DensityMatrix& sigma,
                     double p) {
  if (std::isnan(p) || p <= 1.0 || p > 2.0) {
    throw std::invalid_argument("trace_overlap: exponent must lie in (1, 2]");
  }
  require_same_dim(rho, sigma, "trace_overlap");
  return power_overlap(rho, sigma, 1.0 / p, 1.0 - 1.0 / p);
}

std::pair<InequalityCertificate, InequalityCertificate> overlap_certificates(
    const DensityMatrix& rho, const DensityMatrix& sigma, double p) {
  const double lhs = trace_overlap(rho, sigma, p);
  const double q = conjugate_exponent(p);
  const double tol = certificate_tolerance(rho.dim());
  const double dist_p = power_difference_norm(rho, sigma, 1.0 / p, p);
  const double rhs1 = 1.0 - 0.25 * (p - 1.0) * dist_p * dist_p;
  InequalityCertificate first = make_certificate(
      "overlap_remainder_1", lhs, rhs1, tol,
      {{"p", p}, {"alpha", 1.0 / p}, {"power_distance", dist_p}});
  const double dist_q = power_difference_norm(rho, sigma, 1.0 / q, q);
  const double rhs2 = 1.0 - std::pow(dist_q, q) / (q * std::pow(2.0, q - 1.0));
  InequalityCertificate second = make_certificate(
      "overlap_remainder_2", lhs, rhs2, tol,
      {{"p", p}, {"alpha", 1.0 / p}, {"power_distance", dist_q}});
  return {std::move(first), std::move(second)};
}

InequalityCertificate renyi_pinsker_certificate(const DensityMatrix& rho,
                                                const DensityMatrix& sigma,
                                                double alpha) {
  if (std::isnan(alpha) || alpha < 0.5 || alpha >= 1.0) {
    throw std::invalid_argument("renyi_pinsker_certificate: alpha must lie in [1/2, 1)");
  }
  require_same_dim(rho, sigma, "renyi_pinsker_certificate");
  const double dist = power_difference_norm(rho, sigma, alpha, 1.0 / alpha);
  const double bound = dist * dist / (4.0 * alpha);
  const double divergence = renyi_relative_entropy(rho, sigma, alpha);
  return make_certificate("renyi_pinsker", bound, divergence,
                          certificate_tolerance(rho.dim()),
                          {{"alpha", alpha}, {"power_distance", dist}});
}

InequalityCertificate classical_renyi_bound_certificate(
    const DensityMatrix& rho, const DensityMatrix& sigma, double alpha) {
  require_open_unit(alpha, "classical_renyi_bound_certificate");
  require_same_dim(rho, sigma, "classical_renyi_bound_certificate");
  const double dist = trace_distance(rho, sigma);
  const double bound = 0.5 * alpha * dist * dist;
  const double divergence = renyi_relative_entropy(rho, sigma, alpha);
  return make_certificate("classical_renyi_bound", bound, divergence,
                          certificate_tolerance(rho.dim()),
                          {{"alpha", alpha}, {"trace_distance", dist}});
}

InequalityCertificate ricard_bound_certificate(const HermitianMatrix& a,
                                               const HermitianMatrix& b,
                                               double alpha) {
  require_open_unit(alpha, "ricard_bound_certificate");
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("ricard_bound_certificate: dimension mismatch");
  }
  const double inv_alpha = 1.0 / alpha;
  HermitianMatrix pa = mat_power(a, alpha);
  HermitianMatrix pb = mat_power(b, alpha);
  const double lhs = (alpha / 3.0) * schatten_norm(HermitianMatrix(a.mat() - b.mat()), 1.0);
  const double diff = schatten_norm(HermitianMatrix(pa.mat() - pb.mat()), inv_alpha);
  const double factor = std::max(schatten_norm(pa, inv_alpha), schatten_norm(pb, inv_alpha));
  return make_certificate("ricard_bound", lhs, diff * factor,
                          certificate_tolerance(a.dim()),
                          {{"alpha", alpha},
                           {"power_difference_norm", diff},
                           {"max_power_norm", factor}});
}

InequalityCertificate weakened_pinsker_certificate(const DensityMatrix& rho,
                                                   const DensityMatrix& sigma,
                                                   double alpha) {
  if (std::isnan(alpha) || alpha < 0.5 || alpha >= 1.0) {
    throw std::invalid_argument("weakened_pinsker_certificate: alpha must lie in [1/2, 1)");
  }
  require_same_dim(rho, sigma, "weakened_pinsker_certificate");
  const double dist = trace_distance(rho, sigma);
  const double bound = (alpha / 36.0) * dist * dist;
  // The bound factors through the power-difference chain: (1/(4 alpha)) times
  // the square of (alpha/3) * distance reproduces it exactly.
  const double chain = std::pow(alpha * dist / 3.0, 2.0) / (4.0 * alpha);
  const double divergence = renyi_relative_entropy(rho, sigma, alpha);
  return make_certificate("weakened_pinsker", bound, divergence,
                          certificate_tolerance(rho.dim()),
                          {{"alpha", alpha},
                           {"trace_distance", dist},
                           {"chain_bound_deviation", std::abs(chain - bound)}});
}

InequalityCertificate pinsker_certificate(const DensityMatrix& rho,
                                          const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "pinsker_certificate");
  const double dist = trace_distance(rho, sigma);
  const double bound = 0.5 * dist * dist;
  const double divergence = von_neumann_relative_entropy(rho, sigma);
  return make_certificate("pinsker", bound, divergence,
                          certificate_tolerance(rho.dim()),
                          {{"trace_distance", dist}});
}

PinchingResult pinch_to_commuting(const DensityMatrix& rho,
                                  const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "pinch_to_commuting");
  const Eigen::Index n = rho.dim();
  SpectralDecomposition diff =
      eig_hermitian(HermitianMatrix(rho.mat() - sigma.mat()));
  // Keep the strictly positive eigenspace of rho - sigma.
  constexpr double kPositiveCut = 1e-12;
  Matrix proj = Matrix::Zero(n, n);
  Eigen::Index kept = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (diff.eigenvalues[i] > kPositiveCut) {
      proj += diff.eigenvectors.col(i) * diff.eigenvectors.col(i).adjoint();
      ++kept;
    }
  }
  const Matrix identity = Matrix::Identity(n, n);
  if (kept == 0 || kept == n) {
    // rho - sigma has no sign split, which forces rho = sigma up to the
    // cutoff; the two-block average degenerates to the full-space average.
    DensityMatrix avg((1.0 / static_cast<double>(n)) * identity);
    HermitianMatrix p_full(kept == 0 ? Matrix(Matrix::Zero(n, n)) : identity);
    const double w = kept == 0 ? 0.0 : 1.0;
    return {std::move(p_full), avg, avg, w, w};
  }
  const double block = static_cast<double>(kept);
  const double coblock = static_cast<double>(n - kept);
  auto clamp01 = [](double v) { return std::min(1.0, std::max(0.0, v)); };
  const double pw = clamp01(trace_inner(proj, rho.mat()).real());
  const double qw = clamp01(trace_inner(proj, sigma.mat()).real());
  Matrix rho_hat = (pw / block) * proj + ((1.0 - pw) / coblock) * (identity - proj);
  Matrix sigma_hat = (qw / block) * proj + ((1.0 - qw) / coblock) * (identity - proj);
  return {HermitianMatrix(proj), DensityMatrix(rho_hat), DensityMatrix(sigma_hat),
          pw, qw};
}

}  // namespace cpcert
