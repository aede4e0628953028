// matcore.hpp -- dense complex-matrix primitives: Hermitian spectral calculus,
// SVD and polar factorizations, support-convention matrix powers, and the
// seeded random ensembles every certification campaign draws from.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cpcert {

using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;

// Support convention: spectral values at or below this cutoff (relative to the
// largest one) are treated as exact zeros, and 0^s := 0 for every exponent s.
inline constexpr double kRankTolerance = 1e-12;
// Density matrices may dip this far below zero before construction fails;
// eigenvalues in [kPsdFloor, 0) are clamped to 0.
inline constexpr double kPsdFloor = -1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-12;

// ---- value types ----

// Square matrix validated (and symmetrized) as Hermitian on construction.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(Matrix m);
  const Matrix& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

struct SpectralDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // columns match eigenvalue order
};

struct SingularValues {
  RealVector values;  // descending
  Matrix left;        // A = left * diag(values) * right^*
  Matrix right;
};

struct PolarFactors {
  Matrix isometry;          // partial isometry U with A = U |A|
  HermitianMatrix modulus;  // |A| = (A^* A)^{1/2}
};

// Unit-trace positive matrix; caches its spectral decomposition because every
// entropy quantity downstream is a function of the eigensystem.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Matrix& m);
  const Matrix& mat() const { return mat_; }
  const RealVector& eigenvalues() const { return evals_; }
  const Matrix& eigenvectors() const { return evecs_; }
  Eigen::Index dim() const { return mat_.rows(); }

  // rho^s under the support convention (0^s := 0).
  Matrix power(double s) const;
  Matrix support_projector() const;

  // Clamp all negative eigenvalues and renormalize the trace to one. This is
  // the projection used when an additive perturbation leaves the PSD cone.
  static DensityMatrix project(const Matrix& hermitian_like);

  static DensityMatrix maximally_mixed(Eigen::Index dim);

 private:
  Matrix mat_;
  RealVector evals_;
  Matrix evecs_;
};

// ---- spectral and polar operations ----

SpectralDecomposition eig_hermitian(const HermitianMatrix& h);
SingularValues svd(const Matrix& a);
HermitianMatrix abs_mat(const Matrix& a);
PolarFactors polar(const Matrix& a);

// Pseudo-power of a PSD matrix: eigenvalues below the rank cutoff map to 0,
// so negative exponents act on the support only. h must be PSD up to the
// clamping floor; s = 0 yields the support projector.
HermitianMatrix mat_power(const HermitianMatrix& h, double s);

// Tr[A B] (no adjoint on either factor).
Complex trace_inner(const Matrix& a, const Matrix& b);

// ---- seeded randomness ----

// SplitMix64-based stream: normals come from an explicit Box-Muller transform
// on 53-bit uniforms, so a given key yields the same matrix on every platform
// and in any evaluation order.
class StreamRng {
 public:
  explicit StreamRng(std::uint64_t key) : state_(key) {}
  std::uint64_t next_u64();
  double uniform01();  // in (0, 1]
  double normal();
  Complex complex_normal();  // E|z|^2 = 1

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Derives the key for (seed, trial, lane); distinct lanes within one trial
// give independent streams.
std::uint64_t stream_key(std::uint64_t seed, std::uint64_t trial,
                         std::uint64_t lane);

enum class EnsembleKind {
  GinibreGeneral,
  WishartDensity,
  DiagonalCommuting,
  RankDeficientDensity,
  NearIdenticalPair,
};

struct EnsembleConfig {
  int dim = 2;
  EnsembleKind kind = EnsembleKind::WishartDensity;
  int trials = 100;
  std::uint64_t seed = 0;
  int rank = 0;            // RankDeficientDensity; 0 means max(1, dim/2)
  double epsilon = 1e-2;   // NearIdenticalPair perturbation size
};

// Every kind yields a pair (two independent draws for the single-matrix
// kinds). Sampling is a pure function of (config, trial).
struct SamplePair {
  Matrix first;
  Matrix second;
};

SamplePair random_sample(const EnsembleConfig& config, int trial);

Matrix ginibre(int dim, StreamRng& rng);
Matrix ginibre_rect(int rows, int cols, StreamRng& rng);
DensityMatrix wishart_density(int dim, int rank, StreamRng& rng);
DensityMatrix diagonal_density(int dim, StreamRng& rng);

}  // namespace cpcert
