#include "cpcert/matcore.hpp"

#include <cmath>

namespace cpcert {

namespace {

void require_square(const Matrix& m, const char* fn) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument(std::string(fn) + ": matrix must be square and non-empty");
  }
}

}  // namespace

// ---- HermitianMatrix ----

HermitianMatrix::HermitianMatrix(Matrix m) {
  require_square(m, "HermitianMatrix");
  const double scale = m.cwiseAbs().maxCoeff();
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > kHermitianTolerance * scale && dev > 0.0) {
    throw std::invalid_argument("HermitianMatrix: input deviates from H = H^* beyond tolerance");
  }
  // Symmetrize so downstream spectral calls see an exactly Hermitian matrix.
  m_ = 0.5 * (m + m.adjoint().eval());
}

// ---- DensityMatrix ----

DensityMatrix::DensityMatrix(const Matrix& m) {
  HermitianMatrix h(m);
  const double tr = h.mat().trace().real();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    throw std::invalid_argument("DensityMatrix: trace must equal 1 within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.mat());
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("DensityMatrix: eigensolver failed to converge");
  }
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();
  if (evals_.minCoeff() < kPsdFloor) {
    throw std::invalid_argument("DensityMatrix: matrix is not PSD within the clamping floor");
  }
  for (Eigen::Index i = 0; i < evals_.size(); ++i) {
    if (evals_[i] < 0.0) evals_[i] = 0.0;
  }
  mat_ = evecs_ * evals_.cast<Complex>().asDiagonal() * evecs_.adjoint();
}

Matrix DensityMatrix::power(double s) const {
  const double cutoff = kRankTolerance * std::max(evals_.maxCoeff(), 0.0);
  RealVector powered(evals_.size());
  for (Eigen::Index i = 0; i < evals_.size(); ++i) {
    powered[i] = evals_[i] > cutoff ? std::pow(evals_[i], s) : 0.0;
  }
  return evecs_ * powered.cast<Complex>().asDiagonal() * evecs_.adjoint();
}

Matrix DensityMatrix::support_projector() const { return power(0.0); }

DensityMatrix DensityMatrix::project(const Matrix& hermitian_like) {
  Matrix sym = 0.5 * (hermitian_like + hermitian_like.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("DensityMatrix::project: eigensolver failed to converge");
  }
  RealVector vals = es.eigenvalues().cwiseMax(0.0);
  const double total = vals.sum();
  if (total <= 0.0) {
    throw std::invalid_argument("DensityMatrix::project: input has no positive spectral mass");
  }
  vals /= total;
  return DensityMatrix(es.eigenvectors() * vals.cast<Complex>().asDiagonal() *
                       es.eigenvectors().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  if (dim < 1) {
    throw std::invalid_argument("DensityMatrix::maximally_mixed: dim must be positive");
  }
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

// ---- spectral and polar operations ----

SpectralDecomposition eig_hermitian(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.mat());
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

SingularValues svd(const Matrix& a) {
  require_square(a, "svd");
  Eigen::JacobiSVD<Matrix> dec(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {dec.singularValues(), dec.matrixU(), dec.matrixV()};
}

HermitianMatrix abs_mat(const Matrix& a) {
  SingularValues sv = svd(a);
  return HermitianMatrix(sv.right * sv.values.cast<Complex>().asDiagonal() *
                         sv.right.adjoint());
}

PolarFactors polar(const Matrix& a) {
  SingularValues sv = svd(a);
  const double cutoff = kRankTolerance * (sv.values.size() ? sv.values[0] : 0.0);
  // U = sum_{sigma_i > cutoff} u_i v_i^*, a partial isometry onto range(A).
  Matrix u = Matrix::Zero(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < sv.values.size(); ++i) {
    if (sv.values[i] > cutoff) {
      u += sv.left.col(i) * sv.right.col(i).adjoint();
    }
  }
  return {u, HermitianMatrix(sv.right * sv.values.cast<Complex>().asDiagonal() *
                             sv.right.adjoint())};
}

HermitianMatrix mat_power(const HermitianMatrix& h, double s) {
  SpectralDecomposition dec = eig_hermitian(h);
  const double top = dec.eigenvalues.maxCoeff();
  if (dec.eigenvalues.minCoeff() < kPsdFloor * std::max(1.0, top)) {
    throw std::invalid_argument("mat_power: matrix is not PSD within the clamping floor");
  }
  const double cutoff = kRankTolerance * std::max(top, 0.0);
  RealVector powered(dec.eigenvalues.size());
  for (Eigen::Index i = 0; i < dec.eigenvalues.size(); ++i) {
    powered[i] = dec.eigenvalues[i] > cutoff ? std::pow(dec.eigenvalues[i], s) : 0.0;
  }
  return HermitianMatrix(dec.eigenvectors * powered.cast<Complex>().asDiagonal() *
                         dec.eigenvectors.adjoint());
}

Complex trace_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("trace_inner: dimension mismatch");
  }
  require_square(a, "trace_inner");
  return (a.transpose().cwiseProduct(b)).sum();
}

// ---- seeded randomness ----

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t StreamRng::next_u64() { return splitmix64(state_); }

double StreamRng::uniform01() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double StreamRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_ = r * std::sin(angle);
  has_spare_ = true;
  return r * std::cos(angle);
}

Complex StreamRng::complex_normal() {
  const double inv_sqrt2 = 0x1.6a09e667f3bcdp-1;  // 1/sqrt(2)
  return Complex(normal() * inv_sqrt2, normal() * inv_sqrt2);
}

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t trial, std::uint64_t lane) {
  std::uint64_t state = seed;
  (void)splitmix64(state);
  state ^= trial;
  (void)splitmix64(state);
  state ^= lane;
  return splitmix64(state);
}

Matrix ginibre(int dim, StreamRng& rng) { return ginibre_rect(dim, dim, rng); }

Matrix ginibre_rect(int rows, int cols, StreamRng& rng) {
  if (rows <= 0 || cols <= 0) {
    throw std::invalid_argument("ginibre: dimensions must be positive");
  }
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      g(i, j) = rng.complex_normal();
    }
  }
  return g;
}

DensityMatrix wishart_density(int dim, int rank, StreamRng& rng) {
  Matrix g = ginibre_rect(dim, rank, rng);
  Matrix w = g * g.adjoint();
  const double tr = w.trace().real();
  if (tr <= 0.0) {
    throw std::runtime_error("wishart_density: degenerate draw");
  }
  return DensityMatrix(w / tr);
}

DensityMatrix diagonal_density(int dim, StreamRng& rng) {
  RealVector w(dim);
  for (int i = 0; i < dim; ++i) {
    w[i] = -std::log(rng.uniform01());  // exponential weights
  }
  w /= w.sum();
  Matrix d = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) d(i, i) = w[i];
  return DensityMatrix(d);
}

namespace {

DensityMatrix near_identical_partner(const DensityMatrix& rho, double epsilon,
                                     StreamRng& rng) {
  const int n = static_cast<int>(rho.dim());
  Matrix g = ginibre(n, rng);
  Matrix t = 0.5 * (g + g.adjoint().eval());
  t -= (t.trace() / static_cast<double>(n)) * Matrix::Identity(n, n);
  const double scale = t.norm();  // Frobenius
  if (scale > 0.0) t /= scale;
  return DensityMatrix::project(rho.mat() + epsilon * t);
}

}  // namespace

SamplePair random_sample(const EnsembleConfig& config, int trial) {
  if (config.dim <= 0) throw std::invalid_argument("random_sample: dim must be positive");
  if (trial < 0) throw std::invalid_argument("random_sample: trial must be non-negative");
  StreamRng lane0(stream_key(config.seed, static_cast<std::uint64_t>(trial), 0));
  StreamRng lane1(stream_key(config.seed, static_cast<std::uint64_t>(trial), 1));
  switch (config.kind) {
    case EnsembleKind::GinibreGeneral:
      return {ginibre(config.dim, lane0), ginibre(config.dim, lane1)};
    case EnsembleKind::WishartDensity:
      return {wishart_density(config.dim, config.dim, lane0).mat(),
              wishart_density(config.dim, config.dim, lane1).mat()};
    case EnsembleKind::DiagonalCommuting:
      return {diagonal_density(config.dim, lane0).mat(),
              diagonal_density(config.dim, lane1).mat()};
    case EnsembleKind::RankDeficientDensity: {
      int rank = config.rank > 0 ? config.rank : std::max(1, config.dim / 2);
      if (rank > config.dim) {
        throw std::invalid_argument("random_sample: rank exceeds dimension");
      }
      return {wishart_density(config.dim, rank, lane0).mat(),
              wishart_density(config.dim, rank, lane1).mat()};
    }
    case EnsembleKind::NearIdenticalPair: {
      if (!(config.epsilon > 0.0)) {
        throw std::invalid_argument("random_sample: epsilon must be positive");
      }
      DensityMatrix rho = wishart_density(config.dim, config.dim, lane0);
      DensityMatrix sigma = near_identical_partner(rho, config.epsilon, lane1);
      return {rho.mat(), sigma.mat()};
    }
  }
  throw std::invalid_argument("random_sample: unknown ensemble kind");
}

}  // namespace cpcert
