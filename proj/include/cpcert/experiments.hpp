// experiments.hpp -- reproducible numerical studies: the commuting example
// families and their scaling ratios, the alpha -> 1 limit of the Renyi
// divergence, positive norm-one curves, Pinsker-constant extraction, and the
// batched certification suite the CLI drives.
#pragma once

#include "cpcert/convexity.hpp"
#include "cpcert/entropy.hpp"
#include "cpcert/fitting.hpp"
#include "cpcert/matcore.hpp"

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cpcert {

// rho = I/2, sigma = diag(1/2 + eps, 1/2 - eps): the commuting full-rank pair
// used for the divergence examples; ||rho - sigma||_1 = 2 eps exactly.
std::pair<DensityMatrix, DensityMatrix> symmetric_qubit_pair(double epsilon);

// Commuting qutrit family with ||rho - sigma||_1 = 2 eps whose alpha-power
// difference is dominated by the eigenvalue alpha*eps opening against a zero
// eigenvalue of sigma. It witnesses the unbounded ratio
//   ||rho^alpha - sigma^alpha||_{1/alpha} / ||rho - sigma||_1
//   = alpha^alpha / (2 eps^{1-alpha}) + o(eps^{alpha-1});
// full-rank smooth pairs keep this ratio bounded, so a vanishing eigenvalue
// is essential.
std::pair<DensityMatrix, DensityMatrix> scaling_witness_pair(double epsilon,
                                                             double alpha);

struct RatioReport {
  double measured;           // computed ratio on the witness family
  double predicted_leading;  // alpha^alpha / (2 eps^{1-alpha})
  double numerator;          // ||rho^alpha - sigma^alpha||_{1/alpha}
  double trace_distance;     // ||rho - sigma||_1
};

RatioReport example_ratio(double epsilon, double alpha);

// Fits log(measured ratio) against log(eps); the exponent approaches
// -(1 - alpha).
SlopeFit epsilon_sweep_slope(double alpha, const std::vector<double>& eps_grid);

struct AlphaLimitReport {
  std::vector<double> alphas;      // 1 - 10^{-k}, k = 1..k_max
  std::vector<double> renyi;       // D_alpha at each grid point
  double von_neumann;              // D(rho||sigma)
  std::vector<double> deviations;  // |D_alpha - D|
  double final_deviation;
};

AlphaLimitReport alpha_limit_check(const DensityMatrix& rho,
                                   const DensityMatrix& sigma, int k_max);

// Positive unit-norm curve A(p) = rho^{1/p}: ||A(p)||_p = 1 for every p >= 1
// and A(p) -> rho in trace norm as p -> 1.
enum class CurveRule { PowerCurve };

class MatrixCurve {
 public:
  explicit MatrixCurve(DensityMatrix generator,
                       CurveRule rule = CurveRule::PowerCurve);
  Matrix at(double p) const;
  const DensityMatrix& generator() const { return generator_; }

 private:
  DensityMatrix generator_;
  CurveRule rule_;
};

// Tr[A(p) B(p)^{p-1}] <= 1 - k (p-1) ||A(p) - B(p)||_p^2. Holds without any
// o(p-1) allowance at k = 1/4; constants k < 1/2 hold asymptotically as
// p -> 1.
InequalityCertificate curve_overlap_certificate(const MatrixCurve& a,
                                                const MatrixCurve& b, double p,
                                                double k);

struct ConstantExtraction {
  std::vector<double> p_grid;
  std::vector<double> k_values;  // (1 - overlap) / ((p-1) ||...||_p^2)
  double extrapolated_k;         // linear-in-(p-1) extrapolation to p = 1
};

// Extracts k(p) on a decreasing grid and extrapolates to the limiting
// functional D(rho||sigma)/||rho - sigma||_1^2; rejects identical states.
ConstantExtraction pinsker_constant_extraction(const DensityMatrix& rho,
                                               const DensityMatrix& sigma,
                                               const std::vector<double>& p_grid);

// p_j = 1 + 2^{-j}, j = 1..12.
std::vector<double> default_extraction_grid();

// k_{i+1} = 1/4 + k_i / 2; returns {k_0, ..., k_steps}. The map contracts to
// the fixed point 1/2 at rate 2^{-steps}.
std::vector<double> constant_iteration(double k0, int steps);

// ---- batched certification ----

struct SuiteParams {
  std::vector<double> p_list = {1.1, 1.25, 1.5, 1.75, 2.0};
  std::vector<double> alpha_list = {0.5, 0.6, 0.7, 0.8, 0.9, 0.99};
  double tolerance = 1e-9;
};

struct TrialCertificate {
  int dim = 0;
  int trial = 0;
  InequalityCertificate cert;
};

struct InequalityStats {
  long count = 0;
  long violations = 0;
  long infinite_gaps = 0;
  double min_gap = 0.0;
  double max_gap = 0.0;
  double mean_gap = 0.0;
  std::array<long, 10> histogram{};  // finite gaps over [min_gap, max_gap]
};

struct EnsembleReport {
  std::vector<TrialCertificate> records;  // sorted by (name, dim, trial)
  double min_gap = 0.0;
  long violations = 0;
  std::map<std::string, InequalityStats> per_inequality;
};

// Names understood by ensemble_suite; the deliberately failing
// "selftest_violation" probe is accepted but not part of this default set.
const std::vector<std::string>& known_inequalities();

// Evaluates the named inequalities over the configured ensemble. Density
// inputs follow config.kind; the Holder/convexity certificates always draw
// general Ginibre pairs, and the PSD pair for the power-difference bound is
// Wishart-scaled. Deterministic in (config, names, params).
EnsembleReport ensemble_suite(const EnsembleConfig& config,
                              const std::vector<std::string>& inequality_names,
                              const SuiteParams& params = {});

// Aggregation used by ensemble_suite and the report writer.
void aggregate_records(EnsembleReport& report);

}  // namespace cpcert
