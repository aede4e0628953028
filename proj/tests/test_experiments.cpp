#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cpcert/experiments.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

using namespace cpcert;

namespace {

std::vector<double> log_spaced_grid(double lo, double hi, int n) {
  std::vector<double> grid;
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    grid.push_back(lo * std::pow(hi / lo, t));
  }
  return grid;
}

DensityMatrix random_density(int dim, std::uint64_t key) {
  StreamRng rng(key);
  return wishart_density(dim, dim, rng);
}

}  // namespace

TEST_CASE("symmetric_qubit_pair_has_trace_distance_two_epsilon") {
  for (double eps : {1e-4, 1e-2, 0.1, 0.3}) {
    auto [rho, sigma] = symmetric_qubit_pair(eps);
    CHECK(std::abs(trace_distance(rho, sigma) - 2.0 * eps) <= 1e-14);
  }
  CHECK_THROWS_AS(symmetric_qubit_pair(0.0), std::invalid_argument);
  CHECK_THROWS_AS(symmetric_qubit_pair(0.5), std::invalid_argument);
  CHECK_THROWS_AS(symmetric_qubit_pair(-0.1), std::invalid_argument);
}

TEST_CASE("scaling_witness_pair_opens_a_zero_eigenvalue") {
  const double eps = 1e-3, alpha = 0.5;
  auto [rho, sigma] = scaling_witness_pair(eps, alpha);
  CHECK(std::abs(trace_distance(rho, sigma) - 2.0 * eps) <= 1e-14);
  CHECK(sigma.eigenvalues().minCoeff() == 0.0);
  CHECK(rho.eigenvalues().minCoeff() > 0.0);
  CHECK_THROWS_AS(scaling_witness_pair(eps, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(scaling_witness_pair(0.5, alpha), std::invalid_argument);
}

TEST_CASE("example_ratio_tracks_its_leading_order_prediction") {
  RatioReport report = example_ratio(1e-4, 0.5);
  // prediction: alpha^alpha / (2 eps^{1-alpha})
  const double predicted = std::pow(0.5, 0.5) / (2.0 * std::pow(1e-4, 0.5));
  CHECK(std::abs(report.predicted_leading - predicted) < 1e-12);
  CHECK(std::abs(report.trace_distance - 2e-4) < 1e-15);
  const double rel = report.measured / report.predicted_leading - 1.0;
  // the finite-eps correction is positive and of order eps^{alpha/(1-alpha)}
  CHECK(rel > 6.2e-5);
  CHECK(rel < 6.3e-5);
}

TEST_CASE("example_ratio_grows_without_bound_as_epsilon_shrinks") {
  const double alpha = 0.5;
  double previous = 0.0;
  for (double eps : {1e-2, 1e-3, 1e-4, 1e-5}) {
    RatioReport report = example_ratio(eps, alpha);
    CHECK(report.measured > previous);
    previous = report.measured;
  }
  CHECK(previous > 100.0);  // far beyond any fixed full-rank bound
}

TEST_CASE("epsilon_sweep_slope_matches_the_predicted_exponent_at_half") {
  SlopeFit fit = epsilon_sweep_slope(0.5, log_spaced_grid(1e-5, 1e-2, 13));
  CHECK(fit.exponent > -0.52);
  CHECK(fit.exponent < -0.48);
  CHECK(std::abs(fit.exponent - (-0.5)) < 0.02);
}

TEST_CASE("epsilon_sweep_slope_carries_a_visible_finite_size_bias_near_one") {
  // at alpha = 0.9 the support-compensation term eps^{(1-alpha)/alpha}
  // decays so slowly that the fitted exponent sits well above the
  // asymptotic value -(1 - alpha) = -0.1 on any practical grid
  SlopeFit fit = epsilon_sweep_slope(0.9, log_spaced_grid(1e-5, 1e-2, 13));
  CHECK(fit.exponent > -0.085);
  CHECK(fit.exponent < -0.05);
}

TEST_CASE("epsilon_sweep_slope_is_accurate_again_very_close_to_one") {
  SlopeFit fit = epsilon_sweep_slope(0.99, log_spaced_grid(1e-5, 1e-2, 13));
  CHECK(std::abs(fit.exponent - (-0.01)) < 0.02);
}

TEST_CASE("epsilon_sweep_slope_validates_its_inputs") {
  CHECK_THROWS_AS(epsilon_sweep_slope(0.5, {1e-3}), std::invalid_argument);
  CHECK_THROWS_AS(epsilon_sweep_slope(1.0, {1e-3, 1e-2}),
                  std::invalid_argument);
}

TEST_CASE("alpha_limit_check_converges_to_the_von_neumann_divergence") {
  auto [rho, sigma] = symmetric_qubit_pair(0.1);
  AlphaLimitReport report = alpha_limit_check(rho, sigma, 6);
  CHECK(report.alphas.size() == 6);
  CHECK(std::abs(report.alphas.back() - (1.0 - 1e-6)) < 1e-15);
  CHECK(std::abs(report.von_neumann - 0.020410997260127517) < 1e-15);
  // deviations shrink monotonically along the grid
  for (size_t k = 1; k < report.deviations.size(); ++k) {
    CHECK(report.deviations[k] <= report.deviations[k - 1] + 1e-15);
  }
  CHECK(report.final_deviation <= 1e-4 * (1.0 + report.von_neumann));
}

TEST_CASE("alpha_limit_check_handles_joint_divergence") {
  Matrix m1 = Matrix::Zero(2, 2);
  m1(0, 0) = 1.0;
  Matrix m2 = Matrix::Zero(2, 2);
  m2(1, 1) = 1.0;
  DensityMatrix e1(m1);
  DensityMatrix e2(m2);
  AlphaLimitReport report = alpha_limit_check(e1, e2, 3);
  CHECK(std::isinf(report.von_neumann));
  CHECK(report.final_deviation == 0.0);
}

TEST_CASE("alpha_limit_check_validates_the_grid_depth") {
  auto [rho, sigma] = symmetric_qubit_pair(0.1);
  CHECK_THROWS_AS(alpha_limit_check(rho, sigma, 2), std::invalid_argument);
  CHECK_THROWS_AS(alpha_limit_check(rho, sigma, 16), std::invalid_argument);
}

TEST_CASE("power_curve_stays_on_the_unit_sphere_and_ends_at_its_generator") {
  MatrixCurve curve(random_density(3, 911));
  for (double p : {1.0, 1.5, 2.0, 4.0}) {
    CHECK(std::abs(schatten_norm(curve.at(p), p) - 1.0) <= 1e-10);
  }
  CHECK((curve.at(1.0) - curve.generator().mat()).cwiseAbs().maxCoeff() <
        1e-12);
  // trace-norm convergence to the generator as p -> 1
  CHECK(schatten_norm(Matrix(curve.at(1.0 + 1e-6) - curve.generator().mat()),
                      1.0) < 1e-4);
  CHECK_THROWS_AS(curve.at(0.9), std::invalid_argument);
}

TEST_CASE("curve_overlap_certificate_saturates_on_identical_curves") {
  MatrixCurve curve(random_density(3, 921));
  InequalityCertificate cert = curve_overlap_certificate(curve, curve, 1.5,
                                                         0.25);
  CHECK(std::abs(cert.lhs - 1.0) < 1e-12);
  CHECK(std::abs(cert.rhs - 1.0) < 1e-12);
  CHECK(std::abs(cert.gap) < 1e-12);
}

TEST_CASE("curve_overlap_holds_at_one_quarter_for_every_p") {
  for (int trial = 0; trial < 10; ++trial) {
    MatrixCurve a(random_density(3, stream_key(931, trial, 0)));
    MatrixCurve b(random_density(3, stream_key(931, trial, 1)));
    for (double p : {1.001, 1.1, 1.5, 2.0}) {
      InequalityCertificate cert = curve_overlap_certificate(a, b, p, 0.25);
      CHECK(cert.gap >= -1e-9);
    }
  }
}

TEST_CASE("curve_overlap_tolerates_constants_below_one_half_near_p_one") {
  // at k = 0.49 the bound may dip negative only within an o(p-1) allowance
  for (int trial = 0; trial < 10; ++trial) {
    MatrixCurve a(random_density(3, stream_key(941, trial, 0)));
    MatrixCurve b(random_density(3, stream_key(941, trial, 1)));
    const double p = 1.001;
    InequalityCertificate cert = curve_overlap_certificate(a, b, p, 0.49);
    const double dist = cert.metadata.at("curve_distance");
    CHECK(cert.gap + 0.24 * (p - 1.0) * dist * dist >= -1e-9);
  }
}

TEST_CASE("positive_unit_curves_close_under_normalized_sums") {
  MatrixCurve a(random_density(3, 951));
  MatrixCurve b(random_density(3, 952));
  const double p = 1.001;
  Matrix sum = a.at(p) + b.at(p);
  const double norm = schatten_norm(sum, p);
  CHECK(std::abs(schatten_norm(Matrix(sum / norm), p) - 1.0) <= 1e-10);
  // the sum of two unit positive curves approaches total mass two at p = 1
  CHECK(std::abs(norm - 2.0) < 0.01);
}

TEST_CASE("curve_overlap_certificate_validates_its_inputs") {
  MatrixCurve a(random_density(2, 961));
  CHECK_THROWS_AS(curve_overlap_certificate(a, a, 1.0, 0.25),
                  std::invalid_argument);
  CHECK_THROWS_AS(curve_overlap_certificate(a, a, 2.5, 0.25),
                  std::invalid_argument);
  CHECK_THROWS_AS(curve_overlap_certificate(a, a, 1.5, 0.0),
                  std::invalid_argument);
}

TEST_CASE("pinsker_extraction_reproduces_the_limiting_functional") {
  auto [rho, sigma] = symmetric_qubit_pair(0.1);
  ConstantExtraction ce =
      pinsker_constant_extraction(rho, sigma, default_extraction_grid());
  CHECK(std::abs(ce.extrapolated_k - 0.51027493) < 2e-6);
  // the p -> 1 limit of k(p) is D(rho||sigma) / ||rho - sigma||_1^2
  const double td = trace_distance(rho, sigma);
  const double limit = von_neumann_relative_entropy(rho, sigma) / (td * td);
  CHECK(std::abs(ce.extrapolated_k - limit) < 2e-6);
}

TEST_CASE("pinsker_extraction_approaches_one_half_from_above") {
  double previous = 10.0;
  for (double eps : {0.2, 0.1, 0.05, 0.01}) {
    auto [rho, sigma] = symmetric_qubit_pair(eps);
    ConstantExtraction ce =
        pinsker_constant_extraction(rho, sigma, default_extraction_grid());
    CHECK(ce.extrapolated_k > 0.5);
    CHECK(ce.extrapolated_k < previous);
    previous = ce.extrapolated_k;
  }
  auto [rho, sigma] = symmetric_qubit_pair(0.01);
  ConstantExtraction ce =
      pinsker_constant_extraction(rho, sigma, default_extraction_grid());
  CHECK(std::abs(ce.extrapolated_k - 0.500100026) < 2e-6);
}

TEST_CASE("pinsker_extraction_stays_above_one_quarter_pointwise") {
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + trial % 3;
    DensityMatrix rho = random_density(dim, stream_key(971, trial, 0));
    DensityMatrix sigma = random_density(dim, stream_key(971, trial, 1));
    ConstantExtraction ce =
        pinsker_constant_extraction(rho, sigma, default_extraction_grid());
    for (double k : ce.k_values) {
      CHECK(k >= 0.25 - 1e-6);
    }
    CHECK(ce.extrapolated_k > 0.5);
  }
}

TEST_CASE("pinsker_extraction_validates_its_inputs") {
  auto [rho, sigma] = symmetric_qubit_pair(0.1);
  CHECK_THROWS_AS(pinsker_constant_extraction(rho, rho,
                                              default_extraction_grid()),
                  std::invalid_argument);
  CHECK_THROWS_AS(pinsker_constant_extraction(rho, sigma, {1.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(pinsker_constant_extraction(rho, sigma, {1.5, 2.5}),
                  std::invalid_argument);
}

TEST_CASE("default_extraction_grid_is_dyadic_and_decreasing") {
  std::vector<double> grid = default_extraction_grid();
  CHECK(grid.size() == 12);
  CHECK(grid.front() == 1.5);
  CHECK(grid.back() == 1.0 + std::pow(2.0, -12));
  for (size_t i = 1; i < grid.size(); ++i) {
    CHECK(grid[i] < grid[i - 1]);
  }
}

TEST_CASE("constant_iteration_contracts_to_one_half_at_rate_one_half") {
  std::vector<double> values = constant_iteration(0.25, 20);
  CHECK(values.size() == 21);
  CHECK(values[0] == 0.25);
  CHECK(values[1] == 0.375);
  CHECK(values[2] == 0.4375);
  for (size_t i = 0; i < values.size(); ++i) {
    // dyadic start makes the decay law exact in binary arithmetic
    CHECK(std::abs(values[i] - 0.5) ==
          0.25 * std::pow(2.0, -static_cast<double>(i)));
  }
  CHECK(std::abs(values[20] - 0.5) < 1e-6);
}

TEST_CASE("constant_iteration_fixes_one_half_and_validates_inputs") {
  std::vector<double> fixed = constant_iteration(0.5, 5);
  for (double v : fixed) {
    CHECK(v == 0.5);
  }
  std::vector<double> from_above = constant_iteration(0.9, 10);
  CHECK(std::abs(from_above.back() - 0.5) < 0.4 * std::pow(2.0, -10) + 1e-12);
  CHECK_THROWS_AS(constant_iteration(0.25, -1), std::invalid_argument);
  CHECK_THROWS_AS(
      constant_iteration(std::numeric_limits<double>::infinity(), 3),
      std::invalid_argument);
}

TEST_CASE("renyi_pinsker_dominates_the_classical_bound_on_the_witness") {
  // near a vanishing eigenvalue the power-difference norm blows up, so the
  // sharper lower bound wins by an unbounded factor as eps -> 0
  auto [rho, sigma] = scaling_witness_pair(1e-3, 0.5);
  InequalityCertificate sharp = renyi_pinsker_certificate(rho, sigma, 0.5);
  InequalityCertificate classical =
      classical_renyi_bound_certificate(rho, sigma, 0.5);
  CHECK(sharp.lhs > 5.0 * classical.lhs);
  CHECK(sharp.status == CertStatus::Holds);
  CHECK(classical.status == CertStatus::Holds);
}

TEST_CASE("ensemble_suite_with_no_inequalities_returns_an_empty_report") {
  EnsembleConfig config;
  config.dim = 3;
  config.trials = 4;
  EnsembleReport report = ensemble_suite(config, {});
  CHECK(report.records.empty());
  CHECK(report.min_gap == 0.0);
  CHECK(report.violations == 0);
  CHECK(report.per_inequality.empty());
}

TEST_CASE("ensemble_suite_full_campaign_has_zero_violations") {
  EnsembleConfig config;
  config.dim = 4;
  config.kind = EnsembleKind::WishartDensity;
  config.trials = 100;
  config.seed = 7;
  EnsembleReport report = ensemble_suite(config, known_inequalities());
  // 5 p-values for each of five norm inequalities, 6 alphas for each of
  // four divergence bounds, plus pinsker and the pinching distance check
  CHECK(report.records.size() == 5700);
  CHECK(report.violations == 0);
  for (const auto& [name, stats] : report.per_inequality) {
    CHECK(stats.violations == 0);
  }
  CHECK(report.per_inequality.at("uniform_convexity").count == 500);
  CHECK(report.per_inequality.at("pinsker").count == 100);
  CHECK(report.per_inequality.at("renyi_pinsker").count == 600);
  CHECK(report.per_inequality.at("pinching_trace_distance").count == 100);
  long histogram_total = 0;
  const InequalityStats& pinsker_stats = report.per_inequality.at("pinsker");
  for (long bin : pinsker_stats.histogram) histogram_total += bin;
  CHECK(histogram_total == pinsker_stats.count - pinsker_stats.infinite_gaps);
}

TEST_CASE("ensemble_suite_is_deterministic_across_reruns") {
  EnsembleConfig config;
  config.dim = 3;
  config.trials = 20;
  config.seed = 12;
  EnsembleReport first = ensemble_suite(config, known_inequalities());
  EnsembleReport second = ensemble_suite(config, known_inequalities());
  CHECK(first.records.size() == second.records.size());
  for (size_t i = 0; i < first.records.size(); ++i) {
    CHECK(first.records[i].cert.name == second.records[i].cert.name);
    CHECK(first.records[i].trial == second.records[i].trial);
    CHECK(first.records[i].cert.gap == second.records[i].cert.gap);
  }
}

TEST_CASE("ensemble_suite_records_are_sorted_by_name_and_trial") {
  EnsembleConfig config;
  config.dim = 3;
  config.trials = 10;
  config.seed = 5;
  EnsembleReport report = ensemble_suite(
      config, {"pinsker", "uniform_convexity", "classical_renyi_bound"});
  for (size_t i = 1; i < report.records.size(); ++i) {
    const auto& prev = report.records[i - 1];
    const auto& curr = report.records[i];
    const bool ordered =
        prev.cert.name < curr.cert.name ||
        (prev.cert.name == curr.cert.name && prev.trial <= curr.trial);
    CHECK(ordered);
  }
}

TEST_CASE("ensemble_suite_works_on_every_ensemble_kind") {
  for (EnsembleKind kind :
       {EnsembleKind::GinibreGeneral, EnsembleKind::WishartDensity,
        EnsembleKind::DiagonalCommuting, EnsembleKind::RankDeficientDensity,
        EnsembleKind::NearIdenticalPair}) {
    EnsembleConfig config;
    config.dim = 3;
    config.kind = kind;
    config.trials = 5;
    config.seed = 31;
    EnsembleReport report =
        ensemble_suite(config, {"pinsker", "renyi_pinsker", "ricard_bound"});
    CHECK(report.violations == 0);
    CHECK(report.records.size() == 5 * (1 + 6 + 6));
  }
}

TEST_CASE("ensemble_suite_selftest_probe_reports_violations") {
  EnsembleConfig config;
  config.dim = 2;
  config.trials = 5;
  EnsembleReport report = ensemble_suite(config, {"selftest_violation"});
  CHECK(report.records.size() == 5);
  CHECK(report.violations == 5);
  for (const auto& rec : report.records) {
    CHECK(rec.cert.status == CertStatus::Violated);
    CHECK(rec.cert.gap == -0.5);
  }
  CHECK(report.min_gap == -0.5);
}

TEST_CASE("ensemble_suite_rejects_unknown_names_and_bad_tolerances") {
  EnsembleConfig config;
  config.dim = 2;
  config.trials = 1;
  CHECK_THROWS_AS(ensemble_suite(config, {"no_such_inequality"}),
                  std::invalid_argument);
  SuiteParams params;
  params.tolerance = 0.0;
  CHECK_THROWS_AS(ensemble_suite(config, {"pinsker"}, params),
                  std::invalid_argument);
}

TEST_CASE("ensemble_suite_applies_the_configured_tolerance") {
  EnsembleConfig config;
  config.dim = 3;
  config.trials = 2;
  SuiteParams params;
  params.tolerance = 1e-3;
  EnsembleReport report = ensemble_suite(config, {"pinsker"}, params);
  for (const auto& rec : report.records) {
    CHECK(rec.cert.tolerance == 1e-3);
  }
  // dimensions past ten widen the stamped tolerance
  EnsembleConfig wide = config;
  wide.dim = 12;
  EnsembleReport wide_report = ensemble_suite(wide, {"pinsker"}, params);
  for (const auto& rec : wide_report.records) {
    CHECK(std::abs(rec.cert.tolerance - 1.2e-3) < 1e-18);
  }
}
