#include "cpcert/experiments.hpp"

#include "cpcert/schatten.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cpcert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Matrix diagonal_from(std::initializer_list<double> entries) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(entries.size()),
                          static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (double v : entries) m(i, i) = v, ++i;
  return m;
}

void require_epsilon(double epsilon, const char* fn) {
  if (!(epsilon > 0.0) || !(epsilon < 0.5)) {
    throw std::invalid_argument(std::string(fn) +
                                ": epsilon must lie in (0, 1/2)");
  }
}

void require_alpha_open(double alpha, const char* fn) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument(std::string(fn) +
                                ": alpha must lie in (0, 1)");
  }
}

}  // namespace

std::pair<DensityMatrix, DensityMatrix> symmetric_qubit_pair(double epsilon) {
  require_epsilon(epsilon, "symmetric_qubit_pair");
  DensityMatrix rho(diagonal_from({0.5, 0.5}));
  DensityMatrix sigma(diagonal_from({0.5 + epsilon, 0.5 - epsilon}));
  return {rho, sigma};
}

std::pair<DensityMatrix, DensityMatrix> scaling_witness_pair(double epsilon,
                                                             double alpha) {
  require_epsilon(epsilon, "scaling_witness_pair");
  require_alpha_open(alpha, "scaling_witness_pair");
  // sigma has a zero eigenvalue; rho opens it by alpha*eps and compensates on
  // the support so that both remain unit trace and ||rho - sigma||_1 = 2 eps.
  DensityMatrix rho(diagonal_from(
      {0.5 + (1.0 - alpha) * epsilon, 0.5 - epsilon, alpha * epsilon}));
  DensityMatrix sigma(diagonal_from({0.5, 0.5, 0.0}));
  return {rho, sigma};
}

RatioReport example_ratio(double epsilon, double alpha) {
  auto [rho, sigma] = scaling_witness_pair(epsilon, alpha);
  HermitianMatrix diff(rho.power(alpha) - sigma.power(alpha));
  RatioReport report;
  report.numerator = schatten_norm(diff, 1.0 / alpha);
  report.trace_distance = trace_distance(rho, sigma);
  report.measured = report.numerator / report.trace_distance;
  report.predicted_leading =
      std::pow(alpha, alpha) / (2.0 * std::pow(epsilon, 1.0 - alpha));
  return report;
}

SlopeFit epsilon_sweep_slope(double alpha,
                             const std::vector<double>& eps_grid) {
  require_alpha_open(alpha, "epsilon_sweep_slope");
  if (eps_grid.size() < 2) {
    throw std::invalid_argument(
        "epsilon_sweep_slope: need at least two grid points");
  }
  std::vector<double> measured;
  measured.reserve(eps_grid.size());
  for (double eps : eps_grid) {
    measured.push_back(example_ratio(eps, alpha).measured);
  }
  return fit_loglog(eps_grid, measured);
}

AlphaLimitReport alpha_limit_check(const DensityMatrix& rho,
                                   const DensityMatrix& sigma, int k_max) {
  if (k_max < 3 || k_max > 15) {
    throw std::invalid_argument(
        "alpha_limit_check: k_max must lie in [3, 15]");
  }
  AlphaLimitReport report;
  report.von_neumann = von_neumann_relative_entropy(rho, sigma);
  for (int k = 1; k <= k_max; ++k) {
    const double alpha = 1.0 - std::pow(10.0, -k);
    report.alphas.push_back(alpha);
    report.renyi.push_back(renyi_relative_entropy(rho, sigma, alpha));
    const double d = report.renyi.back();
    report.deviations.push_back(
        (std::isinf(d) && std::isinf(report.von_neumann))
            ? 0.0
            : std::abs(d - report.von_neumann));
  }
  report.final_deviation = report.deviations.back();
  return report;
}

// ---- curves ----

MatrixCurve::MatrixCurve(DensityMatrix generator, CurveRule rule)
    : generator_(std::move(generator)), rule_(rule) {}

Matrix MatrixCurve::at(double p) const {
  if (!(p >= 1.0) || std::isinf(p)) {
    throw std::invalid_argument("MatrixCurve: p must be finite and >= 1");
  }
  switch (rule_) {
    case CurveRule::PowerCurve:
      return generator_.power(1.0 / p);
  }
  throw std::logic_error("MatrixCurve: unhandled rule");
}

InequalityCertificate curve_overlap_certificate(const MatrixCurve& a,
                                                const MatrixCurve& b, double p,
                                                double k) {
  if (!(p > 1.0) || !(p <= 2.0)) {
    throw std::invalid_argument(
        "curve_overlap_certificate: p must lie in (1, 2]");
  }
  if (!std::isfinite(k) || !(k > 0.0)) {
    throw std::invalid_argument(
        "curve_overlap_certificate: k must be positive");
  }
  const Matrix ap = a.at(p);
  const Matrix bp = b.at(p);
  // B(p)^{p-1} = generator^{(p-1)/p}
  const Matrix b_pow = b.generator().power((p - 1.0) / p);
  const double lhs = trace_inner(ap, b_pow).real();
  const double dist = schatten_norm(HermitianMatrix(ap - bp), p);
  const double rhs = 1.0 - k * (p - 1.0) * dist * dist;
  InequalityCertificate cert = make_certificate(
      "curve_overlap", lhs, rhs,
      certificate_tolerance(static_cast<int>(ap.rows())));
  cert.metadata["p"] = p;
  cert.metadata["k"] = k;
  cert.metadata["curve_distance"] = dist;
  return cert;
}

// ---- Pinsker constant extraction ----

ConstantExtraction pinsker_constant_extraction(
    const DensityMatrix& rho, const DensityMatrix& sigma,
    const std::vector<double>& p_grid) {
  if (p_grid.size() < 2) {
    throw std::invalid_argument(
        "pinsker_constant_extraction: need at least two grid points");
  }
  const double td = trace_distance(rho, sigma);
  if (td < 1e-12) {
    throw std::invalid_argument(
        "pinsker_constant_extraction: states are numerically identical");
  }
  ConstantExtraction out;
  out.p_grid = p_grid;
  std::vector<double> hs;
  for (double p : p_grid) {
    if (!(p > 1.0) || !(p <= 2.0)) {
      throw std::invalid_argument(
          "pinsker_constant_extraction: grid points must lie in (1, 2]");
    }
    const double overlap = trace_overlap(rho, sigma, p);
    HermitianMatrix diff(rho.power(1.0 / p) - sigma.power(1.0 / p));
    const double dist = schatten_norm(diff, p);
    if (dist <= 0.0) {
      throw std::invalid_argument(
          "pinsker_constant_extraction: power distance vanished");
    }
    out.k_values.push_back((1.0 - overlap) / ((p - 1.0) * dist * dist));
    hs.push_back(p - 1.0);
  }
  out.extrapolated_k = extrapolate_to_zero(hs, out.k_values);
  return out;
}

std::vector<double> default_extraction_grid() {
  std::vector<double> grid;
  for (int j = 1; j <= 12; ++j) grid.push_back(1.0 + std::pow(2.0, -j));
  return grid;
}

std::vector<double> constant_iteration(double k0, int steps) {
  if (!std::isfinite(k0)) {
    throw std::invalid_argument("constant_iteration: k0 must be finite");
  }
  if (steps < 0 || steps > 1000000) {
    throw std::invalid_argument(
        "constant_iteration: steps must lie in [0, 1000000]");
  }
  std::vector<double> values;
  values.reserve(static_cast<size_t>(steps) + 1);
  values.push_back(k0);
  for (int i = 0; i < steps; ++i) {
    values.push_back(0.25 + 0.5 * values.back());
  }
  return values;
}

// ---- batched certification ----

namespace {

// Lane ids for auxiliary streams; the density pair itself uses lanes 0/1
// inside random_sample.
constexpr uint64_t kLaneMatrixA = 10;
constexpr uint64_t kLaneMatrixB = 11;
constexpr uint64_t kLanePsdA = 20;
constexpr uint64_t kLanePsdB = 21;

DensityMatrix density_from_general(const Matrix& g) {
  Matrix w = g * g.adjoint();
  const double tr = w.trace().real();
  if (!(tr > 0.0)) {
    throw std::runtime_error("ensemble_suite: degenerate sample");
  }
  return DensityMatrix(w / tr);
}

Matrix unit_in_norm(const Matrix& x, double p) {
  const double n = schatten_norm(x, p);
  if (!(n > 0.0)) {
    throw std::runtime_error("ensemble_suite: zero sample");
  }
  return x / n;
}

bool contains(const std::vector<std::string>& names, const char* name) {
  return std::find(names.begin(), names.end(), name) != names.end();
}

}  // namespace

const std::vector<std::string>& known_inequalities() {
  static const std::vector<std::string> names = {
      "uniform_convexity",
      "holder_remainder_1",
      "holder_remainder_2",
      "overlap_remainder_1",
      "overlap_remainder_2",
      "renyi_pinsker",
      "classical_renyi_bound",
      "ricard_bound",
      "weakened_pinsker",
      "pinsker",
      "pinching_trace_distance",
      "pinching_divergence_monotone",
  };
  return names;
}

EnsembleReport ensemble_suite(const EnsembleConfig& config,
                              const std::vector<std::string>& inequality_names,
                              const SuiteParams& params) {
  const auto& known = known_inequalities();
  for (const auto& name : inequality_names) {
    if (name == "selftest_violation") continue;
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw std::invalid_argument("ensemble_suite: unknown inequality \"" +
                                  name + "\"");
    }
  }
  if (!(params.tolerance > 0.0)) {
    throw std::invalid_argument("ensemble_suite: tolerance must be positive");
  }

  const bool want_matrix = contains(inequality_names, "uniform_convexity") ||
                           contains(inequality_names, "holder_remainder_1") ||
                           contains(inequality_names, "holder_remainder_2");
  const bool want_density =
      contains(inequality_names, "overlap_remainder_1") ||
      contains(inequality_names, "overlap_remainder_2") ||
      contains(inequality_names, "renyi_pinsker") ||
      contains(inequality_names, "classical_renyi_bound") ||
      contains(inequality_names, "weakened_pinsker") ||
      contains(inequality_names, "pinsker") ||
      contains(inequality_names, "pinching_trace_distance") ||
      contains(inequality_names, "pinching_divergence_monotone");
  const bool want_pinching =
      contains(inequality_names, "pinching_trace_distance") ||
      contains(inequality_names, "pinching_divergence_monotone");

  EnsembleReport report;
  const double tol = certificate_tolerance(config.dim, params.tolerance);

  for (int trial = 0; trial < config.trials; ++trial) {
    auto emit = [&](InequalityCertificate cert) {
      report.records.push_back(
          TrialCertificate{config.dim, trial, with_tolerance(std::move(cert), tol)});
    };

    DensityMatrix rho = DensityMatrix::maximally_mixed(1);
    DensityMatrix sigma = rho;
    if (want_density) {
      SamplePair sample = random_sample(config, trial);
      if (config.kind == EnsembleKind::GinibreGeneral) {
        rho = density_from_general(sample.first);
        sigma = density_from_general(sample.second);
      } else {
        rho = DensityMatrix(sample.first);
        sigma = DensityMatrix(sample.second);
      }
    }

    Matrix gen_a, gen_b;
    if (want_matrix) {
      StreamRng rng_a(stream_key(config.seed, static_cast<uint64_t>(trial),
                                 kLaneMatrixA));
      StreamRng rng_b(stream_key(config.seed, static_cast<uint64_t>(trial),
                                 kLaneMatrixB));
      gen_a = ginibre(config.dim, rng_a);
      gen_b = ginibre(config.dim, rng_b);
    }

    for (const auto& name : inequality_names) {
      if (name == "uniform_convexity") {
        for (double p : params.p_list) {
          if (!(p > 1.0) || std::isinf(p)) continue;
          emit(uniform_convexity_gap(unit_in_norm(gen_a, p),
                                     unit_in_norm(gen_b, p), p));
        }
      } else if (name == "holder_remainder_1" || name == "holder_remainder_2") {
        for (double p : params.p_list) {
          if (!(p > 1.0) || !(p <= 2.0)) continue;
          const double q = conjugate_exponent(p);
          const Matrix a = unit_in_norm(gen_a, p);
          const Matrix b = unit_in_norm(gen_b, q);
          emit(name == "holder_remainder_1" ? holder_remainder_1(a, b, p)
                                            : holder_remainder_2(a, b, p));
        }
      } else if (name == "overlap_remainder_1" || name == "overlap_remainder_2") {
        for (double p : params.p_list) {
          if (!(p > 1.0) || !(p <= 2.0)) continue;
          auto pair = overlap_certificates(rho, sigma, p);
          emit(name == "overlap_remainder_1" ? std::move(pair.first)
                                             : std::move(pair.second));
        }
      } else if (name == "renyi_pinsker") {
        for (double alpha : params.alpha_list) {
          if (!(alpha >= 0.5) || !(alpha < 1.0)) continue;
          emit(renyi_pinsker_certificate(rho, sigma, alpha));
        }
      } else if (name == "classical_renyi_bound") {
        for (double alpha : params.alpha_list) {
          if (!(alpha > 0.0) || !(alpha < 1.0)) continue;
          emit(classical_renyi_bound_certificate(rho, sigma, alpha));
        }
      } else if (name == "ricard_bound") {
        StreamRng rng_pa(stream_key(config.seed, static_cast<uint64_t>(trial),
                                    kLanePsdA));
        StreamRng rng_pb(stream_key(config.seed, static_cast<uint64_t>(trial),
                                    kLanePsdB));
        Matrix ga = ginibre(config.dim, rng_pa);
        Matrix gb = ginibre(config.dim, rng_pb);
        HermitianMatrix wa(Matrix(ga * ga.adjoint() / config.dim));
        HermitianMatrix wb(Matrix(gb * gb.adjoint() / config.dim));
        for (double alpha : params.alpha_list) {
          if (!(alpha > 0.0) || !(alpha < 1.0)) continue;
          emit(ricard_bound_certificate(wa, wb, alpha));
        }
      } else if (name == "weakened_pinsker") {
        for (double alpha : params.alpha_list) {
          if (!(alpha >= 0.5) || !(alpha < 1.0)) continue;
          emit(weakened_pinsker_certificate(rho, sigma, alpha));
        }
      } else if (name == "pinsker") {
        emit(pinsker_certificate(rho, sigma));
      } else if (name == "pinching_trace_distance" ||
                 name == "pinching_divergence_monotone") {
        // handled once below so both share one pinching pass
      } else if (name == "selftest_violation") {
        InequalityCertificate cert =
            make_certificate("selftest_violation", 1.0, 0.5, tol);
        emit(std::move(cert));
      }
    }

    if (want_pinching) {
      PinchingResult pinched = pinch_to_commuting(rho, sigma);
      if (contains(inequality_names, "pinching_trace_distance")) {
        const double before = trace_distance(rho, sigma);
        const double after =
            trace_distance(pinched.rho_hat, pinched.sigma_hat);
        InequalityCertificate cert = make_certificate(
            "pinching_trace_distance", std::abs(after - before), 0.0, tol);
        cert.metadata["distance_before"] = before;
        cert.metadata["distance_after"] = after;
        emit(std::move(cert));
      }
      if (contains(inequality_names, "pinching_divergence_monotone")) {
        for (double alpha : params.alpha_list) {
          if (!(alpha > 0.0) || !(alpha < 1.0)) continue;
          const double lhs = renyi_relative_entropy(pinched.rho_hat,
                                                    pinched.sigma_hat, alpha);
          const double rhs = renyi_relative_entropy(rho, sigma, alpha);
          InequalityCertificate cert =
              make_certificate("pinching_divergence_monotone", lhs, rhs, tol);
          cert.metadata["alpha"] = alpha;
          emit(std::move(cert));
        }
      }
    }
  }

  aggregate_records(report);
  return report;
}

void aggregate_records(EnsembleReport& report) {
  std::stable_sort(report.records.begin(), report.records.end(),
                   [](const TrialCertificate& a, const TrialCertificate& b) {
                     if (a.cert.name != b.cert.name)
                       return a.cert.name < b.cert.name;
                     if (a.dim != b.dim) return a.dim < b.dim;
                     return a.trial < b.trial;
                   });
  report.per_inequality.clear();
  report.violations = 0;
  double global_min = kInf;
  for (const auto& rec : report.records) {
    InequalityStats& st = report.per_inequality[rec.cert.name];
    if (st.count == 0) {
      st.min_gap = kInf;
      st.max_gap = -kInf;
    }
    ++st.count;
    if (rec.cert.status == CertStatus::Violated) {
      ++st.violations;
      ++report.violations;
    }
    if (std::isfinite(rec.cert.gap)) {
      st.min_gap = std::min(st.min_gap, rec.cert.gap);
      st.max_gap = std::max(st.max_gap, rec.cert.gap);
      st.mean_gap += rec.cert.gap;
      global_min = std::min(global_min, rec.cert.gap);
    } else {
      ++st.infinite_gaps;
    }
  }
  for (auto& [name, st] : report.per_inequality) {
    const long finite = st.count - st.infinite_gaps;
    st.mean_gap = finite > 0 ? st.mean_gap / static_cast<double>(finite) : 0.0;
    if (finite == 0) {
      st.min_gap = 0.0;
      st.max_gap = 0.0;
    }
  }
  // histograms: 10 equal bins over each inequality's finite gap range
  for (const auto& rec : report.records) {
    if (!std::isfinite(rec.cert.gap)) continue;
    InequalityStats& st = report.per_inequality[rec.cert.name];
    const double lo = st.min_gap, hi = st.max_gap;
    int bin = 0;
    if (hi > lo) {
      bin = static_cast<int>((rec.cert.gap - lo) / (hi - lo) * 10.0);
      bin = std::clamp(bin, 0, 9);
    }
    ++st.histogram[static_cast<size_t>(bin)];
  }
  report.min_gap = std::isfinite(global_min) ? global_min : 0.0;
}

}  // namespace cpcert
