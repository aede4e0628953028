#include "cpcert/report.hpp"

#include "cpcert/schatten.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace cpcert {

namespace {

EnsembleKind parse_ensemble_kind(const std::string& name) {
  if (name == "ginibre") return EnsembleKind::GinibreGeneral;
  if (name == "wishart") return EnsembleKind::WishartDensity;
  if (name == "diagonal") return EnsembleKind::DiagonalCommuting;
  if (name == "rank_deficient") return EnsembleKind::RankDeficientDensity;
  if (name == "near_identical") return EnsembleKind::NearIdenticalPair;
  throw std::invalid_argument(
      "run_command: unknown ensemble \"" + name +
      "\" (expected ginibre, wishart, diagonal, rank_deficient, or "
      "near_identical)");
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> grid;
  grid.reserve(static_cast<size_t>(n));
  const double la = std::log(lo), lb = std::log(hi);
  for (int i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    grid.push_back(std::exp(la + t * (lb - la)));
  }
  return grid;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

// JSON value for a double: bare number when finite, quoted token otherwise.
std::string json_number(double v) {
  if (std::isfinite(v)) return format_double(v);
  return "\"" + format_double(v) + "\"";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

template <typename T, typename F>
std::string json_array(const std::vector<T>& values, F&& fmt) {
  std::string out = "[";
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += fmt(values[i]);
  }
  out += "]";
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_param(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string parameters_string(const std::map<std::string, double>& metadata,
                              int dim, int trial) {
  std::map<std::string, std::string> items;
  for (const auto& [key, value] : metadata) items[key] = format_param(value);
  if (dim > 0) items["dim"] = std::to_string(dim);
  items["trial"] = std::to_string(trial);
  std::string out;
  for (const auto& [key, value] : items) {
    if (!out.empty()) out += ";";
    out += key;
    out += "=";
    out += value;
  }
  return out;
}

ReportRecord to_record(const TrialCertificate& tc) {
  ReportRecord rec;
  rec.name = tc.cert.name;
  rec.dim = tc.dim;
  rec.trial = tc.trial;
  rec.parameters = parameters_string(tc.cert.metadata, tc.dim, tc.trial);
  rec.lhs = tc.cert.lhs;
  rec.rhs = tc.cert.rhs;
  rec.gap = tc.cert.gap;
  rec.status = to_string(tc.cert.status);
  return rec;
}

void finalize_report(Report& report) {
  std::sort(report.records.begin(), report.records.end(),
            [](const ReportRecord& a, const ReportRecord& b) {
              return std::tie(a.name, a.trial, a.dim, a.parameters) <
                     std::tie(b.name, b.trial, b.dim, b.parameters);
            });
  report.aggregate.per_inequality.clear();
  report.aggregate.violations = 0;
  double global_min = std::numeric_limits<double>::infinity();
  for (const auto& rec : report.records) {
    InequalityStats& st = report.aggregate.per_inequality[rec.name];
    if (st.count == 0) {
      st.min_gap = std::numeric_limits<double>::infinity();
      st.max_gap = -std::numeric_limits<double>::infinity();
    }
    ++st.count;
    if (rec.status == "violated") {
      ++st.violations;
      ++report.aggregate.violations;
    }
    if (std::isfinite(rec.gap)) {
      st.min_gap = std::min(st.min_gap, rec.gap);
      st.max_gap = std::max(st.max_gap, rec.gap);
      st.mean_gap += rec.gap;
      global_min = std::min(global_min, rec.gap);
    } else {
      ++st.infinite_gaps;
    }
  }
  for (auto& [name, st] : report.aggregate.per_inequality) {
    const long finite = st.count - st.infinite_gaps;
    st.mean_gap = finite > 0 ? st.mean_gap / static_cast<double>(finite) : 0.0;
    if (finite == 0) {
      st.min_gap = 0.0;
      st.max_gap = 0.0;
    }
  }
  for (const auto& rec : report.records) {
    if (!std::isfinite(rec.gap)) continue;
    InequalityStats& st = report.aggregate.per_inequality[rec.name];
    int bin = 0;
    if (st.max_gap > st.min_gap) {
      bin = static_cast<int>((rec.gap - st.min_gap) /
                             (st.max_gap - st.min_gap) * 10.0);
      bin = std::clamp(bin, 0, 9);
    }
    ++st.histogram[static_cast<size_t>(bin)];
  }
  report.aggregate.min_gap = std::isfinite(global_min) ? global_min : 0.0;
}

std::string to_json(const Report& report) {
  const RunConfig& c = report.config;
  std::string j = "{\n";
  j += "  \"schema_version\": \"" + json_escape(report.schema_version) +
       "\",\n";
  j += "  \"config\": {\n";
  j += "    \"command\": \"" + json_escape(c.command) + "\",\n";
  j += "    \"dims\": " + json_array(c.dims, [](int d) {
         return std::to_string(d);
       }) + ",\n";
  j += "    \"trials\": " + std::to_string(c.trials) + ",\n";
  j += "    \"seed\": " + std::to_string(c.seed) + ",\n";
  j += "    \"p\": " + json_array(c.p_list, json_number) + ",\n";
  j += "    \"alpha\": " + json_array(c.alpha_list, json_number) + ",\n";
  j += "    \"epsilon\": " + json_array(c.epsilon_list, json_number) + ",\n";
  j += "    \"tol\": " + json_number(c.tolerance) + ",\n";
  j += "    \"format\": \"" + json_escape(c.format) + "\",\n";
  j += "    \"out\": \"" + json_escape(c.out) + "\",\n";
  j += "    \"ensemble\": \"" + json_escape(c.ensemble) + "\",\n";
  j += "    \"inequalities\": " + json_array(c.inequalities, [](const std::string& s) {
         return "\"" + json_escape(s) + "\"";
       }) + ",\n";
  j += "    \"rank\": " + std::to_string(c.rank) + ",\n";
  j += "    \"step_size\": " + json_number(c.step_size) + ",\n";
  j += "    \"gradient_tolerance\": " + json_number(c.gradient_tolerance) +
       ",\n";
  j += "    \"slope_band\": " + json_number(c.slope_band) + ",\n";
  j += "    \"k0\": " + json_number(c.k0) + ",\n";
  j += "    \"steps\": " + std::to_string(c.steps) + ",\n";
  j += "    \"k_max\": " + std::to_string(c.k_max) + "\n";
  j += "  },\n";
  j += "  \"records\": [\n";
  for (size_t i = 0; i < report.records.size(); ++i) {
    const ReportRecord& r = report.records[i];
    j += "    {\"name\": \"" + json_escape(r.name) + "\", \"parameters\": \"" +
         json_escape(r.parameters) + "\", \"lhs\": " + json_number(r.lhs) +
         ", \"rhs\": " + json_number(r.rhs) + ", \"gap\": " +
         json_number(r.gap) + ", \"status\": \"" + json_escape(r.status) +
         "\"}";
    if (i + 1 < report.records.size()) j += ",";
    j += "\n";
  }
  j += "  ],\n";
  j += "  \"aggregate\": {\n";
  j += "    \"min_gap\": " + json_number(report.aggregate.min_gap) + ",\n";
  j += "    \"violations\": " + std::to_string(report.aggregate.violations) +
       ",\n";
  j += "    \"per_inequality\": {";
  bool first = true;
  for (const auto& [name, st] : report.aggregate.per_inequality) {
    if (!first) j += ",";
    first = false;
    j += "\n      \"" + json_escape(name) + "\": {\"count\": " +
         std::to_string(st.count) + ", \"violations\": " +
         std::to_string(st.violations) + ", \"infinite_gaps\": " +
         std::to_string(st.infinite_gaps) + ", \"min_gap\": " +
         json_number(st.min_gap) + ", \"max_gap\": " + json_number(st.max_gap) +
         ", \"mean_gap\": " + json_number(st.mean_gap) + ", \"histogram\": [";
    for (size_t b = 0; b < st.histogram.size(); ++b) {
      if (b) j += ", ";
      j += std::to_string(st.histogram[b]);
    }
    j += "]}";
  }
  if (!report.aggregate.per_inequality.empty()) j += "\n    ";
  j += "},\n";
  j += "    \"wall_time_seconds\": " +
       json_number(report.aggregate.wall_time_seconds) + "\n";
  j += "  }\n";
  j += "}\n";
  return j;
}

std::string to_csv(const Report& report) {
  std::string out = "name,parameters,lhs,rhs,gap,status\n";
  for (const auto& r : report.records) {
    out += csv_field(r.name);
    out += ",";
    out += csv_field(r.parameters);
    out += ",";
    out += format_double(r.lhs);
    out += ",";
    out += format_double(r.rhs);
    out += ",";
    out += format_double(r.gap);
    out += ",";
    out += csv_field(r.status);
    out += "\n";
  }
  return out;
}

// ---- command runners ----

namespace {

constexpr uint64_t kLaneGradientA = 30;
constexpr uint64_t kLaneGradientB = 31;

void push(Report& rep, int dim, int trial, InequalityCertificate cert) {
  rep.records.push_back(to_record(TrialCertificate{dim, trial, std::move(cert)}));
}

std::pair<DensityMatrix, DensityMatrix> density_pair(const EnsembleConfig& ec,
                                                     int trial) {
  SamplePair sample = random_sample(ec, trial);
  if (ec.kind == EnsembleKind::GinibreGeneral) {
    auto densify = [](const Matrix& g) {
      Matrix w = g * g.adjoint();
      return DensityMatrix(w / w.trace().real());
    };
    return {densify(sample.first), densify(sample.second)};
  }
  return {DensityMatrix(sample.first), DensityMatrix(sample.second)};
}

void run_certify(const RunConfig& cfg, Report& rep) {
  const std::vector<std::string> names =
      cfg.inequalities.empty() ? known_inequalities() : cfg.inequalities;
  SuiteParams sp;
  sp.p_list = cfg.p_list;
  sp.alpha_list = cfg.alpha_list;
  sp.tolerance = cfg.tolerance;
  for (int dim : cfg.dims) {
    EnsembleConfig ec;
    ec.dim = dim;
    ec.kind = parse_ensemble_kind(cfg.ensemble);
    ec.trials = cfg.trials;
    ec.seed = cfg.seed;
    ec.rank = cfg.rank;
    if (!cfg.epsilon_list.empty()) ec.epsilon = cfg.epsilon_list.front();
    EnsembleReport er = ensemble_suite(ec, names, sp);
    for (const auto& tc : er.records) rep.records.push_back(to_record(tc));
  }
}

void run_sweep(const RunConfig& cfg, Report& rep) {
  const std::vector<double> grid =
      cfg.epsilon_list.empty() ? log_spaced(1e-5, 1e-2, 13) : cfg.epsilon_list;
  const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
  int idx = 0;
  for (double alpha : cfg.alpha_list) {
    SlopeFit fit = epsilon_sweep_slope(alpha, grid);
    const double expected = -(1.0 - alpha);
    InequalityCertificate cert =
        make_certificate("epsilon_sweep_slope", std::abs(fit.exponent - expected),
                         cfg.slope_band, cfg.tolerance);
    cert.metadata["alpha"] = alpha;
    cert.metadata["fitted_exponent"] = fit.exponent;
    cert.metadata["expected_exponent"] = expected;
    cert.metadata["eps_min"] = *lo;
    cert.metadata["eps_max"] = *hi;
    cert.metadata["grid_points"] = static_cast<double>(grid.size());
    cert.metadata["max_residual"] = fit.max_residual;
    push(rep, 3, idx, std::move(cert));
    ++idx;
  }
}

void run_example(const RunConfig& cfg, Report& rep) {
  const std::vector<double> eps_list =
      cfg.epsilon_list.empty() ? std::vector<double>{1e-4} : cfg.epsilon_list;
  int idx = 0;
  for (double eps : eps_list) {
    for (double alpha : cfg.alpha_list) {
      RatioReport rr = example_ratio(eps, alpha);
      InequalityCertificate cert = make_certificate(
          "example_ratio", std::abs(rr.measured / rr.predicted_leading - 1.0),
          0.05, cfg.tolerance);
      cert.metadata["epsilon"] = eps;
      cert.metadata["alpha"] = alpha;
      cert.metadata["measured"] = rr.measured;
      cert.metadata["predicted_leading"] = rr.predicted_leading;
      cert.metadata["numerator"] = rr.numerator;
      cert.metadata["trace_distance"] = rr.trace_distance;
      push(rep, 3, idx, std::move(cert));
    }
    auto [rho, sigma] = symmetric_qubit_pair(eps);
    AlphaLimitReport al = alpha_limit_check(rho, sigma, cfg.k_max);
    InequalityCertificate cert =
        make_certificate("alpha_limit", al.final_deviation,
                         1e-4 * (1.0 + al.von_neumann), cfg.tolerance);
    cert.metadata["epsilon"] = eps;
    cert.metadata["k_max"] = static_cast<double>(cfg.k_max);
    cert.metadata["von_neumann"] = al.von_neumann;
    cert.metadata["renyi_final"] = al.renyi.back();
    push(rep, 2, idx, std::move(cert));
    ++idx;
  }
}

void run_gradient_check(const RunConfig& cfg, Report& rep) {
  for (int dim : cfg.dims) {
    for (int trial = 0; trial < cfg.trials; ++trial) {
      StreamRng rng_a(stream_key(cfg.seed, static_cast<uint64_t>(trial),
                                 kLaneGradientA));
      StreamRng rng_b(stream_key(cfg.seed, static_cast<uint64_t>(trial),
                                 kLaneGradientB));
      const Matrix a = ginibre(dim, rng_a);
      const Matrix b = ginibre(dim, rng_b);
      for (double p : cfg.p_list) {
        if (!(p > 1.0) || std::isinf(p)) continue;
        GradientSlopeReport g = gradient_fd_check(a, b, p, cfg.step_size);
        const double rel = std::abs(g.fd_slope_refined - g.analytic_slope) /
                           std::max(1.0, std::abs(g.analytic_slope));
        InequalityCertificate cert = make_certificate(
            "gradient_check", rel, cfg.gradient_tolerance, cfg.tolerance);
        cert.metadata["p"] = p;
        cert.metadata["step"] = cfg.step_size;
        cert.metadata["fd_slope"] = g.fd_slope;
        cert.metadata["fd_slope_refined"] = g.fd_slope_refined;
        cert.metadata["analytic_slope"] = g.analytic_slope;
        push(rep, dim, trial, std::move(cert));
      }
    }
  }
}

void run_pinsker_constant(const RunConfig& cfg, Report& rep) {
  const std::vector<double> grid = default_extraction_grid();
  for (int dim : cfg.dims) {
    EnsembleConfig ec;
    ec.dim = dim;
    ec.kind = parse_ensemble_kind(cfg.ensemble);
    ec.trials = cfg.trials;
    ec.seed = cfg.seed;
    ec.rank = cfg.rank;
    for (int trial = 0; trial < cfg.trials; ++trial) {
      auto [rho, sigma] = density_pair(ec, trial);
      ConstantExtraction ce = pinsker_constant_extraction(rho, sigma, grid);
      InequalityCertificate cert = make_certificate(
          "pinsker_constant_extrapolated", 0.499, ce.extrapolated_k,
          cfg.tolerance);
      cert.metadata["k_first"] = ce.k_values.front();
      cert.metadata["k_last"] = ce.k_values.back();
      push(rep, dim, trial, std::move(cert));
      const double k_min =
          *std::min_element(ce.k_values.begin(), ce.k_values.end());
      InequalityCertificate pointwise = make_certificate(
          "pinsker_constant_pointwise", 0.25 - 1e-6, k_min, cfg.tolerance);
      pointwise.metadata["k_min"] = k_min;
      push(rep, dim, trial, std::move(pointwise));
    }
  }
  const std::vector<double> eps_list =
      cfg.epsilon_list.empty() ? std::vector<double>{0.05, 0.1, 0.2}
                               : cfg.epsilon_list;
  int idx = 0;
  for (double eps : eps_list) {
    auto [rho, sigma] = symmetric_qubit_pair(eps);
    ConstantExtraction ce = pinsker_constant_extraction(rho, sigma, grid);
    InequalityCertificate cert = make_certificate(
        "pinsker_constant_commuting", 0.499, ce.extrapolated_k, cfg.tolerance);
    cert.metadata["epsilon"] = eps;
    const double td = trace_distance(rho, sigma);
    cert.metadata["limit_functional"] =
        von_neumann_relative_entropy(rho, sigma) / (td * td);
    push(rep, 2, idx, std::move(cert));
    ++idx;
  }
}

void run_iterate_constant(const RunConfig& cfg, Report& rep) {
  const std::vector<double> values = constant_iteration(cfg.k0, cfg.steps);
  for (size_t i = 0; i < values.size(); ++i) {
    const double expected =
        std::abs(cfg.k0 - 0.5) * std::pow(2.0, -static_cast<double>(i));
    InequalityCertificate cert =
        make_certificate("constant_iteration", std::abs(values[i] - 0.5),
                         expected + 1e-12, cfg.tolerance);
    cert.metadata["k"] = values[i];
    push(rep, 0, static_cast<int>(i), std::move(cert));
  }
}

}  // namespace

Report run_command(const RunConfig& config) {
  Report rep;
  rep.config = config;
  const auto start = std::chrono::steady_clock::now();
  if (config.command == "certify") {
    run_certify(config, rep);
  } else if (config.command == "sweep") {
    run_sweep(config, rep);
  } else if (config.command == "example") {
    run_example(config, rep);
  } else if (config.command == "gradient-check") {
    run_gradient_check(config, rep);
  } else if (config.command == "pinsker-constant") {
    run_pinsker_constant(config, rep);
  } else if (config.command == "iterate-constant") {
    run_iterate_constant(config, rep);
  } else {
    throw std::invalid_argument("run_command: unknown command \"" +
                                config.command + "\"");
  }
  finalize_report(rep);
  rep.aggregate.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return rep;
}

}  // namespace cpcert
