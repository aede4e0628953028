#include "cpcert/convexity.hpp"

#include <cmath>
#include <limits>

namespace cpcert {

namespace {

constexpr double kUnitTolerance = 1e-9;

void require_unit(const Matrix& m, double p, const char* fn) {
  const double norm = schatten_norm(m, p);
  if (std::abs(norm - 1.0) > kUnitTolerance) {
    throw std::invalid_argument(std::string(fn) +
                                ": input must be normalized to unit norm, got " +
                                std::to_string(norm));
  }
}

void require_open_one_two(double p, const char* fn) {
  if (std::isnan(p) || p <= 1.0 || p > 2.0) {
    throw std::invalid_argument(std::string(fn) + ": exponent must lie in (1, 2]");
  }
}

}  // namespace

const char* to_string(CertStatus status) {
  switch (status) {
    case CertStatus::Holds:
      return "holds";
    case CertStatus::ViolatedWithinTolerance:
      return "violated_within_tolerance";
    case CertStatus::Violated:
      return "violated";
  }
  return "unknown";
}

InequalityCertificate make_certificate(std::string name, double lhs, double rhs,
                                       double tolerance,
                                       std::map<std::string, double> metadata) {
  InequalityCertificate cert;
  cert.name = std::move(name);
  cert.lhs = lhs;
  cert.rhs = rhs;
  // inf - inf means both sides diverge together; call the gap zero.
  if (std::isinf(lhs) && std::isinf(rhs) && lhs == rhs) {
    cert.gap = 0.0;
  } else {
    cert.gap = rhs - lhs;
  }
  cert.tolerance = tolerance;
  if (cert.gap >= -tolerance) {
    cert.status = CertStatus::Holds;
  } else if (cert.gap < -10.0 * tolerance) {
    cert.status = CertStatus::Violated;
  } else {
    cert.status = CertStatus::ViolatedWithinTolerance;
  }
  cert.metadata = std::move(metadata);
  return cert;
}

double certificate_tolerance(Eigen::Index dim, double base) {
  // dim * 1e-10 at the default base; large dimensions accumulate rounding.
  return dim > 10 ? static_cast<double>(dim) * 0.1 * base : base;
}

InequalityCertificate with_tolerance(InequalityCertificate cert,
                                     double tolerance) {
  cert.tolerance = tolerance;
  if (cert.gap >= -tolerance) {
    cert.status = CertStatus::Holds;
  } else if (cert.gap < -10.0 * tolerance) {
    cert.status = CertStatus::Violated;
  } else {
    cert.status = CertStatus::ViolatedWithinTolerance;
  }
  return cert;
}

double phase_align(const Matrix& a, const Matrix& b) {
  const Complex tr = trace_inner(a, b);
  if (std::abs(tr) == 0.0) return 0.0;
  double theta = -std::arg(tr);
  if (theta < 0.0) theta += 2.0 * M_PI;
  if (theta >= 2.0 * M_PI) theta = 0.0;
  return theta;
}

InequalityCertificate uniform_convexity_gap(const Matrix& x, const Matrix& y,
                                            double p) {
  if (std::isnan(p) || p <= 1.0 || std::isinf(p)) {
    throw std::invalid_argument("uniform_convexity_gap: exponent must lie in (1, infinity)");
  }
  require_unit(x, p, "uniform_convexity_gap");
  require_unit(y, p, "uniform_convexity_gap");
  const double mid = schatten_norm(Matrix(0.5 * (x + y)), p);
  const double half_diff = schatten_norm(Matrix(0.5 * (x - y)), p);
  double rhs;
  if (p <= 2.0) {
    rhs = 1.0 - 0.5 * (p - 1.0) * half_diff * half_diff;
  } else {
    rhs = 1.0 - std::pow(half_diff, p) / p;
  }
  return make_certificate("uniform_convexity", mid, rhs,
                          certificate_tolerance(x.rows()),
                          {{"p", p},
                           {"midpoint_norm", mid},
                           {"half_difference_norm", half_diff}});
}

InequalityCertificate holder_remainder_1(const Matrix& a, const Matrix& b,
                                         double p) {
  require_open_one_two(p, "holder_remainder_1");
  const double q = conjugate_exponent(p);
  require_unit(a, p, "holder_remainder_1");
  require_unit(b, q, "holder_remainder_1");
  const double theta = phase_align(a, b);
  const NormGradient grad = duality_map(b, q);
  const Complex phase = std::polar(1.0, theta);
  const double dist = schatten_norm(Matrix(grad.matrix - phase * a), p);
  const double lhs = std::abs(trace_inner(a, b));
  const double rhs = 1.0 - 0.25 * (p - 1.0) * dist * dist;
  return make_certificate("holder_remainder_1", lhs, rhs,
                          certificate_tolerance(a.rows()),
                          {{"p", p}, {"theta", theta}, {"gradient_distance", dist}});
}

InequalityCertificate holder_remainder_2(const Matrix& a, const Matrix& b,
                                         double p) {
  require_open_one_two(p, "holder_remainder_2");
  const double q = conjugate_exponent(p);
  require_unit(a, p, "holder_remainder_2");
  require_unit(b, q, "holder_remainder_2");
  const double theta = phase_align(a, b);
  const NormGradient grad = duality_map(a, p);
  const Complex phase = std::polar(1.0, theta);
  const double dist = schatten_norm(Matrix(phase * b - grad.matrix), q);
  const double lhs = std::abs(trace_inner(a, b));
  const double rhs = 1.0 - std::pow(dist, q) / (q * std::pow(2.0, q - 1.0));
  return make_certificate("holder_remainder_2", lhs, rhs,
                          certificate_tolerance(a.rows()),
                          {{"p", p}, {"theta", theta}, {"gradient_distance", dist}});
}

SlopeFit sharpness_scan(double p, SharpnessFamily family,
                        const std::vector<double>& scale_grid) {
  require_open_one_two(p, "sharpness_scan");
  if (scale_grid.size() < 2) {
    throw std::invalid_argument("sharpness_scan: need at least two scales");
  }
  const double q = conjugate_exponent(p);
  std::vector<double> distances, gaps;
  distances.reserve(scale_grid.size());
  gaps.reserve(scale_grid.size());
  Matrix d1 = Matrix::Zero(2, 2), d2 = Matrix::Zero(2, 2);
  d1(0, 0) = 1.0;
  d2(1, 1) = 1.0;
  for (double s : scale_grid) {
    if (!(s > 0.0)) {
      throw std::invalid_argument("sharpness_scan: scales must be positive");
    }
    double distance, gap;
    if (family == SharpnessFamily::QuadraticRemainder) {
      // Perturb A away from the norming point D_q(B) of a full-support B.
      Matrix b = std::pow(2.0, -1.0 / q) * (d1 + d2);
      Matrix grad = duality_map(b, q).matrix;
      Matrix a = grad + s * (d1 - d2);
      a /= schatten_norm(a, p);
      distance = schatten_norm(Matrix(grad - a), p);
      gap = 1.0 - std::abs(trace_inner(a, b));
    } else {
      // Perturb B off the support of a rank-one A; the p'-sphere is flat to
      // order p' there, which is what makes the conjugate exponent sharp.
      Matrix a = d1;
      Matrix grad = duality_map(a, p).matrix;
      Matrix b = grad + s * d2;
      b /= schatten_norm(b, q);
      distance = schatten_norm(Matrix(b - grad), q);
      gap = 1.0 - std::abs(trace_inner(a, b));
    }
    if (!(gap > 0.0) || !(distance > 0.0)) {
      throw std::domain_error("sharpness_scan: scale outside the resolvable regime");
    }
    distances.push_back(distance);
    gaps.push_back(gap);
  }
  return fit_loglog(distances, gaps);
}

}  // namespace cpcert
