// convexity.hpp -- inequality certificates for uniform convexity of the
// Schatten classes and the two sharpened Holder bounds built on it, plus the
// scaling scans that confirm the remainder exponents are attained.
#pragma once

#include "cpcert/fitting.hpp"
#include "cpcert/matcore.hpp"
#include "cpcert/schatten.hpp"

#include <map>
#include <string>

namespace cpcert {

enum class CertStatus { Holds, ViolatedWithinTolerance, Violated };

const char* to_string(CertStatus status);

// One evaluated inequality instance. gap = rhs - lhs, and status derives from
// gap alone: Holds if gap >= -tolerance, Violated if gap < -10 * tolerance,
// ViolatedWithinTolerance in between.
struct InequalityCertificate {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double tolerance = 0.0;
  CertStatus status = CertStatus::Holds;
  std::map<std::string, double> metadata;
};

InequalityCertificate make_certificate(std::string name, double lhs, double rhs,
                                       double tolerance,
                                       std::map<std::string, double> metadata = {});

// Base certification tolerance, widened with dimension past 10.
double certificate_tolerance(Eigen::Index dim, double base = 1e-9);

// Re-stamps an existing certificate with a different tolerance, recomputing
// its status from the stored gap.
InequalityCertificate with_tolerance(InequalityCertificate cert,
                                     double tolerance);

// Smallest theta in [0, 2pi) with e^{i theta} Tr[AB] real and >= 0; returns 0
// when the trace vanishes.
double phase_align(const Matrix& a, const Matrix& b);

// ||(X+Y)/2||_p <= 1 - c_p ||(X-Y)/2||_p^e for unit X, Y: the 2-uniform form
// c = (p-1)/2, e = 2 on 1 < p <= 2 and c = 1/p, e = p for p >= 2.
InequalityCertificate uniform_convexity_gap(const Matrix& x, const Matrix& y,
                                            double p);

// For unit A in C_p, B in C_p' with 1 < p <= 2 and theta = phase_align(A, B):
//   |Tr[AB]| <= 1 - ((p-1)/4) || D_p'(B) - e^{i theta} A ||_p^2
InequalityCertificate holder_remainder_1(const Matrix& a, const Matrix& b,
                                         double p);
//   |Tr[AB]| <= 1 - (1/(p' 2^{p'-1})) || e^{i theta} B - D_p(A) ||_p'^p'
InequalityCertificate holder_remainder_2(const Matrix& a, const Matrix& b,
                                         double p);

// Diagonal commuting family scanned near the saturation point of each bound;
// the fitted exponent of gap vs distance is ~2 for the quadratic remainder
// and ~p' for the conjugate-power remainder.
enum class SharpnessFamily { QuadraticRemainder, ConjugatePowerRemainder };

SlopeFit sharpness_scan(double p, SharpnessFamily family,
                        const std::vector<double>& scale_grid);

}  // namespace cpcert
