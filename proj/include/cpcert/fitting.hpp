// fitting.hpp -- least-squares slope extraction on log-log data and the
// step-halving Richardson extrapolation used for constant extraction.
#pragma once

#include <vector>

namespace cpcert {

struct SlopeFit {
  std::vector<double> xs;  // log-transformed regressor
  std::vector<double> ys;  // log-transformed response
  double exponent = 0.0;   // fitted slope
  double intercept = 0.0;
  double max_residual = 0.0;
};

// Ordinary least squares on already-transformed data. Throws on fewer than
// two points or a (numerically) constant regressor.
SlopeFit fit_line(std::vector<double> xs, std::vector<double> ys);

// Convenience: fits log(y) against log(x); every input must be positive.
SlopeFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys);

// Linear-in-h extrapolation to h = 0 from the last two samples of k(h).
// Exact whenever k(h) = k* + c h.
double extrapolate_to_zero(const std::vector<double>& hs,
                           const std::vector<double>& ks);

}  // namespace cpcert
