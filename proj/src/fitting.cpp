#include "cpcert/fitting.hpp"

#include <cmath>
#include <stdexcept>

namespace cpcert {

SlopeFit fit_line(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("fit_line: length mismatch");
  }
  const std::size_t n = xs.size();
  if (n < 2) {
    throw std::invalid_argument("fit_line: need at least two points");
  }
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, spread = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mean_x;
    sxx += dx * dx;
    sxy += dx * (ys[i] - mean_y);
    spread = std::max(spread, std::abs(dx));
  }
  if (spread <= 1e-14 * std::max(1.0, std::abs(mean_x))) {
    throw std::invalid_argument("fit_line: degenerate fit, regressor is constant");
  }
  SlopeFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = mean_y - fit.exponent * mean_x;
  fit.max_residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    fit.max_residual = std::max(
        fit.max_residual, std::abs(ys[i] - (fit.intercept + fit.exponent * xs[i])));
  }
  fit.xs = std::move(xs);
  fit.ys = std::move(ys);
  return fit;
}

SlopeFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("fit_loglog: length mismatch");
  }
  std::vector<double> lx(xs.size()), ly(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw std::domain_error("fit_loglog: data must be strictly positive");
    }
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  return fit_line(std::move(lx), std::move(ly));
}

double extrapolate_to_zero(const std::vector<double>& hs,
                           const std::vector<double>& ks) {
  if (hs.size() != ks.size() || hs.size() < 2) {
    throw std::invalid_argument("extrapolate_to_zero: need two or more samples");
  }
  const std::size_t n = hs.size();
  const double h1 = hs[n - 2], h2 = hs[n - 1];
  if (h1 == h2) {
    throw std::invalid_argument("extrapolate_to_zero: repeated step size");
  }
  return ks[n - 1] + (ks[n - 1] - ks[n - 2]) * h2 / (h1 - h2);
}

}  // namespace cpcert
