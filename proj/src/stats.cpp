#include "fklab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fklab {

double integrated_autocorrelation_time(std::span<const double> series, double c) {
  const std::size_t n = series.size();
  if (n < 2) return 0.5;
  double mean = 0.0;
  for (double x : series) mean += x;
  mean /= static_cast<double>(n);
  double c0 = 0.0;
  for (double x : series) c0 += (x - mean) * (x - mean);
  c0 /= static_cast<double>(n);
  if (c0 <= 0.0) return 0.5;
  double tau = 0.5;
  for (std::size_t t = 1; t < n / 2; ++t) {
    double ct = 0.0;
    for (std::size_t i = 0; i + t < n; ++i) ct += (series[i] - mean) * (series[i + t] - mean);
    ct /= static_cast<double>(n);
    tau += ct / c0;
    if (static_cast<double>(t) >= c * tau) break;
  }
  return std::max(tau, 0.5);
}

SeriesSummary batched_means(std::span<const double> series, std::size_t batches) {
  if (series.empty()) throw std::invalid_argument("empty series");
  SeriesSummary s;
  const std::size_t n = series.size();
  double sum = 0.0;
  for (double x : series) sum += x;
  s.mean = sum / static_cast<double>(n);
  s.tau_int = integrated_autocorrelation_time(series);
  s.batches = std::min(batches, n / 2);
  if (s.batches < 2) {
    s.converged = false;
    s.note = "too few samples for batched means";
    return s;
  }
  const std::size_t len = n / s.batches;
  std::vector<double> means(s.batches);
  for (std::size_t b = 0; b < s.batches; ++b) {
    double acc = 0.0;
    for (std::size_t i = b * len; i < (b + 1) * len; ++i) acc += series[i];
    means[b] = acc / static_cast<double>(len);
  }
  double mb = 0.0;
  for (double m : means) mb += m;
  mb /= static_cast<double>(s.batches);
  double var = 0.0;
  for (double m : means) var += (m - mb) * (m - mb);
  var /= static_cast<double>(s.batches - 1);
  s.std_error = std::sqrt(var / static_cast<double>(s.batches));
  if (static_cast<double>(len) < 10.0 * s.tau_int) {
    s.converged = false;
    s.note = "batch length below 10 tau_int";
  }
  return s;
}

LinearFit weighted_linear_fit(std::span<const double> x, std::span<const double> y, std::span<const double> sigma) {
  if (x.size() != y.size() || x.size() != sigma.size()) throw std::invalid_argument("fit inputs differ in length");
  if (x.size() < 2) throw std::invalid_argument("fit needs at least two points");
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(sigma[i] > 0.0)) throw std::invalid_argument("fit errors must be positive");
    const double w = 1.0 / (sigma[i] * sigma[i]);
    sw += w;
    sx += w * x[i];
    sy += w * y[i];
    sxx += w * x[i] * x[i];
    sxy += w * x[i] * y[i];
  }
  const double det = sw * sxx - sx * sx;
  if (det <= 0.0) throw std::invalid_argument("degenerate fit abscissae");
  LinearFit f;
  f.slope = (sw * sxy - sx * sy) / det;
  f.intercept = (sxx * sy - sx * sxy) / det;
  f.slope_error = std::sqrt(sw / det);
  f.intercept_error = std::sqrt(sxx / det);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = (y[i] - f.intercept - f.slope * x[i]) / sigma[i];
    f.chi2 += r * r;
  }
  f.dof = x.size() - 2;
  return f;
}

}  // namespace fklab
