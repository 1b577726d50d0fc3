#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace fklab {

/// Integrated autocorrelation time with Sokal's automatic window (the
/// window M is the first lag with M >= c * tau(M)). Returns 0.5 for an
/// uncorrelated or constant series.
double integrated_autocorrelation_time(std::span<const double> series, double c = 6.0);

struct SeriesSummary {
  double mean = 0.0;
  double std_error = 0.0;
  double tau_int = 0.5;
  std::size_t batches = 0;
  bool converged = true;
  std::string note;
};

/// Mean with a batched-means standard error. The summary is flagged when a
/// batch is shorter than 10 tau_int or there are too few samples.
SeriesSummary batched_means(std::span<const double> series, std::size_t batches = 32);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_error = 0.0;
  double intercept_error = 0.0;
  double chi2 = 0.0;
  std::size_t dof = 0;
};

/// Weighted least squares y = intercept + slope * x with weights 1/sigma^2.
LinearFit weighted_linear_fit(std::span<const double> x, std::span<const double> y, std::span<const double> sigma);

}  // namespace fklab
