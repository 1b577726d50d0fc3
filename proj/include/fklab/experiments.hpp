#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fklab/events.hpp"
#include "fklab/sampler.hpp"
#include "fklab/stats.hpp"

namespace fklab {

/// phi_{p_sd,q} on the m-torus of the horizontal crossing of [0,n)^2.
MCEstimate selfdual_crossing_experiment(double q, int n, int m, const SamplerOptions& options);

/// Exact counterpart by enumeration (needs a torus under the edge cap).
double selfdual_crossing_exact(double q, int n, int m, const ExactOptions& options = {});

struct RswReport {
  MCEstimate long_crossing;   // C_h([0, alpha n) x [0, n))
  double long_bound = 0.0;    // [32(1+q^2)]^(-floor(2 alpha))
  MCEstimate tall_crossing;   // C_v([0, n) x [0, 3n/2))
  double tall_bound = 0.0;    // 1 / (16 (1+q^2))
  bool long_holds = false;    // estimate - 3 se >= bound
  bool tall_holds = false;
};

double rsw_constant(double q, double alpha);
double box_crossing_bound(double q);

RswReport rsw_experiment(double q, double alpha, int n, int m, const SamplerOptions& options);

struct ScanResult {
  int n = 0;
  std::vector<double> p;
  std::vector<MCEstimate> estimates;
  std::optional<double> p_lo;  // estimate crosses eps
  std::optional<double> p_hi;  // estimate crosses 1 - eps
  std::optional<double> width;
  std::vector<double> monotonicity_violations;  // p values where the estimate drops beyond 3 sigma
};

/// Vertical crossing of [0,n) x [0,2n) on the 4n-torus.
Event scan_event(const Lattice& torus, int n);

/// Crossing scan over the grid; window with threshold eps by linear
/// interpolation. Every grid point uses its own derived seed.
ScanResult threshold_scan(double q, int n, const std::vector<double>& p_grid, const SamplerOptions& options,
                          double eps = 0.05);

struct FailureFit {
  std::vector<int> sizes;
  std::vector<MCEstimate> failure;  // 1 - phi(crossing)
  LinearFit fit;                    // log failure against log n
  bool decreasing = false;
};

FailureFit failure_scaling(double q, double p, const std::vector<int>& sizes, const SamplerOptions& options);

struct DualityCheck {
  MCEstimate primal;  // phi_p(C_v(R))
  MCEstimate dual;    // phi_{p*}(C_v*(R))
  double z = 0.0;
};

DualityCheck duality_crosscheck(double q, double p, int n, const SamplerOptions& options);

struct CircuitChainResult {
  std::vector<int> ns;
  std::vector<MCEstimate> per_n;
  MCEstimate intersection;
  int box_side = 0;
};

/// Annulus circuit events for n = 1..n_max on a wired square box of side
/// 2 floor(alpha^(n_max+2)) + 1 centred at its middle vertex.
CircuitChainResult circuit_chain_experiment(double q, double p, double alpha, int n_max,
                                            const SamplerOptions& options);

struct DecayFit {
  std::vector<int> distances;
  std::vector<MCEstimate> free_bc;
  std::vector<MCEstimate> wired_bc;
  std::vector<int> fitted;
  std::vector<int> dropped;
  LinearFit fit;
  double significance = 0.0;  // slope / slope_error
  int box_side = 0;
  bool valid = false;
};

/// Two-point function from the centre of a free box of side 4 max(d) + 1
/// along a lattice axis; weighted fit of the log-probability against the
/// distance. Distances whose estimate is within 2 sigma of 0 are dropped.
DecayFit decay_experiment(double q, double p, const std::vector<int>& distances, const SamplerOptions& options,
                          bool with_wired = true);

/// Options with a seed derived for sub-run `index`.
SamplerOptions derived_options(const SamplerOptions& options, std::uint64_t index);

}  // namespace fklab
