#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fklab/configuration.hpp"
#include "fklab/lattice.hpp"

namespace fklab {

/// Edge weight p in [0,1] and cluster weight q >= 1.
struct Params {
  double p = 0.5;
  double q = 1.0;

  /// Throws std::invalid_argument outside the admissible range.
  void validate() const;
};

using Event = std::function<bool(const Configuration&)>;
using Observable = std::function<double(const Configuration&)>;

enum class Execution { Serial, Parallel };

struct ExactOptions {
  std::size_t edge_cap = 24;
  /// Serial is the reference; Parallel splits the configuration space into a
  /// fixed number of chunks merged in index order, so its result does not
  /// depend on the thread count.
  Execution execution = Execution::Parallel;
};

/// Unnormalized weight p^o (1-p)^c q^k of one configuration.
double configuration_weight(const Lattice& lattice, const BoundaryCondition& bc, const Params& params,
                            const Configuration& config);

struct Expectations {
  double Z = 0.0;
  std::vector<double> values;
};

/// Z and the expectations of every observable under the random-cluster
/// measure, by summation over all 2^|E| configurations.
/// Throws resource_limit when |E| exceeds the cap.
Expectations expectations(const Lattice& lattice, const BoundaryCondition& bc, const Params& params,
                          std::span<const Observable> observables, const ExactOptions& options = {});

struct ExactResult {
  double Z = 0.0;
  std::vector<double> probabilities;
  std::vector<double> edge_marginals;
};

ExactResult enumerate(const Lattice& lattice, const BoundaryCondition& bc, const Params& params,
                      std::span<const Event> events, const ExactOptions& options = {});

double partition_function(const Lattice& lattice, const BoundaryCondition& bc, const Params& params,
                          const ExactOptions& options = {});

double event_probability(const Lattice& lattice, const BoundaryCondition& bc, const Params& params,
                         const Event& event, const ExactOptions& options = {});

/// phi(A | J_e = 1) - phi(A | J_e = 0). Throws degenerate_conditioning when
/// phi(J_e) is exactly 0 or 1.
double edge_influence(const Lattice& lattice, const BoundaryCondition& bc, const Params& params,
                      const Event& event, EdgeId e, const ExactOptions& options = {});

/// Sum over edges of phi(1_A J_e) - phi(J_e) phi(A), divided by p(1-p).
/// Throws std::invalid_argument unless 0 < p < 1.
double russo_derivative(const Lattice& lattice, const BoundaryCondition& bc, const Params& params,
                        const Event& event, const ExactOptions& options = {});

/// Exhaustive flip test: opening any edge never destroys the event.
bool is_increasing(const Lattice& lattice, const Event& event, const ExactOptions& options = {});

struct FkgReport {
  double phi_a = 0.0;
  double phi_b = 0.0;
  double phi_ab = 0.0;
  double margin = 0.0;  // phi_ab - phi_a * phi_b
  bool holds = false;
};

/// Throws std::invalid_argument if A or B is not increasing.
FkgReport check_fkg(const Lattice& lattice, const BoundaryCondition& bc, const Params& params, const Event& a,
                    const Event& b, const ExactOptions& options = {});

struct ComparisonReport {
  double phi_low = 0.0;
  double phi_high = 0.0;
  double margin = 0.0;  // phi_high - phi_low
  bool holds = false;
};

/// True when every wired class of `finer` lies inside a class of `coarser`.
bool refines(const Lattice& lattice, const BoundaryCondition& finer, const BoundaryCondition& coarser);

/// Throws std::invalid_argument if bc_low does not refine bc_high or A is
/// not increasing.
ComparisonReport check_bc_comparison(const Lattice& lattice, const Params& params, const Event& a,
                                     const BoundaryCondition& bc_low, const BoundaryCondition& bc_high,
                                     const ExactOptions& options = {});

/// {"lattice", "bc", "p", "q", "event", "probability", "Z"}.
std::string exact_json(const Lattice& lattice, const BoundaryCondition& bc, const Params& params,
                       const std::string& event_name, double probability, double Z);

}  // namespace fklab
