#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fklab/configuration.hpp"
#include "fklab/exact.hpp"
#include "fklab/lattice.hpp"
#include "fklab/rng.hpp"

namespace fklab {

enum class Schedule {
  HeatBath,  // one systematic sweep of single-edge heat-bath updates
  Cluster,   // one Chayes-Machta cluster move
  Mixed,     // a heat-bath sweep followed by a cluster move
};

Schedule parse_schedule(std::string_view name);
std::string_view schedule_name(Schedule s);

/// One Markov chain targeting the random-cluster measure. Strictly
/// sequential; run several with distinct seeds for parallelism.
class Chain {
 public:
  Chain(const Lattice& lattice, BoundaryCondition bc, Params params, std::uint64_t seed);

  const Lattice& lattice() const noexcept { return *lattice_; }
  const Configuration& config() const noexcept { return config_; }
  void set_config(const Configuration& config);
  const Params& params() const noexcept { return params_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t sweeps() const noexcept { return sweeps_; }
  Rng& rng() noexcept { return rng_; }

  /// Are the endpoints of e joined in (omega minus e) union xi?
  bool endpoints_connected_off(EdgeId e);

  /// Resample edge e from its conditional law given the rest, using u in
  /// [0,1).
  void heatbath_update(EdgeId e, double u);
  void heatbath_sweep();

  /// Each cluster of omega union xi is activated with probability 1/q; the
  /// edges joining two active vertices are then resampled independently.
  void cluster_update();

  void step(Schedule schedule);

 private:
  const Lattice* lattice_;
  BoundaryCondition bc_;
  std::vector<std::vector<VertexId>> classes_;
  std::vector<std::int32_t> class_of_;
  Params params_;
  std::uint64_t seed_;
  Rng rng_;
  Configuration config_;
  std::uint64_t sweeps_ = 0;
  double p_connected_ = 0.0;
  double p_separated_ = 0.0;

  ClusterCounter counter_;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint32_t> class_stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<VertexId> stack_;
  std::vector<std::uint8_t> active_root_;
};

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  double tau_int = 0.5;  // in units of recorded samples
  std::uint64_t seed = 0;
  bool converged = true;
  std::string note;

  double effective_samples() const { return static_cast<double>(n_samples) / (2.0 * tau_int); }
};

/// Sample-count weighted combination (associative and commutative).
MCEstimate merge(std::span<const MCEstimate> parts);

enum class Start { Empty, Full };

struct SamplerOptions {
  Schedule schedule = Schedule::Cluster;
  /// Steps per chain, burn-in included.
  std::uint64_t sweeps = 10000;
  /// Explicit burn-in; when absent it is max(1000, 10 tau_int) from a pilot
  /// run, capped at half the steps.
  std::optional<std::uint64_t> burn_in;
  /// Record every `thin`-th step.
  std::uint64_t thin = 1;
  /// Chains are independent streams derived from the seed. The count is
  /// part of the result's identity; the thread count is not.
  std::size_t chains = 8;
  std::uint64_t seed = 1;
  Start start = Start::Empty;
  /// Wall-time cap per chain in seconds (0 disables). A capped run is
  /// flagged as not converged.
  double max_seconds = 0.0;
  std::size_t batches = 32;
};

/// Runs the chains and estimates every observable from the same samples.
std::vector<MCEstimate> estimate_many(const Lattice& lattice, const BoundaryCondition& bc, const Params& params,
                                      std::span<const Observable> observables, const SamplerOptions& options);

MCEstimate estimate(const Lattice& lattice, const BoundaryCondition& bc, const Params& params,
                    const Observable& observable, const SamplerOptions& options);

inline Observable indicator(Event event) {
  return [ev = std::move(event)](const Configuration& c) { return ev(c) ? 1.0 : 0.0; };
}

/// Edwards-Sokal colouring: every cluster of omega union xi gets one
/// uniform colour in {1..q}. Throws std::invalid_argument unless q is an
/// integer >= 2.
std::vector<int> potts_from_fk(const Lattice& lattice, const Configuration& config, const BoundaryCondition& bc,
                               double q, Rng& rng);

}  // namespace fklab
