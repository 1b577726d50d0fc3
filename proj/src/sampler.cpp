#include "fklab/sampler.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "fklab/stats.hpp"

namespace fklab {

Schedule parse_schedule(std::string_view name) {
  if (name == "heatbath") return Schedule::HeatBath;
  if (name == "cluster") return Schedule::Cluster;
  if (name == "mixed") return Schedule::Mixed;
  throw std::invalid_argument("unknown schedule: " + std::string(name));
}

std::string_view schedule_name(Schedule s) {
  switch (s) {
    case Schedule::HeatBath: return "heatbath";
    case Schedule::Cluster: return "cluster";
    case Schedule::Mixed: return "mixed";
  }
  return "unknown";
}

Chain::Chain(const Lattice& lattice, BoundaryCondition bc, Params params, std::uint64_t seed)
    : lattice_(&lattice),
      bc_(std::move(bc)),
      params_(params),
      seed_(seed),
      rng_(seed),
      config_(lattice.edge_count()),
      counter_(lattice, bc_) {
  params_.validate();
  classes_ = bc_.resolve(lattice);
  class_of_.assign(lattice.vertex_count(), -1);
  for (std::size_t c = 0; c < classes_.size(); ++c)
    for (VertexId v : classes_[c]) class_of_[v] = static_cast<std::int32_t>(c);
  stamp_.assign(lattice.vertex_count(), 0);
  class_stamp_.assign(classes_.size(), 0);
  const double p = params_.p, q = params_.q;
  p_connected_ = p;
  p_separated_ = p / (p + (1.0 - p) * q);
}

void Chain::set_config(const Configuration& config) {
  if (config.size() != lattice_->edge_count()) throw std::invalid_argument("configuration does not match the lattice");
  config_ = config;
}

bool Chain::endpoints_connected_off(EdgeId e) {
  const Edge& ed = lattice_->edge(e);
  if (ed.a == ed.b) return true;
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    std::fill(class_stamp_.begin(), class_stamp_.end(), 0);
    epoch_ = 1;
  }
  const VertexId target = ed.b;
  stack_.clear();
  stamp_[ed.a] = epoch_;
  stack_.push_back(ed.a);
  while (!stack_.empty()) {
    const VertexId v = stack_.back();
    stack_.pop_back();
    if (const std::int32_t c = class_of_[v]; c >= 0 && class_stamp_[c] != epoch_) {
      class_stamp_[c] = epoch_;
      for (VertexId w : classes_[c]) {
        if (w == target) return true;
        if (stamp_[w] != epoch_) {
          stamp_[w] = epoch_;
          stack_.push_back(w);
        }
      }
    }
    for (const Incidence& inc : lattice_->incident(v)) {
      if (inc.edge == e || !config_.open(inc.edge)) continue;
      if (inc.other == target) return true;
      if (stamp_[inc.other] != epoch_) {
        stamp_[inc.other] = epoch_;
        stack_.push_back(inc.other);
      }
    }
  }
  return false;
}

void Chain::heatbath_update(EdgeId e, double u) {
  const double prob = endpoints_connected_off(e) ? p_connected_ : p_separated_;
  config_.set(e, u < prob);
}

void Chain::heatbath_sweep() {
  for (EdgeId e = 0; e < lattice_->edge_count(); ++e) heatbath_update(e, rng_.uniform());
}

void Chain::cluster_update() {
  const double p = params_.p;
  const std::size_t ne = lattice_->edge_count();
  if (params_.q == 1.0) {
    for (EdgeId e = 0; e < ne; ++e) config_.set(e, rng_.uniform() < p);
    return;
  }
  counter_.count(config_);
  UnionFind& uf = counter_.forest();
  active_root_.assign(uf.size(), 0);  // 0 undecided, 1 active, 2 inactive
  const double activate = 1.0 / params_.q;
  for (VertexId v = 0; v < lattice_->vertex_count(); ++v) {
    const auto r = uf.find(v);
    if (active_root_[r] == 0) active_root_[r] = rng_.uniform() < activate ? 1 : 2;
  }
  const auto edges = lattice_->edges();
  for (EdgeId e = 0; e < ne; ++e)
    if (active_root_[uf.find(edges[e].a)] == 1 && active_root_[uf.find(edges[e].b)] == 1)
      config_.set(e, rng_.uniform() < p);
}

void Chain::step(Schedule schedule) {
  switch (schedule) {
    case Schedule::HeatBath: heatbath_sweep(); break;
    case Schedule::Cluster: cluster_update(); break;
    case Schedule::Mixed:
      heatbath_sweep();
      cluster_update();
      break;
  }
  ++sweeps_;
}

MCEstimate merge(std::span<const MCEstimate> parts) {
  if (parts.empty()) throw std::invalid_argument("nothing to merge");
  MCEstimate out;
  out.seed = parts.front().seed;
  double n = 0.0, mean = 0.0, var = 0.0, tau = 0.0;
  for (const MCEstimate& e : parts) {
    const double ni = static_cast<double>(e.n_samples);
    n += ni;
    mean += ni * e.mean;
    var += ni * ni * e.std_error * e.std_error;
    tau += ni * e.tau_int;
    out.converged = out.converged && e.converged;
    if (!e.note.empty() && out.note.find(e.note) == std::string::npos)
      out.note += (out.note.empty() ? "" : "; ") + e.note;
  }
  out.n_samples = static_cast<std::uint64_t>(n);
  out.mean = mean / n;
  out.std_error = std::sqrt(var) / n;
  out.tau_int = tau / n;
  return out;
}

std::vector<MCEstimate> estimate_many(const Lattice& lattice, const BoundaryCondition& bc, const Params& params,
                                      std::span<const Observable> observables, const SamplerOptions& options) {
  params.validate();
  if (observables.empty()) throw std::invalid_argument("no observable to estimate");
  if (options.chains == 0 || options.thin == 0) throw std::invalid_argument("chains and thinning must be positive");
  if (options.burn_in && *options.burn_in >= options.sweeps)
    throw std::invalid_argument("sweeps must exceed the burn-in");
  if (options.sweeps < 2) throw std::invalid_argument("too few sweeps");
  const std::size_t nobs = observables.size();
  std::vector<std::vector<MCEstimate>> per_chain(options.chains, std::vector<MCEstimate>(nobs));

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(options.chains); ++ci) {
    const auto c = static_cast<std::size_t>(ci);
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
    Chain chain(lattice, bc, params, derive_seed(options.seed, c));
    if (options.start == Start::Full) chain.set_config(Configuration(lattice.edge_count(), true));
    std::string note;

    std::uint64_t burn = 0;
    if (options.burn_in) {
      burn = *options.burn_in;
      for (std::uint64_t s = 0; s < burn; ++s) chain.step(options.schedule);
    } else {
      const std::uint64_t half = options.sweeps / 2;
      const std::uint64_t pilot = std::min<std::uint64_t>(1000, half);
      std::vector<double> trace;
      trace.reserve(pilot);
      for (std::uint64_t s = 0; s < pilot; ++s) {
        chain.step(options.schedule);
        trace.push_back(observables[0](chain.config()));
      }
      const double tau = integrated_autocorrelation_time(trace);
      burn = std::max<std::uint64_t>(1000, static_cast<std::uint64_t>(std::ceil(10.0 * tau)));
      if (burn > half) {
        if (10.0 * tau > static_cast<double>(half)) note = "burn-in capped below 10 tau_int";
        burn = half;
      }
      for (std::uint64_t s = pilot; s < burn; ++s) chain.step(options.schedule);
    }

    std::vector<std::vector<double>> series(nobs);
    bool capped = false;
    for (std::uint64_t s = 1; s <= options.sweeps - burn; ++s) {
      chain.step(options.schedule);
      if (s % options.thin == 0)
        for (std::size_t k = 0; k < nobs; ++k) series[k].push_back(observables[k](chain.config()));
      if (options.max_seconds > 0.0 && (s & 63) == 0 && elapsed() > options.max_seconds) {
        capped = true;
        break;
      }
    }
    for (std::size_t k = 0; k < nobs; ++k) {
      MCEstimate& e = per_chain[c][k];
      e.seed = options.seed;
      if (series[k].empty()) {
        e.converged = false;
        e.note = "no samples recorded";
        continue;
      }
      const SeriesSummary sm = batched_means(series[k], options.batches);
      e.mean = sm.mean;
      e.std_error = sm.std_error;
      e.tau_int = sm.tau_int;
      e.n_samples = series[k].size();
      e.converged = sm.converged && note.empty() && !capped;
      e.note = sm.note;
      if (!note.empty()) e.note += (e.note.empty() ? "" : "; ") + note;
      if (capped) e.note += std::string(e.note.empty() ? "" : "; ") + "wall-time cap reached";
    }
  }

  std::vector<MCEstimate> out(nobs);
  for (std::size_t k = 0; k < nobs; ++k) {
    std::vector<MCEstimate> parts;
    for (std::size_t c = 0; c < options.chains; ++c)
      if (per_chain[c][k].n_samples > 0) parts.push_back(per_chain[c][k]);
    if (parts.empty()) {
      out[k].converged = false;
      out[k].note = "no samples recorded";
      out[k].seed = options.seed;
      continue;
    }
    out[k] = merge(parts);
  }
  return out;
}

MCEstimate estimate(const Lattice& lattice, const BoundaryCondition& bc, const Params& params,
                    const Observable& observable, const SamplerOptions& options) {
  return estimate_many(lattice, bc, params, std::span<const Observable>(&observable, 1), options).front();
}

std::vector<int> potts_from_fk(const Lattice& lattice, const Configuration& config, const BoundaryCondition& bc,
                               double q, Rng& rng) {
  if (!(q >= 2.0) || q != std::floor(q) || q > 1e9) throw std::invalid_argument("Potts colouring needs integer q >= 2");
  const ClusterStructure cs(lattice, config, bc);
  std::vector<int> colour_of(cs.cluster_count(), 0);
  std::vector<int> out(lattice.vertex_count());
  for (VertexId v = 0; v < lattice.vertex_count(); ++v) {
    int& col = colour_of[cs.label(v)];
    if (col == 0) col = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(q)));
    out[v] = col;
  }
  return out;
}

}  // namespace fklab
