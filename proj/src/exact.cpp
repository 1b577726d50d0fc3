#include "fklab/exact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

#include "fklab/compensated.hpp"
#include "fklab/errors.hpp"

namespace fklab {
namespace {

constexpr std::size_t kChunks = 1024;

struct PowerTables {
  std::vector<double> p, r, q;

  PowerTables(const Params& params, std::size_t edges, std::size_t nodes)
      : p(edges + 1, 1.0), r(edges + 1, 1.0), q(nodes + 1, 1.0) {
    for (std::size_t i = 1; i <= edges; ++i) {
      p[i] = p[i - 1] * params.p;
      r[i] = r[i - 1] * (1.0 - params.p);
    }
    for (std::size_t i = 1; i <= nodes; ++i) q[i] = q[i - 1] * params.q;
  }
};

void check_cap(const Lattice& lattice, const ExactOptions& options) {
  if (lattice.edge_count() > options.edge_cap || lattice.edge_count() > 40)
    throw resource_limit("lattice has " + std::to_string(lattice.edge_count()) +
                         " edges, above the enumeration cap of " + std::to_string(options.edge_cap));
}

// Sums over the configurations with masks in [begin, end): slot 0 holds the
// weight, slot i+1 the weight times observable i.
void accumulate_range(const Lattice& lattice, const BoundaryCondition& bc, const PowerTables& pw,
                      std::span<const Observable> observables, std::uint64_t begin, std::uint64_t end,
                      std::vector<CompensatedSum>& sums) {
  ClusterCounter counter(lattice, bc);
  Configuration config(lattice.edge_count());
  const std::size_t ne = lattice.edge_count();
  for (std::uint64_t mask = begin; mask < end; ++mask) {
    config.assign_mask(mask);
    const std::size_t o = config.open_count();
    const std::size_t k = counter.count(config);
    const double w = pw.p[o] * pw.r[ne - o] * pw.q[k];
    sums[0].add(w);
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < observables.size(); ++i) {
      const double f = observables[i](config);
      if (f != 0.0) sums[i + 1].add(w * f);
    }
  }
}

}  // namespace

void Params::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
  if (!(q >= 1.0) || !std::isfinite(q)) throw std::invalid_argument("q must be finite and at least 1");
}

double configuration_weight(const Lattice& lattice, const BoundaryCondition& bc, const Params& params,
                            const Configuration& config) {
  ClusterCounter counter(lattice, bc);
  const double k = static_cast<double>(counter.count(config));
  const double o = static_cast<double>(config.open_count());
  const double c = static_cast<double>(config.size()) - o;
  return std::pow(params.p, o) * std::pow(1.0 - params.p, c) * std::pow(params.q, k);
}

Expectations expectations(const Lattice& lattice, const BoundaryCondition& bc, const Params& params,
                          std::span<const Observable> observables, const ExactOptions& options) {
  params.validate();
  check_cap(lattice, options);
  bc.resolve(lattice);
  const std::uint64_t total = std::uint64_t{1} << lattice.edge_count();
  const PowerTables pw(params, lattice.edge_count(), lattice.vertex_count() + lattice.boundary().size() + 1);
  const std::size_t slots = observables.size() + 1;

  std::vector<CompensatedSum> sums(slots);
  if (options.execution == Execution::Serial) {
    accumulate_range(lattice, bc, pw, observables, 0, total, sums);
  } else {
    const std::size_t chunks = static_cast<std::size_t>(std::min<std::uint64_t>(kChunks, total));
    std::vector<std::vector<CompensatedSum>> partial(chunks, std::vector<CompensatedSum>(slots));
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
      const std::uint64_t begin = total * static_cast<std::uint64_t>(c) / chunks;
      const std::uint64_t end = total * static_cast<std::uint64_t>(c + 1) / chunks;
      accumulate_range(lattice, bc, pw, observables, begin, end, partial[c]);
    }
    for (const auto& part : partial)
      for (std::size_t s = 0; s < slots; ++s) sums[s].merge(part[s]);
  }

  Expectations out;
  out.Z = sums[0].value();
  out.values.resize(observables.size());
  for (std::size_t i = 0; i < observables.size(); ++i) out.values[i] = sums[i + 1].value() / out.Z;
  return out;
}

ExactResult enumerate(const Lattice& lattice, const BoundaryCondition& bc, const Params& params,
                      std::span<const Event> events, const ExactOptions& options) {
  std::vector<Observable> obs;
  for (const Event& ev : events) obs.emplace_back([&ev](const Configuration& c) { return ev(c) ? 1.0 : 0.0; });
  for (EdgeId e = 0; e < lattice.edge_count(); ++e)
    obs.emplace_back([e](const Configuration& c) { return c.open(e) ? 1.0 : 0.0; });
  const Expectations ex = expectations(lattice, bc, params, obs, options);
  ExactResult r;
  r.Z = ex.Z;
  r.probabilities.assign(ex.values.begin(), ex.values.begin() + static_cast<std::ptrdiff_t>(events.size()));
  r.edge_marginals.assign(ex.values.begin() + static_cast<std::ptrdiff_t>(events.size()), ex.values.end());
  return r;
}

double partition_function(const Lattice& lattice, const BoundaryCondition& bc, const Params& params,
                          const ExactOptions& options) {
  return expectations(lattice, bc, params, {}, options).Z;
}

double event_probability(const Lattice& lattice, const BoundaryCondition& bc, const Params& params,
                         const Event& event, const ExactOptions& options) {
  const Observable obs[] = {[&event](const Configuration& c) { return event(c) ? 1.0 : 0.0; }};
  return std::clamp(expectations(lattice, bc, params, obs, options).values[0], 0.0, 1.0);
}

double edge_influence(const Lattice& lattice, const BoundaryCondition& bc, const Params& params,
                      const Event& event, EdgeId e, const ExactOptions& options) {
  if (e >= lattice.edge_count()) throw std::invalid_argument("edge out of range");
  const Observable obs[] = {
      [e](const Configuration& c) { return c.open(e) ? 1.0 : 0.0; },
      [&event](const Configuration& c) { return event(c) ? 1.0 : 0.0; },
      [&event, e](const Configuration& c) { return c.open(e) && event(c) ? 1.0 : 0.0; },
  };
  const auto ex = expectations(lattice, bc, params, obs, options);
  const double pe = ex.values[0];
  if (pe <= 0.0 || pe >= 1.0) throw degenerate_conditioning("edge state is almost surely fixed");
  const double given_open = ex.values[2] / pe;
  const double given_closed = (ex.values[1] - ex.values[2]) / (1.0 - pe);
  return given_open - given_closed;
}

double russo_derivative(const Lattice& lattice, const BoundaryCondition& bc, const Params& params,
                        const Event& event, const ExactOptions& options) {
  if (!(params.p > 0.0 && params.p < 1.0)) throw std::invalid_argument("Russo derivative needs 0 < p < 1");
  const Observable obs[] = {
      [](const Configuration& c) { return static_cast<double>(c.open_count()); },
      [&event](const Configuration& c) { return event(c) ? 1.0 : 0.0; },
      [&event](const Configuration& c) { return event(c) ? static_cast<double>(c.open_count()) : 0.0; },
  };
  const auto ex = expectations(lattice, bc, params, obs, options);
  return (ex.values[2] - ex.values[0] * ex.values[1]) / (params.p * (1.0 - params.p));
}

bool is_increasing(const Lattice& lattice, const Event& event, const ExactOptions& options) {
  check_cap(lattice, options);
  const std::size_t ne = lattice.edge_count();
  const std::uint64_t total = std::uint64_t{1} << ne;
  std::vector<std::uint8_t> holds(total);
  Configuration config(ne);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    config.assign_mask(mask);
    holds[mask] = event(config) ? 1 : 0;
  }
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (!holds[mask]) continue;
    for (std::size_t e = 0; e < ne; ++e)
      if (!holds[mask | (std::uint64_t{1} << e)]) return false;
  }
  return true;
}

FkgReport check_fkg(const Lattice& lattice, const BoundaryCondition& bc, const Params& params, const Event& a,
                    const Event& b, const ExactOptions& options) {
  if (!is_increasing(lattice, a, options) || !is_increasing(lattice, b, options))
    throw std::invalid_argument("FKG check needs increasing events");
  const Observable obs[] = {
      [&a](const Configuration& c) { return a(c) ? 1.0 : 0.0; },
      [&b](const Configuration& c) { return b(c) ? 1.0 : 0.0; },
      [&a, &b](const Configuration& c) { return a(c) && b(c) ? 1.0 : 0.0; },
  };
  const auto ex = expectations(lattice, bc, params, obs, options);
  FkgReport r;
  r.phi_a = ex.values[0];
  r.phi_b = ex.values[1];
  r.phi_ab = ex.values[2];
  r.margin = r.phi_ab - r.phi_a * r.phi_b;
  r.holds = r.margin >= -1e-12;
  return r;
}

bool refines(const Lattice& lattice, const BoundaryCondition& finer, const BoundaryCondition& coarser) {
  const auto fine = finer.resolve(lattice);
  const auto coarse = coarser.resolve(lattice);
  std::vector<std::int64_t> owner(lattice.vertex_count(), -1);
  for (std::size_t c = 0; c < coarse.size(); ++c)
    for (VertexId v : coarse[c]) owner[v] = static_cast<std::int64_t>(c);
  for (const auto& cls : fine) {
    if (cls.size() < 2) continue;
    const std::int64_t o = owner[cls.front()];
    if (o < 0) return false;
    for (VertexId v : cls)
      if (owner[v] != o) return false;
  }
  return true;
}

ComparisonReport check_bc_comparison(const Lattice& lattice, const Params& params, const Event& a,
                                     const BoundaryCondition& bc_low, const BoundaryCondition& bc_high,
                                     const ExactOptions& options) {
  if (!refines(lattice, bc_low, bc_high))
    throw std::invalid_argument("boundary conditions are not ordered by refinement");
  if (!is_increasing(lattice, a, options)) throw std::invalid_argument("comparison needs an increasing event");
  ComparisonReport r;
  r.phi_low = event_probability(lattice, bc_low, params, a, options);
  r.phi_high = event_probability(lattice, bc_high, params, a, options);
  r.margin = r.phi_high - r.phi_low;
  r.holds = r.margin >= -1e-12;
  return r;
}

std::string exact_json(const Lattice& lattice, const BoundaryCondition& bc, const Params& params,
                       const std::string& event_name, double probability, double Z) {
  nlohmann::json j;
  j["lattice"] = nlohmann::json::parse(descriptor_json(lattice));
  j["bc"] = bc.name();
  j["p"] = params.p;
  j["q"] = params.q;
  j["event"] = event_name;
  j["probability"] = probability;
  j["Z"] = Z;
  return j.dump();
}

}  // namespace fklab
