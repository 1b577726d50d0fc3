#include "fklab/configuration.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <limits>
#include <stdexcept>

namespace fklab {

Configuration::Configuration(std::size_t edge_count, bool all_open)
    : size_(edge_count), words_((edge_count + 63) / 64, all_open ? ~std::uint64_t{0} : 0) {
  if (all_open && (edge_count & 63) != 0) words_.back() &= (std::uint64_t{1} << (edge_count & 63)) - 1;
}

Configuration Configuration::from_mask(std::size_t edge_count, std::uint64_t mask) {
  Configuration c(edge_count);
  c.assign_mask(mask);
  return c;
}

void Configuration::assign_mask(std::uint64_t mask) {
  if (size_ > 64) throw std::invalid_argument("mask assignment needs at most 64 edges");
  if (size_ == 0) return;
  if (size_ < 64) mask &= (std::uint64_t{1} << size_) - 1;
  words_[0] = mask;
}

std::uint64_t Configuration::mask() const {
  if (size_ > 64) throw std::invalid_argument("mask needs at most 64 edges");
  return size_ == 0 ? 0 : words_[0];
}

std::size_t Configuration::open_count() const noexcept {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<std::vector<VertexId>> BoundaryCondition::resolve(const Lattice& lattice) const {
  switch (kind_) {
    case Kind::Free: return {};
    case Kind::Periodic:
      if (!lattice.periodic()) throw std::invalid_argument("periodic boundary condition needs a torus");
      return {};
    case Kind::Wired:
      if (lattice.boundary().empty()) return {};
      return {std::vector<VertexId>(lattice.boundary().begin(), lattice.boundary().end())};
    case Kind::Mixed: {
      std::vector<std::uint8_t> used(lattice.vertex_count(), 0);
      std::vector<std::vector<VertexId>> out;
      for (const auto& cls : classes_) {
        for (VertexId v : cls) {
          if (v >= lattice.vertex_count() || !lattice.on_boundary(v))
            throw std::invalid_argument("boundary class references a non-boundary vertex");
          if (used[v]) throw std::invalid_argument("boundary classes overlap");
          used[v] = 1;
        }
        if (!cls.empty()) out.push_back(cls);
      }
      return out;
    }
  }
  return {};
}

std::string BoundaryCondition::name() const {
  switch (kind_) {
    case Kind::Free: return "free";
    case Kind::Wired: return "wired";
    case Kind::Periodic: return "periodic";
    case Kind::Mixed: return "mixed";
  }
  return "unknown";
}

BoundaryCondition parse_boundary_condition(std::string_view name) {
  if (name == "free") return BoundaryCondition::free();
  if (name == "wired") return BoundaryCondition::wired();
  if (name == "periodic") return BoundaryCondition::periodic();
  throw std::invalid_argument("unknown boundary condition: " + std::string(name));
}

ClusterCounter::ClusterCounter(const Lattice& lattice, const BoundaryCondition& bc) : lattice_(&lattice) {
  const auto classes = bc.resolve(lattice);
  nodes_ = lattice.vertex_count() + classes.size();
  for (std::uint32_t c = 0; c < classes.size(); ++c)
    for (VertexId v : classes[c])
      wiring_.emplace_back(v, static_cast<std::uint32_t>(lattice.vertex_count() + c));
}

std::size_t ClusterCounter::count(const Configuration& config) {
  if (config.size() != lattice_->edge_count())
    throw std::invalid_argument("configuration does not match the lattice");
  uf_.reset(nodes_);
  for (const auto& [v, node] : wiring_) uf_.unite(v, node);
  const auto edges = lattice_->edges();
  for (EdgeId e = 0; e < edges.size(); ++e)
    if (config.open(e)) uf_.unite(edges[e].a, edges[e].b);
  return uf_.set_count();
}

ClusterStructure::ClusterStructure(const Lattice& lattice, const Configuration& config,
                                   const BoundaryCondition& bc) {
  ClusterCounter counter(lattice, bc);
  count_ = counter.count(config);
  UnionFind& uf = counter.forest();
  constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> root_label(uf.size(), unset);
  std::uint32_t next = 0;
  labels_.resize(lattice.vertex_count());
  for (VertexId v = 0; v < lattice.vertex_count(); ++v) {
    const auto r = uf.find(v);
    if (root_label[r] == unset) root_label[r] = next++;
    labels_[v] = root_label[r];
  }
}

bool connected(const Lattice& lattice, const Configuration& config, const BoundaryCondition& bc, VertexId x,
               VertexId y) {
  if (x >= lattice.vertex_count() || y >= lattice.vertex_count())
    throw std::invalid_argument("vertex out of range");
  if (x == y) return true;
  return ClusterStructure(lattice, config, bc).connected(x, y);
}

Configuration dual_configuration(const Configuration& config, const DualMap& dual) {
  if (config.size() != dual.to_dual.size()) throw std::invalid_argument("configuration does not match the dual map");
  Configuration out(dual.dual.edge_count());
  for (EdgeId e = 0; e < config.size(); ++e) out.set(dual.to_dual[e], !config.open(e));
  return out;
}

std::size_t hamming_to_connection(const Lattice& lattice, const Configuration& config, const ConnectionEvent& event,
                                  const BoundaryCondition& bc) {
  if (config.size() != lattice.edge_count()) throw std::invalid_argument("configuration does not match the lattice");
  const std::size_t nv = lattice.vertex_count();
  constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();

  std::vector<std::uint8_t> allowed(nv, event.region.empty() ? 1 : 0);
  for (VertexId v : event.region) allowed.at(v) = 1;
  std::vector<std::uint8_t> is_target(nv, 0);
  for (VertexId v : event.targets) is_target.at(v) = 1;

  const auto classes = bc.resolve(lattice);
  std::vector<std::int32_t> class_of(nv, -1);
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (VertexId v : classes[c]) class_of[v] = static_cast<std::int32_t>(c);
  std::vector<std::uint8_t> class_done(classes.size(), 0);

  std::vector<std::size_t> dist(nv, inf);
  std::deque<VertexId> queue;
  for (VertexId s : event.sources) {
    if (s >= nv) throw std::invalid_argument("source vertex out of range");
    if (!allowed[s]) continue;
    dist[s] = 0;
    queue.push_front(s);
  }
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    const std::size_t d = dist[v];
    if (is_target[v]) return d;
    const std::int32_t c = class_of[v];
    if (c >= 0 && !class_done[c]) {
      class_done[c] = 1;
      for (VertexId w : classes[c])
        if (allowed[w] && dist[w] > d) {
          dist[w] = d;
          queue.push_front(w);
        }
    }
    for (const Incidence& inc : lattice.incident(v)) {
      if (!allowed[inc.other]) continue;
      const std::size_t cost = config.open(inc.edge) ? 0 : 1;
      if (d + cost < dist[inc.other]) {
        dist[inc.other] = d + cost;
        if (cost == 0)
          queue.push_front(inc.other);
        else
          queue.push_back(inc.other);
      }
    }
  }
  return inf;
}

}  // namespace fklab
