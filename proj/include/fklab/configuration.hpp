#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fklab/lattice.hpp"
#include "fklab/union_find.hpp"

namespace fklab {

/// Bit-packed edge states, bit e set iff edge e is open.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::size_t edge_count, bool all_open = false);

  /// Configuration whose edge e is open iff bit e of `mask` is set
  /// (at most 64 edges).
  static Configuration from_mask(std::size_t edge_count, std::uint64_t mask);

  std::size_t size() const noexcept { return size_; }

  bool open(EdgeId e) const noexcept { return (words_[e >> 6] >> (e & 63)) & 1u; }
  void set(EdgeId e, bool is_open) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (e & 63);
    if (is_open)
      words_[e >> 6] |= bit;
    else
      words_[e >> 6] &= ~bit;
  }
  void flip(EdgeId e) noexcept { words_[e >> 6] ^= std::uint64_t{1} << (e & 63); }

  void assign_mask(std::uint64_t mask);
  std::uint64_t mask() const;

  std::size_t open_count() const noexcept;
  std::size_t closed_count() const noexcept { return size_ - open_count(); }

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// A partition of the boundary: free, wired, periodic (tori only; the
/// periodicity lives in the lattice) or mixed wired arcs.
class BoundaryCondition {
 public:
  enum class Kind { Free, Wired, Periodic, Mixed };

  static BoundaryCondition free() { return BoundaryCondition(Kind::Free, {}); }
  static BoundaryCondition wired() { return BoundaryCondition(Kind::Wired, {}); }
  static BoundaryCondition periodic() { return BoundaryCondition(Kind::Periodic, {}); }
  static BoundaryCondition mixed(std::vector<std::vector<VertexId>> classes) {
    return BoundaryCondition(Kind::Mixed, std::move(classes));
  }

  Kind kind() const noexcept { return kind_; }

  /// Non-empty wired classes on `lattice`. Throws std::invalid_argument if a
  /// class holds a non-boundary vertex, classes overlap, or a periodic tag is
  /// used on a planar lattice.
  std::vector<std::vector<VertexId>> resolve(const Lattice& lattice) const;

  std::string name() const;

 private:
  BoundaryCondition(Kind kind, std::vector<std::vector<VertexId>> classes)
      : kind_(kind), classes_(std::move(classes)) {}

  Kind kind_;
  std::vector<std::vector<VertexId>> classes_;
};

/// Parses "free", "wired" or "periodic".
BoundaryCondition parse_boundary_condition(std::string_view name);

/// Connected components of the configuration with the boundary wirings
/// added (one virtual node per wired class).
class ClusterStructure {
 public:
  ClusterStructure(const Lattice& lattice, const Configuration& config, const BoundaryCondition& bc);

  /// k(omega, xi).
  std::size_t cluster_count() const noexcept { return count_; }
  /// Dense component label in [0, cluster_count()).
  std::uint32_t label(VertexId v) const { return labels_.at(v); }
  std::span<const std::uint32_t> labels() const noexcept { return labels_; }
  bool connected(VertexId x, VertexId y) const { return label(x) == label(y); }

 private:
  std::vector<std::uint32_t> labels_;
  std::size_t count_ = 0;
};

/// Reusable workspace computing k(omega, xi) for many configurations of one
/// lattice. Not thread-safe; use one per thread.
class ClusterCounter {
 public:
  ClusterCounter(const Lattice& lattice, const BoundaryCondition& bc);

  std::size_t count(const Configuration& config);
  /// Union-find state left by the last count(); virtual class nodes follow
  /// the real vertices.
  UnionFind& forest() noexcept { return uf_; }

 private:
  const Lattice* lattice_;
  std::vector<std::pair<VertexId, std::uint32_t>> wiring_;
  std::size_t nodes_ = 0;
  UnionFind uf_;
};

bool connected(const Lattice& lattice, const Configuration& config, const BoundaryCondition& bc, VertexId x,
               VertexId y);

/// Complement pushed through the edge bijection.
Configuration dual_configuration(const Configuration& config, const DualMap& dual);

/// The increasing event {sources <-> targets} inside an optional vertex
/// region (empty region means the whole lattice).
struct ConnectionEvent {
  std::vector<VertexId> sources;
  std::vector<VertexId> targets;
  std::vector<VertexId> region;
};

/// Minimal number of closed edges that must be opened for the event to hold:
/// a 0/1-weighted shortest path (open edges cost 0, closed edges cost 1).
/// Returns SIZE_MAX when no path exists inside the region.
std::size_t hamming_to_connection(const Lattice& lattice, const Configuration& config, const ConnectionEvent& event,
                                  const BoundaryCondition& bc = BoundaryCondition::free());

}  // namespace fklab
