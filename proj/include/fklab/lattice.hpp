#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fklab {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

enum class Family : std::uint8_t {
  SquareBox = 0,
  SquareTorus = 1,
  Triangular = 2,
  Hexagonal = 3,
  TriangularTorus = 4,
};

std::string_view family_name(Family family);
Family parse_family(std::string_view name);

/// Integer point in a lattice's rectangle frame.
struct Point {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(Point, Point) = default;
  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
};

struct Edge {
  VertexId a = 0;
  VertexId b = 0;
};

/// One entry of a vertex's adjacency list. `delta` is the frame displacement
/// from the vertex to `other` in the universal cover (meaningful on tori).
struct Incidence {
  EdgeId edge = 0;
  VertexId other = 0;
  Point delta;
};

/// Finite lattice with an integer embedding.
///
/// Every vertex carries two integer coordinate pairs:
///  - `logical`: coordinates in the lattice basis (row-major indexing order);
///  - `frame`: the coordinates in which rectangles [t,x)x[y,z) are addressed.
///
/// For the square family the frame is the lattice rotated by pi/4 and scaled
/// by sqrt(2): a site with logical (i,j) sits at frame (i-j, i+j). Sites of
/// the dual square lattice then occupy the frame points with odd coordinate
/// sum, so a frame square [0,n)^2 holds a primal and a dual graph of the same
/// shape. Triangular lattices use lozenge coordinates in the basis
/// e1 = (sqrt3/2, 1/2), e2 = (0, 1) as frame. Hexagonal sites sit at the
/// triangle centroids, scaled by 3 (up triangles at (3i+1, 3j+1), down
/// triangles at (3i+2, 3j+2)).
///
/// Lattices are immutable once built.
class Lattice {
 public:
  Family family() const noexcept { return family_; }
  int size() const noexcept { return size_; }
  bool periodic() const noexcept { return periodic_; }
  /// True for the square torus whose sites sit at face centres of the
  /// unshifted one (the dual of a SquareTorus).
  bool shifted() const noexcept { return shifted_; }

  std::size_t vertex_count() const noexcept { return frame_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  Point edge_delta(EdgeId e) const { return edge_delta_.at(e); }

  Point frame(VertexId v) const { return frame_.at(v); }
  Point logical(VertexId v) const { return logical_.at(v); }
  /// Planar embedding (unit mesh). NaN for the outer-face site of a planar
  /// hexagonal lattice.
  std::array<double, 2> position(VertexId v) const;

  std::span<const Incidence> incident(VertexId v) const {
    return {incidence_.data() + offsets_.at(v), incidence_.data() + offsets_.at(v + 1)};
  }
  std::size_t degree(VertexId v) const { return offsets_.at(v + 1) - offsets_.at(v); }

  std::span<const VertexId> boundary() const noexcept { return boundary_; }
  bool on_boundary(VertexId v) const { return on_boundary_.at(v) != 0; }

  /// Vertex at a frame point (reduced modulo the torus periods), if any.
  std::optional<VertexId> vertex_at(Point frame) const;

  /// Frame displacements to the neighbours of `v` in the infinite lattice.
  std::span<const Point> lattice_neighbor_offsets(VertexId v) const;

  /// The outer-face site of a planar hexagonal lattice.
  std::optional<VertexId> outer_vertex() const noexcept { return outer_; }

  std::string name() const;

 private:
  friend class LatticeBuilder;

  Family family_ = Family::SquareBox;
  int size_ = 0;
  bool periodic_ = false;
  bool shifted_ = false;
  std::optional<VertexId> outer_;

  std::vector<Point> frame_;
  std::vector<Point> logical_;
  std::vector<Edge> edges_;
  std::vector<Point> edge_delta_;
  std::vector<std::size_t> offsets_;
  std::vector<Incidence> incidence_;
  std::vector<VertexId> boundary_;
  std::vector<std::uint8_t> on_boundary_;
};

/// Builds SquareBox (n x n sites), SquareTorus (m x m, m >= 2), Triangular
/// (n x n lozenge), TriangularTorus (m >= 2) or Hexagonal (dual of the n x n
/// triangular lozenge, including one site for the outer face).
Lattice build_lattice(Family family, int size);

/// Vertices whose frame coordinates lie in [t,x) x [y,z), in row-major frame
/// order. Empty ranges give an empty set. On tori the rectangle is taken in
/// the universal cover and must not wrap onto itself.
std::vector<VertexId> rectangle_vertices(const Lattice& lattice, int t, int x, int y, int z);

/// Dual lattice together with the edge bijection (each primal edge crosses
/// exactly one dual edge).
struct DualMap {
  Lattice primal;
  Lattice dual;
  std::vector<EdgeId> to_dual;
  std::vector<EdgeId> to_primal;
};

/// Supported for SquareTorus (dual: shifted SquareTorus of the same size),
/// TriangularTorus and Triangular (dual: Hexagonal), and Hexagonal (dual:
/// the triangular lattice it was built from). SquareBox throws
/// unsupported_operation.
DualMap dual_map(const Lattice& lattice);

/// {"family", "size", "periodic", "vertex_count", "edge_count"} as JSON text.
std::string descriptor_json(const Lattice& lattice);

/// CSV with header `edge_index,v1,v2`.
void write_edge_csv(const Lattice& lattice, std::ostream& out);

}  // namespace fklab
