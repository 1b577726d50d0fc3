#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fklab/configuration.hpp"
#include "fklab/exact.hpp"
#include "fklab/lattice.hpp"

namespace fklab {

enum class Direction { Horizontal, Vertical };

/// Half-open frame rectangle [t,x) x [y,z).
struct RectSpec {
  int t = 0;
  int x = 0;
  int y = 0;
  int z = 0;
};

/// A rectangle resolved on a lattice: its vertices, the edges that stay
/// inside it and its four sides. A side holds the rectangle vertices with a
/// neighbour in the infinite lattice beyond that side.
class RectGeometry {
 public:
  /// Throws std::invalid_argument for an empty rectangle or one that wraps
  /// around a torus.
  RectGeometry(const Lattice& lattice, const RectSpec& rect);

  const RectSpec& spec() const noexcept { return spec_; }
  std::span<const VertexId> vertices() const noexcept { return vertices_; }
  std::span<const EdgeId> edges() const noexcept { return edges_; }
  bool contains(VertexId v) const { return inside_.at(v) != 0; }
  /// Universal-cover frame point of a rectangle vertex.
  Point cover(VertexId v) const { return cover_.at(v); }
  bool edge_inside(EdgeId e) const { return edge_inside_.at(e) != 0; }

  std::span<const VertexId> left() const noexcept { return left_; }
  std::span<const VertexId> right() const noexcept { return right_; }
  std::span<const VertexId> bottom() const noexcept { return bottom_; }
  std::span<const VertexId> top() const noexcept { return top_; }

  bool crossed(const Configuration& config, Direction dir) const;

 private:
  RectSpec spec_;
  std::vector<VertexId> vertices_;
  std::vector<EdgeId> edges_;
  std::vector<Edge> edge_ends_;
  std::vector<std::uint8_t> inside_;
  std::vector<std::uint8_t> edge_inside_;
  std::vector<Point> cover_;
  std::vector<VertexId> left_, right_, bottom_, top_;
  std::size_t vertex_count_ = 0;
};

/// Open path inside the rectangle joining its two sides (left/right for
/// Horizontal, bottom/top for Vertical).
bool has_crossing(const Lattice& lattice, const Configuration& config, const RectSpec& rect, Direction dir);

/// Crossing of the dual configuration on the dual lattice.
bool has_dual_crossing(const DualMap& dual, const Configuration& config, const RectSpec& rect, Direction dir);

/// The top-most horizontal open crossing, as a simple vertex path from the
/// left side to the right side, or nullopt when there is none.
std::optional<std::vector<VertexId>> topmost_crossing(const Lattice& lattice, const Configuration& config,
                                                      const RectSpec& rect);

/// Annulus between L-infinity radii floor(alpha^n) and floor(alpha^(n+1))
/// around `center` (logical coordinates), with outer box of radius
/// floor(alpha^(n+2)).
struct AnnulusSpec {
  double alpha = 2.0;
  int n = 1;
  VertexId center = 0;

  int inner_radius() const;
  int outer_radius() const;
  int box_radius() const;
};

/// Open circuit in the annulus surrounding the centre, connected by an open
/// path inside the outer box to the box boundary. A circuit is an open cycle
/// in the annulus with nonzero winding number around the centre. Planar
/// square and triangular lattices only; throws std::invalid_argument if the
/// box does not fit.
bool annulus_circuit_event(const Lattice& lattice, const Configuration& config, const AnnulusSpec& annulus);

bool two_point(const Lattice& lattice, const Configuration& config, const BoundaryCondition& bc, VertexId x,
               VertexId y);

Event crossing_event(const Lattice& lattice, const RectSpec& rect, Direction dir);
Event dual_crossing_event(const DualMap& dual, const RectSpec& rect, Direction dir);
Event annulus_event(const Lattice& lattice, const AnnulusSpec& annulus);
/// {x <-> y}, honouring the wired classes of `bc`.
Event two_point_event(const Lattice& lattice, const BoundaryCondition& bc, VertexId x, VertexId y);
/// {x <-> boundary}, honouring the wired classes of `bc`.
Event boundary_connection_event(const Lattice& lattice, const BoundaryCondition& bc, VertexId x);

/// Textual event description understood by the command line:
///   crossing:h:x0,y0,x1,y1     open crossing of [x0,x1) x [y0,y1)
///   dual-crossing:v:x0,y0,x1,y1
///   annulus:alpha=2,n=3[,center=V]
///   two-point:X,Y
///   boundary:X
///   edge:E
struct EventSpec {
  enum class Kind { Crossing, DualCrossing, Annulus, TwoPoint, Boundary, EdgeOpen };
  Kind kind = Kind::Crossing;
  Direction direction = Direction::Horizontal;
  RectSpec rect;
  double alpha = 2.0;
  int n = 1;
  std::optional<VertexId> center;
  VertexId x = 0;
  VertexId y = 0;
  std::string text;
};

EventSpec parse_event_spec(std::string_view text);

/// Builds the event; an annulus without explicit centre is centred at the
/// lattice vertex closest to the middle of the box.
Event make_event(const Lattice& lattice, const BoundaryCondition& bc, const EventSpec& spec);

/// Connection form of a spec, for Hamming distances. Throws
/// unsupported_operation for events that are not connection events.
ConnectionEvent connection_event(const Lattice& lattice, const EventSpec& spec);

}  // namespace fklab
