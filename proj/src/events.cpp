#include "fklab/events.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <memory>
#include <stdexcept>

#include "fklab/errors.hpp"

namespace fklab {
namespace {

std::array<double, 2> embed(Family family, Point d) {
  switch (family) {
    case Family::SquareBox:
    case Family::SquareTorus: return {static_cast<double>(d.x), static_cast<double>(d.y)};
    default: return {d.x * std::numbers::sqrt3 / 2.0, d.x * 0.5 + d.y};
  }
}

double angle_of(Family family, Point d) {
  const auto e = embed(family, d);
  return std::atan2(e[1], e[0]);
}

int parse_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("bad integer: " + std::string(s));
  return v;
}

double parse_double(std::string_view s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(std::string(s), &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number: " + std::string(s));
  }
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

Direction parse_direction(std::string_view s) {
  if (s == "h") return Direction::Horizontal;
  if (s == "v") return Direction::Vertical;
  throw std::invalid_argument("crossing direction must be h or v");
}

RectSpec parse_rect(std::string_view s) {
  const auto parts = split(s, ',');
  if (parts.size() != 4) throw std::invalid_argument("rectangle needs x0,y0,x1,y1");
  return {parse_int(parts[0]), parse_int(parts[2]), parse_int(parts[1]), parse_int(parts[3])};
}

int linf(Point a, Point b) { return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)); }

// Union-find carrying, for every node, its winding potential relative to the
// parent; a cycle whose potentials disagree winds around the centre.
class WindingForest {
 public:
  explicit WindingForest(std::size_t n) : parent_(n), offset_(n, 0), winds_(n, 0) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<std::uint32_t>(i);
  }

  std::pair<std::uint32_t, int> find(std::uint32_t v) {
    int pot = 0;
    std::uint32_t r = v;
    while (parent_[r] != r) {
      pot += offset_[r];
      r = parent_[r];
    }
    // compress
    int rest = pot;
    while (parent_[v] != v) {
      const std::uint32_t next = parent_[v];
      const int off = offset_[v];
      parent_[v] = r;
      offset_[v] = rest;
      rest -= off;
      v = next;
    }
    return {r, pot};
  }

  void unite(std::uint32_t a, std::uint32_t b, int crossing) {
    const auto [ra, pa] = find(a);
    const auto [rb, pb] = find(b);
    if (ra == rb) {
      if (pa + crossing - pb != 0) winds_[ra] = 1;
      return;
    }
    parent_[rb] = ra;
    offset_[rb] = pa + crossing - pb;
    winds_[ra] |= winds_[rb];
  }

  bool winds(std::uint32_t v) { return winds_[find(v).first] != 0; }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<int> offset_;
  std::vector<std::uint8_t> winds_;
};

}  // namespace

RectGeometry::RectGeometry(const Lattice& lattice, const RectSpec& rect)
    : spec_(rect),
      inside_(lattice.vertex_count(), 0),
      edge_inside_(lattice.edge_count(), 0),
      cover_(lattice.vertex_count()),
      vertex_count_(lattice.vertex_count()) {
  vertices_ = rectangle_vertices(lattice, rect.t, rect.x, rect.y, rect.z);
  if (vertices_.empty()) throw std::invalid_argument("rectangle contains no vertex");
  if (lattice.periodic()) {
    for (int v = rect.y; v < rect.z; ++v)
      for (int u = rect.t; u < rect.x; ++u)
        if (const auto id = lattice.vertex_at({u, v})) cover_[*id] = {u, v};
  } else {
    for (VertexId v : vertices_) cover_[v] = lattice.frame(v);
  }
  for (VertexId v : vertices_) inside_[v] = 1;
  for (EdgeId e = 0; e < lattice.edge_count(); ++e) {
    const Edge& ed = lattice.edge(e);
    if (inside_[ed.a] && inside_[ed.b] && cover_[ed.a] + lattice.edge_delta(e) == cover_[ed.b]) {
      edge_inside_[e] = 1;
      edges_.push_back(e);
      edge_ends_.push_back(ed);
    }
  }
  for (VertexId v : vertices_) {
    bool l = false, r = false, b = false, t = false;
    for (Point d : lattice.lattice_neighbor_offsets(v)) {
      const Point w = cover_[v] + d;
      l |= w.x < rect.t;
      r |= w.x >= rect.x;
      b |= w.y < rect.y;
      t |= w.y >= rect.z;
    }
    if (l) left_.push_back(v);
    if (r) right_.push_back(v);
    if (b) bottom_.push_back(v);
    if (t) top_.push_back(v);
  }
}

bool RectGeometry::crossed(const Configuration& config, Direction dir) const {
  UnionFind uf(vertex_count_);
  for (std::size_t k = 0; k < edges_.size(); ++k)
    if (config.open(edges_[k])) uf.unite(edge_ends_[k].a, edge_ends_[k].b);
  const auto& from = dir == Direction::Horizontal ? left_ : bottom_;
  const auto& to = dir == Direction::Horizontal ? right_ : top_;
  std::vector<std::uint8_t> reached(vertex_count_, 0);
  for (VertexId v : from) reached[uf.find(v)] = 1;
  for (VertexId v : to)
    if (reached[uf.find(v)]) return true;
  return false;
}

bool has_crossing(const Lattice& lattice, const Configuration& config, const RectSpec& rect, Direction dir) {
  if (config.size() != lattice.edge_count()) throw std::invalid_argument("configuration does not match the lattice");
  return RectGeometry(lattice, rect).crossed(config, dir);
}

bool has_dual_crossing(const DualMap& dual, const Configuration& config, const RectSpec& rect, Direction dir) {
  return has_crossing(dual.dual, dual_configuration(config, dual), rect, dir);
}

std::optional<std::vector<VertexId>> topmost_crossing(const Lattice& lattice, const Configuration& config,
                                                      const RectSpec& rect) {
  const RectGeometry geo(lattice, rect);
  UnionFind uf(lattice.vertex_count());
  for (EdgeId e : geo.edges())
    if (config.open(e)) uf.unite(lattice.edge(e).a, lattice.edge(e).b);
  std::vector<std::uint8_t> on_right(lattice.vertex_count(), 0), right_root(lattice.vertex_count(), 0);
  for (VertexId v : geo.right()) {
    on_right[v] = 1;
    right_root[uf.find(v)] = 1;
  }
  std::optional<VertexId> start;
  for (VertexId v : geo.left()) {
    if (!right_root[uf.find(v)]) continue;
    if (!start) {
      start = v;
      continue;
    }
    const Point a = geo.cover(v), b = geo.cover(*start);
    if (a.y > b.y || (a.y == b.y && a.x < b.x)) start = v;
  }
  if (!start) return std::nullopt;

  // Walk along the upper contour of the cluster keeping the exterior on the
  // left: at every step take the first open edge clockwise from the edge we
  // arrived by.
  const Family fam = lattice.family();
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<VertexId> walk{*start};
  VertexId cur = *start;
  double back = std::numbers::pi;
  const std::size_t cap = 4 * lattice.edge_count() + 8;
  for (std::size_t step = 0; !on_right[cur]; ++step) {
    if (step > cap) throw std::logic_error("contour walk did not terminate");
    const Incidence* best = nullptr;
    double best_cw = 0.0;
    for (const Incidence& inc : lattice.incident(cur)) {
      if (!geo.edge_inside(inc.edge) || !config.open(inc.edge)) continue;
      double cw = std::fmod(back - angle_of(fam, inc.delta) + 2.0 * two_pi, two_pi);
      if (cw < 1e-9) cw = two_pi;
      if (!best || cw < best_cw) {
        best = &inc;
        best_cw = cw;
      }
    }
    if (!best) throw std::logic_error("contour walk stranded");
    back = angle_of(fam, Point{-best->delta.x, -best->delta.y});
    cur = best->other;
    walk.push_back(cur);
  }

  std::vector<VertexId> path;
  std::vector<std::int64_t> pos(lattice.vertex_count(), -1);
  for (VertexId v : walk) {
    if (pos[v] >= 0) {
      for (std::size_t k = static_cast<std::size_t>(pos[v]) + 1; k < path.size(); ++k) pos[path[k]] = -1;
      path.resize(static_cast<std::size_t>(pos[v]) + 1);
    } else {
      pos[v] = static_cast<std::int64_t>(path.size());
      path.push_back(v);
    }
  }
  return path;
}

int AnnulusSpec::inner_radius() const { return static_cast<int>(std::floor(std::pow(alpha, n))); }
int AnnulusSpec::outer_radius() const { return static_cast<int>(std::floor(std::pow(alpha, n + 1))); }
int AnnulusSpec::box_radius() const { return static_cast<int>(std::floor(std::pow(alpha, n + 2))); }

bool annulus_circuit_event(const Lattice& lattice, const Configuration& config, const AnnulusSpec& annulus) {
  if (lattice.family() != Family::SquareBox && lattice.family() != Family::Triangular)
    throw std::invalid_argument("annulus events need a planar square or triangular lattice");
  if (!(annulus.alpha > 1.0) || annulus.n < 0) throw std::invalid_argument("annulus needs alpha > 1 and n >= 0");
  const int r0 = annulus.inner_radius(), r1 = annulus.outer_radius(), r2 = annulus.box_radius();
  if (r1 <= r0) throw std::invalid_argument("degenerate annulus");
  if (annulus.center >= lattice.vertex_count()) throw std::invalid_argument("annulus centre out of range");
  const Point c = lattice.logical(annulus.center);
  const int side = lattice.size();
  if (c.x - r2 < 0 || c.y - r2 < 0 || c.x + r2 >= side || c.y + r2 >= side)
    throw std::invalid_argument("annulus box exceeds the lattice");

  WindingForest ring(lattice.vertex_count());
  UnionFind box(lattice.vertex_count());
  for (EdgeId e = 0; e < lattice.edge_count(); ++e) {
    if (!config.open(e)) continue;
    const Edge& ed = lattice.edge(e);
    const Point a = lattice.logical(ed.a), b = lattice.logical(ed.b);
    const int da = linf(a, c), db = linf(b, c);
    if (da > r2 || db > r2) continue;
    box.unite(ed.a, ed.b);
    if (da <= r0 || db <= r0 || da > r1 || db > r1) continue;
    // signed crossing of the ray from (cx + 1/4, cy + 1/2) towards +x
    int crossing = 0;
    if (a.y != b.y && std::min(a.y, b.y) == c.y && a.x + b.x >= 2 * c.x + 1) crossing = b.y > a.y ? 1 : -1;
    ring.unite(ed.a, ed.b, crossing);
  }
  std::vector<std::uint8_t> reaches(lattice.vertex_count(), 0);
  for (VertexId v = 0; v < lattice.vertex_count(); ++v)
    if (linf(lattice.logical(v), c) == r2) reaches[box.find(v)] = 1;
  for (VertexId v = 0; v < lattice.vertex_count(); ++v) {
    const int d = linf(lattice.logical(v), c);
    if (d <= r0 || d > r1) continue;
    if (ring.winds(v) && reaches[box.find(v)]) return true;
  }
  return false;
}

bool two_point(const Lattice& lattice, const Configuration& config, const BoundaryCondition& bc, VertexId x,
               VertexId y) {
  return connected(lattice, config, bc, x, y);
}

Event crossing_event(const Lattice& lattice, const RectSpec& rect, Direction dir) {
  auto geo = std::make_shared<const RectGeometry>(lattice, rect);
  return [geo, dir](const Configuration& c) { return geo->crossed(c, dir); };
}

Event dual_crossing_event(const DualMap& dual, const RectSpec& rect, Direction dir) {
  auto geo = std::make_shared<const RectGeometry>(dual.dual, rect);
  auto dm = std::make_shared<const DualMap>(dual);
  return [geo, dm, dir](const Configuration& c) { return geo->crossed(dual_configuration(c, *dm), dir); };
}

Event annulus_event(const Lattice& lattice, const AnnulusSpec& annulus) {
  annulus_circuit_event(lattice, Configuration(lattice.edge_count()), annulus);
  return [&lattice, annulus](const Configuration& c) { return annulus_circuit_event(lattice, c, annulus); };
}

Event two_point_event(const Lattice& lattice, const BoundaryCondition& bc, VertexId x, VertexId y) {
  if (x >= lattice.vertex_count() || y >= lattice.vertex_count()) throw std::invalid_argument("vertex out of range");
  bc.resolve(lattice);
  return [&lattice, bc, x, y](const Configuration& c) { return connected(lattice, c, bc, x, y); };
}

Event boundary_connection_event(const Lattice& lattice, const BoundaryCondition& bc, VertexId x) {
  if (x >= lattice.vertex_count()) throw std::invalid_argument("vertex out of range");
  bc.resolve(lattice);
  return [&lattice, bc, x](const Configuration& c) {
    const ClusterStructure cs(lattice, c, bc);
    for (VertexId b : lattice.boundary())
      if (cs.connected(x, b)) return true;
    return false;
  };
}

EventSpec parse_event_spec(std::string_view text) {
  EventSpec spec;
  spec.text = std::string(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("event spec needs a name: " + spec.text);
  const std::string_view name = text.substr(0, colon);
  const std::string_view rest = text.substr(colon + 1);
  if (name == "crossing" || name == "dual-crossing") {
    const auto parts = split(rest, ':');
    if (parts.size() != 2) throw std::invalid_argument("crossing spec is crossing:h|v:x0,y0,x1,y1");
    spec.kind = name == "crossing" ? EventSpec::Kind::Crossing : EventSpec::Kind::DualCrossing;
    spec.direction = parse_direction(parts[0]);
    spec.rect = parse_rect(parts[1]);
  } else if (name == "annulus") {
    spec.kind = EventSpec::Kind::Annulus;
    for (std::string_view kv : split(rest, ',')) {
      const auto eq = kv.find('=');
      if (eq == std::string_view::npos) throw std::invalid_argument("annulus option needs key=value");
      const auto key = kv.substr(0, eq), value = kv.substr(eq + 1);
      if (key == "alpha")
        spec.alpha = parse_double(value);
      else if (key == "n")
        spec.n = parse_int(value);
      else if (key == "center")
        spec.center = static_cast<VertexId>(parse_int(value));
      else
        throw std::invalid_argument("unknown annulus option: " + std::string(key));
    }
  } else if (name == "two-point") {
    const auto parts = split(rest, ',');
    if (parts.size() != 2) throw std::invalid_argument("two-point spec is two-point:X,Y");
    spec.kind = EventSpec::Kind::TwoPoint;
    spec.x = static_cast<VertexId>(parse_int(parts[0]));
    spec.y = static_cast<VertexId>(parse_int(parts[1]));
  } else if (name == "boundary") {
    spec.kind = EventSpec::Kind::Boundary;
    spec.x = static_cast<VertexId>(parse_int(rest));
  } else if (name == "edge") {
    spec.kind = EventSpec::Kind::EdgeOpen;
    spec.x = static_cast<VertexId>(parse_int(rest));
  } else {
    throw std::invalid_argument("unknown event: " + std::string(name));
  }
  return spec;
}

Event make_event(const Lattice& lattice, const BoundaryCondition& bc, const EventSpec& spec) {
  switch (spec.kind) {
    case EventSpec::Kind::Crossing: return crossing_event(lattice, spec.rect, spec.direction);
    case EventSpec::Kind::DualCrossing: return dual_crossing_event(dual_map(lattice), spec.rect, spec.direction);
    case EventSpec::Kind::Annulus: {
      AnnulusSpec a{spec.alpha, spec.n, 0};
      if (spec.center) {
        a.center = *spec.center;
      } else {
        const int mid = lattice.size() / 2;
        const auto v = lattice.family() == Family::Triangular ? lattice.vertex_at({mid, mid})
                                                             : std::optional<VertexId>(mid * lattice.size() + mid);
        a.center = *v;
      }
      return annulus_event(lattice, a);
    }
    case EventSpec::Kind::TwoPoint: return two_point_event(lattice, bc, spec.x, spec.y);
    case EventSpec::Kind::Boundary: return boundary_connection_event(lattice, bc, spec.x);
    case EventSpec::Kind::EdgeOpen: {
      if (spec.x >= lattice.edge_count()) throw std::invalid_argument("edge out of range");
      const EdgeId e = spec.x;
      return [e](const Configuration& c) { return c.open(e); };
    }
  }
  throw std::invalid_argument("unknown event kind");
}

ConnectionEvent connection_event(const Lattice& lattice, const EventSpec& spec) {
  switch (spec.kind) {
    case EventSpec::Kind::TwoPoint: return {{spec.x}, {spec.y}, {}};
    case EventSpec::Kind::Boundary:
      return {{spec.x}, std::vector<VertexId>(lattice.boundary().begin(), lattice.boundary().end()), {}};
    case EventSpec::Kind::Crossing: {
      const RectGeometry geo(lattice, spec.rect);
      const bool h = spec.direction == Direction::Horizontal;
      const auto from = h ? geo.left() : geo.bottom();
      const auto to = h ? geo.right() : geo.top();
      return {std::vector<VertexId>(from.begin(), from.end()), std::vector<VertexId>(to.begin(), to.end()),
              std::vector<VertexId>(geo.vertices().begin(), geo.vertices().end())};
    }
    default: throw unsupported_operation("Hamming distance is only defined for connection events");
  }
}

}  // namespace fklab
