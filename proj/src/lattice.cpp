#include "fklab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

#include "fklab/errors.hpp"

namespace fklab {
namespace {

constexpr double kSqrt3 = 1.7320508075688772;

int floor_mod(int a, int m) {
  const int r = a % m;
  return r < 0 ? r + m : r;
}

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

constexpr std::array<Point, 4> kSquareOffsets{{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};
constexpr std::array<Point, 6> kTriangularOffsets{{{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};
constexpr std::array<Point, 3> kHexUpOffsets{{{1, -2}, {-2, 1}, {1, 1}}};
constexpr std::array<Point, 3> kHexDownOffsets{{{-1, 2}, {2, -1}, {-1, -1}}};

Point square_frame(int i, int j, bool shifted) { return {i - j, i + j + (shifted ? 1 : 0)}; }

}  // namespace

class LatticeBuilder {
 public:
  LatticeBuilder(Family family, int size, bool periodic) {
    lattice_.family_ = family;
    lattice_.size_ = size;
    lattice_.periodic_ = periodic;
  }

  VertexId add_vertex(Point logical, Point frame) {
    lattice_.logical_.push_back(logical);
    lattice_.frame_.push_back(frame);
    return static_cast<VertexId>(lattice_.frame_.size() - 1);
  }

  void add_edge(VertexId a, VertexId b, Point delta) {
    lattice_.edges_.push_back({a, b});
    lattice_.edge_delta_.push_back(delta);
  }

  void set_shifted(bool s) { lattice_.shifted_ = s; }
  void set_outer(VertexId v) { lattice_.outer_ = v; }
  void mark_boundary(VertexId v) { boundary_.push_back(v); }

  Lattice finish() {
    Lattice& l = lattice_;
    const std::size_t nv = l.frame_.size();
    l.offsets_.assign(nv + 1, 0);
    for (const Edge& e : l.edges_) {
      ++l.offsets_[e.a + 1];
      ++l.offsets_[e.b + 1];
    }
    for (std::size_t v = 0; v < nv; ++v) l.offsets_[v + 1] += l.offsets_[v];
    l.incidence_.resize(l.offsets_[nv]);
    std::vector<std::size_t> cursor(l.offsets_.begin(), l.offsets_.end() - 1);
    for (EdgeId e = 0; e < l.edges_.size(); ++e) {
      const Edge& ed = l.edges_[e];
      const Point d = l.edge_delta_[e];
      l.incidence_[cursor[ed.a]++] = {e, ed.b, d};
      l.incidence_[cursor[ed.b]++] = {e, ed.a, Point{-d.x, -d.y}};
    }
    std::sort(boundary_.begin(), boundary_.end());
    boundary_.erase(std::unique(boundary_.begin(), boundary_.end()), boundary_.end());
    l.boundary_ = boundary_;
    l.on_boundary_.assign(nv, 0);
    for (VertexId v : l.boundary_) l.on_boundary_[v] = 1;
    return std::move(lattice_);
  }

 private:
  Lattice lattice_;
  std::vector<VertexId> boundary_;
};

namespace {

Lattice build_square_box(int n) {
  LatticeBuilder b(Family::SquareBox, n, false);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const VertexId v = b.add_vertex({i, j}, square_frame(i, j, false));
      if (i == 0 || j == 0 || i == n - 1 || j == n - 1) b.mark_boundary(v);
    }
  auto id = [n](int i, int j) { return static_cast<VertexId>(j * n + i); };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (i + 1 < n) b.add_edge(id(i, j), id(i + 1, j), {1, 1});
      if (j + 1 < n) b.add_edge(id(i, j), id(i, j + 1), {-1, 1});
    }
  return b.finish();
}

Lattice build_square_torus(int m, bool shifted) {
  LatticeBuilder b(Family::SquareTorus, m, true);
  b.set_shifted(shifted);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) b.add_vertex({i, j}, square_frame(i, j, shifted));
  auto id = [m](int i, int j) { return static_cast<VertexId>(floor_mod(j, m) * m + floor_mod(i, m)); };
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) {
      b.add_edge(id(i, j), id(i + 1, j), {1, 1});
      b.add_edge(id(i, j), id(i, j + 1), {-1, 1});
    }
  return b.finish();
}

Lattice build_triangular(int n, bool periodic) {
  LatticeBuilder b(periodic ? Family::TriangularTorus : Family::Triangular, n, periodic);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const VertexId v = b.add_vertex({i, j}, {i, j});
      if (!periodic && (i == 0 || j == 0 || i == n - 1 || j == n - 1)) b.mark_boundary(v);
    }
  auto id = [n](int i, int j) { return static_cast<VertexId>(floor_mod(j, n) * n + floor_mod(i, n)); };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (periodic || i + 1 < n) b.add_edge(id(i, j), id(i + 1, j), {1, 0});
      if (periodic || j + 1 < n) b.add_edge(id(i, j), id(i, j + 1), {0, 1});
      if (periodic || (i >= 1 && j + 1 < n)) b.add_edge(id(i, j), id(i - 1, j + 1), {-1, 1});
    }
  return b.finish();
}

// Hexagonal lattice as the dual of a triangular one. Hexagonal edge k is the
// dual of triangular edge k, so the bijection is the identity on indices.
Lattice build_hexagonal_from(const Lattice& tri) {
  const bool periodic = tri.periodic();
  const int n = tri.size();
  const int faces_per_side = periodic ? n : n - 1;
  LatticeBuilder b(Family::Hexagonal, n, periodic);
  for (int j = 0; j < faces_per_side; ++j)
    for (int i = 0; i < faces_per_side; ++i) {
      b.add_vertex({i, j}, {3 * i + 1, 3 * j + 1});
      b.add_vertex({i, j}, {3 * i + 2, 3 * j + 2});
    }
  std::optional<VertexId> outer;
  if (!periodic) {
    outer = b.add_vertex({-1, -1}, {std::numeric_limits<int>::min() / 4, std::numeric_limits<int>::min() / 4});
    b.set_outer(*outer);
  }
  auto up = [&](int i, int j) -> std::optional<VertexId> {
    if (periodic) return static_cast<VertexId>(2 * (floor_mod(j, n) * n + floor_mod(i, n)));
    if (i < 0 || j < 0 || i >= faces_per_side || j >= faces_per_side) return outer;
    return static_cast<VertexId>(2 * (j * faces_per_side + i));
  };
  auto down = [&](int i, int j) -> std::optional<VertexId> {
    auto u = up(i, j);
    if (!periodic && u == outer) return outer;
    return *u + 1;
  };
  for (EdgeId e = 0; e < tri.edge_count(); ++e) {
    const Edge& te = tri.edge(e);
    const Point p = tri.logical(te.a);
    const Point d = tri.edge_delta(e);
    VertexId fa = 0, fb = 0;
    Point delta;
    if (d == Point{1, 0}) {
      fa = *up(p.x, p.y);
      fb = *down(p.x, p.y - 1);
      delta = {1, -2};
    } else if (d == Point{0, 1}) {
      fa = *up(p.x, p.y);
      fb = *down(p.x - 1, p.y);
      delta = {-2, 1};
    } else {
      fa = *up(p.x - 1, p.y);
      fb = *down(p.x - 1, p.y);
      delta = {1, 1};
    }
    if (outer && (fa == *outer || fb == *outer)) {
      delta = {0, 0};
      b.mark_boundary(fa);
      b.mark_boundary(fb);
    }
    b.add_edge(fa, fb, delta);
  }
  return b.finish();
}

}  // namespace

std::string_view family_name(Family family) {
  switch (family) {
    case Family::SquareBox: return "square_box";
    case Family::SquareTorus: return "square_torus";
    case Family::Triangular: return "triangular";
    case Family::Hexagonal: return "hexagonal";
    case Family::TriangularTorus: return "triangular_torus";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::SquareBox, Family::SquareTorus, Family::Triangular, Family::Hexagonal,
                   Family::TriangularTorus})
    if (family_name(f) == name) return f;
  throw std::invalid_argument("unknown lattice family: " + std::string(name));
}

std::array<double, 2> Lattice::position(VertexId v) const {
  if (outer_ && v == *outer_) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan};
  }
  const Point f = frame(v);
  switch (family_) {
    case Family::SquareBox:
    case Family::SquareTorus: {
      const double s = 1.0 / std::sqrt(2.0);
      return {f.x * s, f.y * s};
    }
    case Family::Triangular:
    case Family::TriangularTorus:
      return {f.x * kSqrt3 / 2.0, f.x * 0.5 + f.y};
    case Family::Hexagonal: {
      const double x = f.x / 3.0, y = f.y / 3.0;
      return {x * kSqrt3 / 2.0, x * 0.5 + y};
    }
  }
  return {0.0, 0.0};
}

std::optional<VertexId> Lattice::vertex_at(Point f) const {
  const int n = size_;
  switch (family_) {
    case Family::SquareBox:
    case Family::SquareTorus: {
      const int u = f.x;
      const int v = f.y - (shifted_ ? 1 : 0);
      if (floor_mod(u + v, 2) != 0) return std::nullopt;
      int i = (u + v) / 2;
      int j = (v - u) / 2;
      if (periodic_) {
        i = floor_mod(i, n);
        j = floor_mod(j, n);
      } else if (i < 0 || j < 0 || i >= n || j >= n) {
        return std::nullopt;
      }
      return static_cast<VertexId>(j * n + i);
    }
    case Family::Triangular:
    case Family::TriangularTorus: {
      int i = f.x, j = f.y;
      if (periodic_) {
        i = floor_mod(i, n);
        j = floor_mod(j, n);
      } else if (i < 0 || j < 0 || i >= n || j >= n) {
        return std::nullopt;
      }
      return static_cast<VertexId>(j * n + i);
    }
    case Family::Hexagonal: {
      const int rx = floor_mod(f.x, 3), ry = floor_mod(f.y, 3);
      if (rx != ry || rx == 0) return std::nullopt;
      int i = floor_div(f.x, 3), j = floor_div(f.y, 3);
      const int side = periodic_ ? n : n - 1;
      if (periodic_) {
        i = floor_mod(i, n);
        j = floor_mod(j, n);
      } else if (i < 0 || j < 0 || i >= side || j >= side) {
        return std::nullopt;
      }
      return static_cast<VertexId>(2 * (j * side + i) + (rx == 2 ? 1 : 0));
    }
  }
  return std::nullopt;
}

std::span<const Point> Lattice::lattice_neighbor_offsets(VertexId v) const {
  switch (family_) {
    case Family::SquareBox:
    case Family::SquareTorus: return kSquareOffsets;
    case Family::Triangular:
    case Family::TriangularTorus: return kTriangularOffsets;
    case Family::Hexagonal:
      if (outer_ && v == *outer_) return {};
      return floor_mod(frame(v).x, 3) == 1 ? std::span<const Point>(kHexUpOffsets)
                                           : std::span<const Point>(kHexDownOffsets);
  }
  return {};
}

std::string Lattice::name() const {
  std::string s(family_name(family_));
  if (family_ == Family::Hexagonal && periodic_) s += "_torus";
  s += "(" + std::to_string(size_) + ")";
  if (shifted_) s += "*";
  return s;
}

Lattice build_lattice(Family family, int size) {
  if (size <= 0) throw std::invalid_argument("lattice size must be positive");
  switch (family) {
    case Family::SquareBox: return build_square_box(size);
    case Family::SquareTorus:
      if (size < 2) throw std::invalid_argument("torus size must be at least 2");
      return build_square_torus(size, false);
    case Family::Triangular: return build_triangular(size, false);
    case Family::TriangularTorus:
      if (size < 2) throw std::invalid_argument("torus size must be at least 2");
      return build_triangular(size, true);
    case Family::Hexagonal: return build_hexagonal_from(build_triangular(size, false));
  }
  throw std::invalid_argument("unknown lattice family");
}

std::vector<VertexId> rectangle_vertices(const Lattice& lattice, int t, int x, int y, int z) {
  std::vector<VertexId> out;
  if (t >= x || y >= z) return out;
  if (!lattice.periodic()) {
    for (VertexId v = 0; v < lattice.vertex_count(); ++v) {
      if (lattice.outer_vertex() && v == *lattice.outer_vertex()) continue;
      const Point f = lattice.frame(v);
      if (f.x >= t && f.x < x && f.y >= y && f.y < z) out.push_back(v);
    }
    std::sort(out.begin(), out.end(), [&](VertexId a, VertexId b) {
      const Point fa = lattice.frame(a), fb = lattice.frame(b);
      return fa.y != fb.y ? fa.y < fb.y : fa.x < fb.x;
    });
    return out;
  }
  std::vector<std::uint8_t> seen(lattice.vertex_count(), 0);
  for (int v = y; v < z; ++v)
    for (int u = t; u < x; ++u) {
      const auto id = lattice.vertex_at({u, v});
      if (!id) continue;
      if (seen[*id]) throw std::invalid_argument("rectangle wraps around the torus");
      seen[*id] = 1;
      out.push_back(*id);
    }
  return out;
}

DualMap dual_map(const Lattice& lattice) {
  switch (lattice.family()) {
    case Family::SquareBox:
      throw unsupported_operation("dual of a planar square box is not supported");
    case Family::SquareTorus: {
      const int m = lattice.size();
      DualMap dm{lattice, build_square_torus(m, !lattice.shifted()), {}, {}};
      dm.to_dual.resize(lattice.edge_count());
      dm.to_primal.resize(lattice.edge_count());
      auto id = [m](int i, int j) { return floor_mod(j, m) * m + floor_mod(i, m); };
      for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) {
          const EdgeId right = static_cast<EdgeId>(2 * id(i, j));
          const EdgeId upward = right + 1;
          if (!lattice.shifted()) {
            // dual site (a,b) sits at (a+1/2, b+1/2)
            dm.to_dual[right] = static_cast<EdgeId>(2 * id(i, j - 1) + 1);
            dm.to_dual[upward] = static_cast<EdgeId>(2 * id(i - 1, j));
          } else {
            // shifted site (a,b) sits at (a+1/2, b+1/2); dual site (c,d) at (c,d)
            dm.to_dual[right] = static_cast<EdgeId>(2 * id(i + 1, j) + 1);
            dm.to_dual[upward] = static_cast<EdgeId>(2 * id(i, j + 1));
          }
        }
      for (EdgeId e = 0; e < dm.to_dual.size(); ++e) dm.to_primal[dm.to_dual[e]] = e;
      return dm;
    }
    case Family::Triangular:
    case Family::TriangularTorus: {
      DualMap dm{lattice, build_hexagonal_from(lattice), {}, {}};
      dm.to_dual.resize(lattice.edge_count());
      for (EdgeId e = 0; e < dm.to_dual.size(); ++e) dm.to_dual[e] = e;
      dm.to_primal = dm.to_dual;
      return dm;
    }
    case Family::Hexagonal: {
      DualMap dm{lattice, build_triangular(lattice.size(), lattice.periodic()), {}, {}};
      dm.to_dual.resize(lattice.edge_count());
      for (EdgeId e = 0; e < dm.to_dual.size(); ++e) dm.to_dual[e] = e;
      dm.to_primal = dm.to_dual;
      return dm;
    }
  }
  throw unsupported_operation("dual map not supported for this family");
}

std::string descriptor_json(const Lattice& lattice) {
  nlohmann::json j;
  j["family"] = family_name(lattice.family());
  j["size"] = lattice.size();
  j["periodic"] = lattice.periodic();
  j["vertex_count"] = lattice.vertex_count();
  j["edge_count"] = lattice.edge_count();
  return j.dump();
}

void write_edge_csv(const Lattice& lattice, std::ostream& out) {
  out << "edge_index,v1,v2\n";
  for (EdgeId e = 0; e < lattice.edge_count(); ++e)
    out << e << ',' << lattice.edge(e).a << ',' << lattice.edge(e).b << '\n';
}

}  // namespace fklab
