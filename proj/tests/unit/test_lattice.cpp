#include <set>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "fklab/errors.hpp"
#include "fklab/configuration.hpp"
#include "fklab/lattice.hpp"
#include "oracles.hpp"

using namespace fklab;

namespace {

bool is_connected(const Lattice& l) {
  return oracle::dfs_components(l, Configuration(l.edge_count(), true)) == 1;
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("square torus counts") {
    const Lattice l = build_lattice(Family::SquareTorus, 3);
    CHECK(l.vertex_count() == 9);
    CHECK(l.edge_count() == 18);
    for (int m : {2, 4, 7}) {
      const Lattice t = build_lattice(Family::SquareTorus, m);
      CHECK(t.vertex_count() == static_cast<std::size_t>(m * m));
      CHECK(t.edge_count() == static_cast<std::size_t>(2 * m * m));
      CHECK(t.boundary().empty());
    }
  }

  TEST_CASE("degenerate box") {
    const Lattice l = build_lattice(Family::SquareBox, 1);
    CHECK(l.vertex_count() == 1);
    CHECK(l.edge_count() == 0);
    REQUIRE(l.boundary().size() == 1);
    CHECK(l.boundary()[0] == 0);
  }

  TEST_CASE("triangular 2x2 lozenge matches the hand count") {
    const Lattice l = build_lattice(Family::Triangular, 2);
    CHECK(l.vertex_count() == 4);
    // (0,0)-(1,0), (0,1)-(1,1), (0,0)-(0,1), (1,0)-(1,1), (1,0)-(0,1)
    std::set<std::pair<VertexId, VertexId>> expected{{0, 1}, {2, 3}, {0, 2}, {1, 3}, {1, 2}};
    std::set<std::pair<VertexId, VertexId>> got;
    for (const Edge& e : l.edges()) got.insert({std::min(e.a, e.b), std::max(e.a, e.b)});
    CHECK(got == expected);
  }

  TEST_CASE("invalid sizes") {
    CHECK_THROWS_AS(build_lattice(Family::SquareBox, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_lattice(Family::Triangular, -3), std::invalid_argument);
    CHECK_THROWS_AS(build_lattice(Family::SquareTorus, 1), std::invalid_argument);
  }

  TEST_CASE("edges are valid, distinct and the graph connected") {
    for (Family f : {Family::SquareBox, Family::SquareTorus, Family::Triangular, Family::Hexagonal,
                     Family::TriangularTorus})
      for (int n : {3, 5}) {
        const Lattice l = build_lattice(f, n);
        std::set<std::pair<VertexId, VertexId>> seen;
        for (const Edge& e : l.edges()) {
          CHECK(e.a != e.b);
          CHECK(e.a < l.vertex_count());
          CHECK(e.b < l.vertex_count());
          if (!l.periodic() && f != Family::Hexagonal) CHECK(seen.insert({std::min(e.a, e.b), std::max(e.a, e.b)}).second);
        }
        CHECK(is_connected(l));
      }
  }

  TEST_CASE("box boundary is the set of vertices with a neighbour outside") {
    for (Family f : {Family::SquareBox, Family::Triangular})
      for (int n : {1, 2, 4, 6}) {
        const Lattice l = build_lattice(f, n);
        std::set<VertexId> expected;
        for (VertexId v = 0; v < l.vertex_count(); ++v)
          for (Point d : l.lattice_neighbor_offsets(v))
            if (!l.vertex_at(l.frame(v) + d)) expected.insert(v);
        CHECK(std::set<VertexId>(l.boundary().begin(), l.boundary().end()) == expected);
      }
  }

  TEST_CASE("boundary grows linearly") {
    for (Family f : {Family::SquareBox, Family::Triangular, Family::Hexagonal})
      for (int n : {2, 4, 8, 16, 32}) CHECK(build_lattice(f, n).boundary().size() <= static_cast<std::size_t>(4 * n + 1));
  }

  TEST_CASE("Euler formula on planar lattices") {
    for (Family f : {Family::SquareBox, Family::Triangular})
      for (int n : {2, 3, 6}) {
        const Lattice l = build_lattice(f, n);
        const auto faces = static_cast<long>(oracle::trace_faces(l));
        CHECK(static_cast<long>(l.vertex_count()) - static_cast<long>(l.edge_count()) + faces == 2);
      }
    // the hexagonal lattice's faces are the triangular sites
    for (int n : {2, 3, 5}) {
      const Lattice h = build_lattice(Family::Hexagonal, n);
      const Lattice t = build_lattice(Family::Triangular, n);
      CHECK(static_cast<long>(h.vertex_count()) - static_cast<long>(h.edge_count()) +
                static_cast<long>(t.vertex_count()) ==
            2);
    }
  }

  TEST_CASE("dual maps") {
    SUBCASE("square torus is self-dual") {
      const Lattice l = build_lattice(Family::SquareTorus, 3);
      const DualMap dm = dual_map(l);
      CHECK(dm.dual.family() == Family::SquareTorus);
      CHECK(dm.dual.size() == 3);
      CHECK(dm.to_dual.size() == 18);
      CHECK(dm.dual.shifted());
      const DualMap back = dual_map(dm.dual);
      CHECK_FALSE(back.dual.shifted());
      for (EdgeId e = 0; e < 18; ++e) {
        CHECK(dm.to_primal[dm.to_dual[e]] == e);
        CHECK(back.to_dual[dm.to_dual[e]] == e);
      }
    }
    SUBCASE("primal and dual edges cross at their midpoints") {
      const Lattice l = build_lattice(Family::SquareTorus, 4);
      const DualMap dm = dual_map(l);
      for (EdgeId e = 0; e < l.edge_count(); ++e) {
        const Point a = l.frame(l.edge(e).a);
        const Point mid2 = a + a + l.edge_delta(e);
        const EdgeId f = dm.to_dual[e];
        const Point b = dm.dual.frame(dm.dual.edge(f).a);
        const Point mid2d = b + b + dm.dual.edge_delta(f);
        // equal modulo the torus periods (2m,2m) and (-2m,2m) in doubled coordinates
        const Point diff = mid2 - mid2d;
        const int s = diff.x + diff.y, t = diff.y - diff.x;
        CHECK(s % 16 == 0);
        CHECK(t % 16 == 0);
        // and the two edges are perpendicular
        const Point d1 = l.edge_delta(e), d2 = dm.dual.edge_delta(f);
        CHECK(d1.x * d2.x + d1.y * d2.y == 0);
      }
    }
    SUBCASE("triangular dual is hexagonal") {
      for (Family f : {Family::Triangular, Family::TriangularTorus}) {
        const Lattice l = build_lattice(f, 4);
        const DualMap dm = dual_map(l);
        CHECK(dm.dual.family() == Family::Hexagonal);
        CHECK(dm.dual.edge_count() == l.edge_count());
        const DualMap back = dual_map(dm.dual);
        CHECK(back.dual.family() == (l.periodic() ? Family::TriangularTorus : Family::Triangular));
        for (EdgeId e = 0; e < l.edge_count(); ++e) CHECK(back.to_dual[dm.to_dual[e]] == e);
        for (EdgeId e = 0; e < l.edge_count(); ++e) {
          // the dual edge joins the two triangles bordering the primal edge
          const Edge pe = l.edge(e), de = dm.dual.edge(e);
          for (VertexId face : {de.a, de.b}) {
            if (dm.dual.outer_vertex() && face == *dm.dual.outer_vertex()) continue;
            const Point c = dm.dual.frame(face);
            const int k = (c.x % 3 + 3) % 3;
            std::vector<Point> corners;
            const int i = (c.x - k) / 3, j = (c.y - k) / 3;
            if (k == 1)
              corners = {{i, j}, {i + 1, j}, {i, j + 1}};
            else
              corners = {{i + 1, j}, {i, j + 1}, {i + 1, j + 1}};
            int hits = 0;
            for (Point corner : corners) {
              const auto v = l.vertex_at(corner);
              if (v && (*v == pe.a || *v == pe.b)) ++hits;
            }
            CHECK(hits == 2);
          }
        }
      }
    }
    SUBCASE("square box has no supported dual") {
      CHECK_THROWS_AS(dual_map(build_lattice(Family::SquareBox, 3)), unsupported_operation);
    }
  }

  TEST_CASE("rectangle vertices") {
    SUBCASE("full range on a box") {
      const Lattice l = build_lattice(Family::SquareBox, 5);
      CHECK(rectangle_vertices(l, -10, 10, -10, 10).size() == 25);
    }
    SUBCASE("unit square") {
      const Lattice l = build_lattice(Family::Triangular, 4);
      const auto r = rectangle_vertices(l, 0, 1, 0, 1);
      REQUIRE(r.size() == 1);
      CHECK(l.frame(r[0]) == Point{0, 0});
      const Lattice s = build_lattice(Family::SquareBox, 4);
      const auto rs = rectangle_vertices(s, 0, 1, 0, 1);
      REQUIRE(rs.size() == 1);
      CHECK(s.frame(rs[0]) == Point{0, 0});
    }
    SUBCASE("empty ranges") {
      const Lattice l = build_lattice(Family::SquareBox, 4);
      CHECK(rectangle_vertices(l, 2, 2, 0, 3).empty());
      CHECK(rectangle_vertices(l, 0, 3, 5, 1).empty());
    }
    SUBCASE("torus rectangle against a coordinate scan") {
      const Lattice l = build_lattice(Family::SquareTorus, 4);
      const auto r = rectangle_vertices(l, 0, 2, 0, 3);
      std::set<VertexId> scan;
      for (VertexId v = 0; v < l.vertex_count(); ++v) {
        const Point lg = l.logical(v);
        // every lift of the site into the cover
        for (int a = -2; a <= 2; ++a)
          for (int b = -2; b <= 2; ++b) {
            const int i = lg.x + 4 * a, j = lg.y + 4 * b;
            const int u = i - j, w = i + j;
            if (u >= 0 && u < 2 && w >= 0 && w < 3) scan.insert(v);
          }
      }
      CHECK(std::set<VertexId>(r.begin(), r.end()) == scan);
      CHECK(r.size() == 3);
    }
    SUBCASE("wrapping rectangle") {
      const Lattice l = build_lattice(Family::SquareTorus, 3);
      CHECK_THROWS_AS(rectangle_vertices(l, 0, 8, 0, 8), std::invalid_argument);
    }
  }

  TEST_CASE("row-major indexing") {
    const Lattice l = build_lattice(Family::SquareBox, 4);
    for (VertexId v = 0; v < l.vertex_count(); ++v) CHECK(l.logical(v) == Point{static_cast<int>(v % 4), static_cast<int>(v / 4)});
  }

  TEST_CASE("descriptor and edge list") {
    const Lattice l = build_lattice(Family::SquareTorus, 3);
    const auto j = nlohmann::json::parse(descriptor_json(l));
    CHECK(j["family"] == "square_torus");
    CHECK(j["size"] == 3);
    CHECK(j["vertex_count"] == 9);
    CHECK(j["edge_count"] == 18);
    std::ostringstream out;
    write_edge_csv(l, out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "edge_index,v1,v2");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 18);
    CHECK(parse_family("hexagonal") == Family::Hexagonal);
    CHECK_THROWS_AS(parse_family("cubic"), std::invalid_argument);
  }
}
