#include "fklab/critical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fklab/union_find.hpp"

namespace fklab {
namespace {

void check_q(double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw std::invalid_argument("q must be finite and at least 1");
}

// Safeguarded Newton on an increasing function with f(lo) < 0 < f(hi).
template <typename F, typename DF>
double solve_increasing(F f, DF df, double lo, double hi) {
  double y = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double fy = f(y);
    if (fy == 0.0) return y;
    if (fy < 0.0)
      lo = y;
    else
      hi = y;
    double next = y - fy / df(y);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - y);
    y = next;
    if (step <= 1e-14 * std::max(1.0, std::abs(y))) break;
  }
  return y;
}

PartitionLaw normalize(PartitionLaw w) {
  double z = 0.0;
  for (double x : w) z += x;
  for (double& x : w) x /= z;
  return w;
}

// Index of the partition induced on terminals 0, 1, 2.
int partition_index(UnionFind& uf) {
  const bool ab = uf.find(0) == uf.find(1), ac = uf.find(0) == uf.find(2), bc = uf.find(1) == uf.find(2);
  if (ab && ac) return 4;
  if (ab) return 1;
  if (ac) return 2;
  if (bc) return 3;
  return 0;
}

PartitionLaw gadget_law(int vertices, const std::array<std::array<int, 2>, 3>& edges, double p, double q) {
  PartitionLaw w{};
  for (int mask = 0; mask < 8; ++mask) {
    UnionFind uf(static_cast<std::size_t>(vertices));
    int open = 0;
    for (int e = 0; e < 3; ++e)
      if (mask >> e & 1) {
        ++open;
        uf.unite(static_cast<std::uint32_t>(edges[e][0]), static_cast<std::uint32_t>(edges[e][1]));
      }
    const double weight = std::pow(p, open) * std::pow(1.0 - p, 3 - open) *
                          std::pow(q, static_cast<double>(uf.set_count()));
    w[static_cast<std::size_t>(partition_index(uf))] += weight;
  }
  return normalize(w);
}

}  // namespace

double dual_parameter(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
  check_q(q);
  return (1.0 - p) * q / ((1.0 - p) * q + p);
}

double self_dual_point(double q) {
  check_q(q);
  const double s = std::sqrt(q);
  return s / (1.0 + s);
}

CriticalSolution triangular_critical(double q) {
  check_q(q);
  auto f = [q](double y) { return y * y * y + 3.0 * y * y - q; };
  auto df = [](double y) { return 3.0 * y * y + 6.0 * y; };
  CriticalSolution s;
  s.q = q;
  s.y_c = solve_increasing(f, df, 0.0, std::cbrt(q));
  s.p_c = s.y_c / (1.0 + s.y_c);
  s.residual = f(s.y_c);
  return s;
}

CriticalSolution hexagonal_critical(double q) {
  check_q(q);
  auto f = [q](double y) { return y * y * y - 3.0 * q * y - q * q; };
  auto df = [q](double y) { return 3.0 * y * y - 3.0 * q; };
  const double lo = std::sqrt(3.0 * q);
  double hi = 2.0 * lo;
  while (f(hi) <= 0.0) hi *= 2.0;
  CriticalSolution s;
  s.q = q;
  s.y_c = solve_increasing(f, df, lo, hi);
  s.p_c = s.y_c / (1.0 + s.y_c);
  s.residual = f(s.y_c);
  return s;
}

PartitionLaw triangle_partition_law(double p, double q) {
  return gadget_law(3, {{{0, 1}, {0, 2}, {1, 2}}}, p, q);
}

PartitionLaw star_partition_law(double p, double q) {
  return gadget_law(4, {{{3, 0}, {3, 1}, {3, 2}}}, p, q);
}

StarTriangleReport star_triangle_compare(double p_triangle, double q) {
  StarTriangleReport r;
  r.q = q;
  r.p_triangle = p_triangle;
  r.p_star = dual_parameter(p_triangle, q);
  r.triangle = triangle_partition_law(r.p_triangle, q);
  r.star = star_partition_law(r.p_star, q);
  for (std::size_t i = 0; i < r.triangle.size(); ++i)
    r.max_deviation = std::max(r.max_deviation, std::abs(r.triangle[i] - r.star[i]));
  return r;
}

StarTriangleReport star_triangle_check(double q) { return star_triangle_compare(triangular_critical(q).p_c, q); }

}  // namespace fklab
