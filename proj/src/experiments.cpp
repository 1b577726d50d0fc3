#include "fklab/experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "fklab/critical.hpp"
#include "fklab/rng.hpp"

namespace fklab {
namespace {

Lattice square_torus(int m) { return build_lattice(Family::SquareTorus, m); }

MCEstimate complement(MCEstimate e) {
  e.mean = 1.0 - e.mean;
  return e;
}

}  // namespace

SamplerOptions derived_options(const SamplerOptions& options, std::uint64_t index) {
  SamplerOptions o = options;
  o.seed = derive_seed(options.seed, 0x5eed0000ULL + index);
  return o;
}

MCEstimate selfdual_crossing_experiment(double q, int n, int m, const SamplerOptions& options) {
  if (!(m > n) || n < 1) throw std::invalid_argument("need m > n >= 1");
  const Lattice torus = square_torus(m);
  const Params params{self_dual_point(q), q};
  return estimate(torus, BoundaryCondition::periodic(), params,
                  indicator(crossing_event(torus, {0, n, 0, n}, Direction::Horizontal)), options);
}

double selfdual_crossing_exact(double q, int n, int m, const ExactOptions& options) {
  if (!(m > n) || n < 1) throw std::invalid_argument("need m > n >= 1");
  const Lattice torus = square_torus(m);
  return event_probability(torus, BoundaryCondition::periodic(), {self_dual_point(q), q},
                           crossing_event(torus, {0, n, 0, n}, Direction::Horizontal), options);
}

double rsw_constant(double q, double alpha) {
  return std::pow(32.0 * (1.0 + q * q), -std::floor(2.0 * alpha));
}

double box_crossing_bound(double q) { return 1.0 / (16.0 * (1.0 + q * q)); }

RswReport rsw_experiment(double q, double alpha, int n, int m, const SamplerOptions& options) {
  const int width = static_cast<int>(std::floor(alpha * n));
  const int height = (3 * n) / 2;
  if (!(m > width) || !(m > height)) throw std::invalid_argument("torus too small for the rectangles");
  const Lattice torus = square_torus(m);
  const Params params{self_dual_point(q), q};
  const Observable obs[] = {
      indicator(crossing_event(torus, {0, width, 0, n}, Direction::Horizontal)),
      indicator(crossing_event(torus, {0, n, 0, height}, Direction::Vertical)),
  };
  const auto est = estimate_many(torus, BoundaryCondition::periodic(), params, obs, options);
  RswReport r;
  r.long_crossing = est[0];
  r.tall_crossing = est[1];
  r.long_bound = rsw_constant(q, alpha);
  r.tall_bound = box_crossing_bound(q);
  r.long_holds = r.long_crossing.mean - 3.0 * r.long_crossing.std_error >= r.long_bound;
  r.tall_holds = r.tall_crossing.mean - 3.0 * r.tall_crossing.std_error >= r.tall_bound;
  return r;
}

Event scan_event(const Lattice& torus, int n) { return crossing_event(torus, {0, n, 0, 2 * n}, Direction::Vertical); }

ScanResult threshold_scan(double q, int n, const std::vector<double>& p_grid, const SamplerOptions& options,
                          double eps) {
  if (p_grid.size() < 2) throw std::invalid_argument("scan needs at least two grid points");
  const Lattice torus = square_torus(4 * n);
  const Observable obs = indicator(scan_event(torus, n));
  ScanResult r;
  r.n = n;
  r.p = p_grid;
  for (std::size_t i = 0; i < p_grid.size(); ++i)
    r.estimates.push_back(estimate(torus, BoundaryCondition::periodic(), {p_grid[i], q}, obs,
                                   derived_options(options, static_cast<std::uint64_t>(n) * 100000 + i)));

  auto crossing = [&](double level) -> std::optional<double> {
    for (std::size_t i = 0; i + 1 < p_grid.size(); ++i) {
      const double a = r.estimates[i].mean, b = r.estimates[i + 1].mean;
      if (a < level && b >= level) return p_grid[i] + (level - a) / (b - a) * (p_grid[i + 1] - p_grid[i]);
    }
    return std::nullopt;
  };
  r.p_lo = crossing(eps);
  r.p_hi = crossing(1.0 - eps);
  if (r.p_lo && r.p_hi) r.width = *r.p_hi - *r.p_lo;
  for (std::size_t i = 0; i + 1 < p_grid.size(); ++i) {
    const auto& a = r.estimates[i];
    const auto& b = r.estimates[i + 1];
    const double sigma = std::hypot(a.std_error, b.std_error);
    if (b.mean < a.mean - 3.0 * sigma - 1e-12) r.monotonicity_violations.push_back(p_grid[i + 1]);
  }
  return r;
}

FailureFit failure_scaling(double q, double p, const std::vector<int>& sizes, const SamplerOptions& options) {
  FailureFit f;
  f.sizes = sizes;
  std::vector<double> x, y, s;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const int n = sizes[i];
    const Lattice torus = square_torus(4 * n);
    const auto est = complement(estimate(torus, BoundaryCondition::periodic(), {p, q}, indicator(scan_event(torus, n)),
                                         derived_options(options, 900000 + static_cast<std::uint64_t>(n))));
    f.failure.push_back(est);
    if (est.mean > 0.0 && est.std_error > 0.0) {
      x.push_back(std::log(static_cast<double>(n)));
      y.push_back(std::log(est.mean));
      s.push_back(est.std_error / est.mean);
    }
  }
  if (x.size() >= 2) {
    f.fit = weighted_linear_fit(x, y, s);
    f.decreasing = f.fit.slope < 0.0;
    for (std::size_t i = 0; i + 1 < f.failure.size(); ++i)
      f.decreasing = f.decreasing && f.failure[i + 1].mean < f.failure[i].mean;
  }
  return f;
}

DualityCheck duality_crosscheck(double q, double p, int n, const SamplerOptions& options) {
  const Lattice torus = square_torus(4 * n);
  const DualMap dm = dual_map(torus);
  const RectSpec rect{0, n, 0, 2 * n};
  DualityCheck d;
  d.primal = estimate(torus, BoundaryCondition::periodic(), {p, q},
                      indicator(crossing_event(torus, rect, Direction::Vertical)), derived_options(options, 1));
  d.dual = estimate(torus, BoundaryCondition::periodic(), {dual_parameter(p, q), q},
                    indicator(dual_crossing_event(dm, rect, Direction::Vertical)), derived_options(options, 2));
  const double sigma = std::hypot(d.primal.std_error, d.dual.std_error);
  d.z = sigma > 0.0 ? (d.primal.mean - d.dual.mean) / sigma : 0.0;
  return d;
}

CircuitChainResult circuit_chain_experiment(double q, double p, double alpha, int n_max,
                                            const SamplerOptions& options) {
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  CircuitChainResult r;
  const int radius = static_cast<int>(std::floor(std::pow(alpha, n_max + 2)));
  r.box_side = 2 * radius + 1;
  const Lattice box = build_lattice(Family::SquareBox, r.box_side);
  const VertexId centre = static_cast<VertexId>(radius * r.box_side + radius);
  std::vector<Event> events;
  std::vector<Observable> obs;
  for (int n = 1; n <= n_max; ++n) {
    r.ns.push_back(n);
    events.push_back(annulus_event(box, {alpha, n, centre}));
    obs.push_back(indicator(events.back()));
  }
  obs.push_back([events](const Configuration& c) {
    for (const Event& e : events)
      if (!e(c)) return 0.0;
    return 1.0;
  });
  const auto est = estimate_many(box, BoundaryCondition::wired(), {p, q}, obs, options);
  r.per_n.assign(est.begin(), est.end() - 1);
  r.intersection = est.back();
  return r;
}

DecayFit decay_experiment(double q, double p, const std::vector<int>& distances, const SamplerOptions& options,
                          bool with_wired) {
  if (distances.empty()) throw std::invalid_argument("no distances");
  DecayFit f;
  f.distances = distances;
  int dmax = 0;
  for (int d : distances) {
    if (d < 1) throw std::invalid_argument("distances must be positive");
    dmax = std::max(dmax, d);
  }
  const int half = 2 * dmax;
  f.box_side = 2 * half + 1;
  const Lattice box = build_lattice(Family::SquareBox, f.box_side);
  auto id = [&](int i, int j) { return static_cast<VertexId>(j * f.box_side + i); };
  const VertexId origin = id(half, half);

  auto run = [&](const BoundaryCondition& bc, std::uint64_t index) {
    std::vector<Observable> obs;
    for (int d : distances) {
      const VertexId target = id(half + d, half);
      obs.push_back([&box, bc, origin, target](const Configuration& c) {
        return connected(box, c, bc, origin, target) ? 1.0 : 0.0;
      });
    }
    return estimate_many(box, bc, {p, q}, obs, derived_options(options, index));
  };
  f.free_bc = run(BoundaryCondition::free(), 1);
  if (with_wired) f.wired_bc = run(BoundaryCondition::wired(), 2);

  std::vector<double> x, y, s;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    const MCEstimate& e = f.free_bc[i];
    if (e.mean <= 2.0 * e.std_error || e.std_error <= 0.0) {
      f.dropped.push_back(distances[i]);
      continue;
    }
    f.fitted.push_back(distances[i]);
    x.push_back(distances[i]);
    y.push_back(std::log(e.mean));
    s.push_back(e.std_error / e.mean);
  }
  if (x.size() >= 4) {
    f.fit = weighted_linear_fit(x, y, s);
    f.significance = f.fit.slope / f.fit.slope_error;
    f.valid = true;
  }
  return f;
}

}  // namespace fklab
