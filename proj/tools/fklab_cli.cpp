// fklab: command line front end for the random-cluster laboratory.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "fklab/configuration.hpp"
#include "fklab/critical.hpp"
#include "fklab/events.hpp"
#include "fklab/exact.hpp"
#include "fklab/experiments.hpp"
#include "fklab/lattice.hpp"
#include "fklab/sampler.hpp"
#include "fklab/snapshot.hpp"

using nlohmann::json;
using namespace fklab;

namespace {

struct Globals {
  double q = 1.0;
  std::optional<double> p;
  int size = 8;
  bool torus = false;
  std::string family;
  std::string bc = "free";
  std::uint64_t seed = 1;
  std::uint64_t sweeps = 20000;
  std::optional<std::uint64_t> burn_in;
  std::size_t chains = 8;
  int threads = 0;
  std::string schedule = "cluster";
  std::string out;
  std::string csv;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json to_json(const MCEstimate& e) {
  return {{"mean", e.mean},           {"std_error", e.std_error}, {"n_samples", e.n_samples},
          {"tau_int", e.tau_int},     {"seed", e.seed},           {"converged", e.converged},
          {"note", e.note}};
}

struct CsvRow {
  double p;
  int n;
  MCEstimate e;
};

class Output {
 public:
  explicit Output(const Globals& g) : g_(g) {}

  void emit(json j) const {
    j["params"] = {{"q", g_.q}, {"seed", g_.seed}, {"sweeps", g_.sweeps}, {"chains", g_.chains},
                   {"schedule", g_.schedule}};
    if (g_.p) j["params"]["p"] = *g_.p;
    const std::string text = j.dump(2) + "\n";
    if (g_.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(g_.out);
      if (!f) throw std::runtime_error("cannot write " + g_.out);
      f << text;
    }
  }

  void csv(const std::vector<CsvRow>& rows) const {
    if (g_.csv.empty()) return;
    std::ofstream f(g_.csv);
    if (!f) throw std::runtime_error("cannot write " + g_.csv);
    f << "p,n,estimate,stderr,tau_int\n";
    for (const auto& r : rows)
      f << fmt(r.p) << ',' << r.n << ',' << fmt(r.e.mean) << ',' << fmt(r.e.std_error) << ',' << fmt(r.e.tau_int)
        << '\n';
  }

 private:
  const Globals& g_;
};

Family chosen_family(const Globals& g) {
  if (!g.family.empty()) return parse_family(g.family);
  return g.torus ? Family::SquareTorus : Family::SquareBox;
}

BoundaryCondition chosen_bc(const Globals& g, const Lattice& lattice) {
  if (lattice.periodic()) return BoundaryCondition::periodic();
  return parse_boundary_condition(g.bc);
}

SamplerOptions sampler_options(const Globals& g) {
  SamplerOptions o;
  o.schedule = parse_schedule(g.schedule);
  o.sweeps = g.sweeps;
  o.burn_in = g.burn_in;
  o.chains = g.chains;
  o.seed = g.seed;
  return o;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  if (out.empty()) throw std::invalid_argument("empty list: " + s);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-cluster model laboratory"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--q", g.q, "Cluster weight q >= 1");
  app.add_option("--p", g.p, "Edge weight p (defaults to the self-dual point where relevant)");
  app.add_option("--size", g.size, "Box side n or torus size m");
  app.add_flag("--torus", g.torus, "Use the square torus instead of the square box");
  app.add_option("--family", g.family, "square_box, square_torus, triangular, triangular_torus, hexagonal");
  app.add_option("--bc", g.bc, "free, wired or periodic")->check(CLI::IsMember({"free", "wired", "periodic"}));
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--sweeps", g.sweeps, "Steps per chain, burn-in included");
  app.add_option("--burn-in", g.burn_in, "Explicit burn-in (default: adaptive)");
  app.add_option("--chains", g.chains, "Independent chains (fixed, independent of --threads)");
  app.add_option("--threads", g.threads, "OpenMP threads (0: runtime default)");
  app.add_option("--schedule", g.schedule, "heatbath, cluster or mixed")
      ->check(CLI::IsMember({"heatbath", "cluster", "mixed"}));
  app.add_option("--out", g.out, "Write JSON here instead of stdout");
  app.add_option("--csv", g.csv, "Write per-point CSV rows here");
  app.fallthrough();

  std::string event_text;
  std::string snapshot_path;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "Exact probability of an event by enumeration");
  enumerate_cmd->add_option("--event", event_text, "Event spec, e.g. crossing:h:0,0,2,2")->required();

  auto* sample_cmd = app.add_subcommand("sample", "Monte Carlo estimate of an event");
  sample_cmd->add_option("--event", event_text, "Event spec")->required();
  sample_cmd->add_option("--snapshot", snapshot_path, "Write the final state of one chain (FKCFG1)");

  int n = 8;
  double alpha = 1.0;
  std::string direction = "h";
  auto* crossing_cmd = app.add_subcommand("crossing", "Crossing of [0, alpha n) x [0, n) on the torus");
  crossing_cmd->add_option("--n", n, "Rectangle height");
  crossing_cmd->add_option("--alpha", alpha, "Aspect ratio");

  std::string sizes_text = "8,16,32";
  double p_min = 0.3, p_max = 0.95, p_step = 0.01, eps = 0.05;
  auto* scan_cmd = app.add_subcommand("scan", "Crossing probability scan and threshold window");
  scan_cmd->add_option("--sizes", sizes_text, "Comma separated n values (torus 4n)");
  scan_cmd->add_option("--p-min", p_min, "Lowest p of the grid");
  scan_cmd->add_option("--p-max", p_max, "Highest p of the grid");
  scan_cmd->add_option("--p-step", p_step, "Grid spacing");
  scan_cmd->add_option("--eps", eps, "Window threshold");

  int n_max = 3;
  auto* circuits_cmd = app.add_subcommand("circuits", "Annulus circuit events on a wired box");
  circuits_cmd->add_option("--alpha", alpha, "Annulus ratio")->default_val(2.0);
  circuits_cmd->add_option("--nmax", n_max, "Largest annulus index");

  std::string distances_text = "1,2,3,4,5,6";
  auto* decay_cmd = app.add_subcommand("decay", "Two-point function decay fit in a free box");
  decay_cmd->add_option("--distances", distances_text, "Comma separated distances");

  std::string lattice_name = "square";
  auto* critical_cmd = app.add_subcommand("critical", "Critical point of a lattice");
  critical_cmd->add_option("--lattice", lattice_name)->check(CLI::IsMember({"square", "triangular", "hexagonal"}));

  auto* star_cmd = app.add_subcommand("star-triangle", "Star-triangle partition law check");

  CLI11_PARSE(app, argc, argv);
  if (g.threads > 0) omp_set_num_threads(g.threads);
  const Output out(g);
  bool ok = true;

  try {
    if (*enumerate_cmd) {
      const Lattice lattice = build_lattice(chosen_family(g), g.size);
      const BoundaryCondition bc = chosen_bc(g, lattice);
      const Params params{g.p.value_or(self_dual_point(g.q)), g.q};
      const EventSpec spec = parse_event_spec(event_text);
      const Event ev = make_event(lattice, bc, spec);
      const ExactResult r = enumerate(lattice, bc, params, std::span<const Event>(&ev, 1));
      out.emit(json::parse(exact_json(lattice, bc, params, spec.text, r.probabilities[0], r.Z)));
    } else if (*sample_cmd) {
      const Lattice lattice = build_lattice(chosen_family(g), g.size);
      const BoundaryCondition bc = chosen_bc(g, lattice);
      const Params params{g.p.value_or(self_dual_point(g.q)), g.q};
      const EventSpec spec = parse_event_spec(event_text);
      const MCEstimate e = estimate(lattice, bc, params, indicator(make_event(lattice, bc, spec)), sampler_options(g));
      out.emit({{"lattice", json::parse(descriptor_json(lattice))}, {"bc", bc.name()}, {"event", spec.text},
                {"p", params.p}, {"estimate", to_json(e)}});
      out.csv({{params.p, g.size, e}});
      if (!snapshot_path.empty()) {
        Chain chain(lattice, bc, params, derive_seed(g.seed, 0));
        for (std::uint64_t s = 0; s < g.sweeps; ++s) chain.step(parse_schedule(g.schedule));
        std::ofstream f(snapshot_path, std::ios::binary);
        write_snapshot(f, lattice, chain.config(), chain.seed());
      }
    } else if (*crossing_cmd) {
      const double p = g.p.value_or(self_dual_point(g.q));
      const int m = g.size;
      const int width = static_cast<int>(std::floor(alpha * n));
      const Lattice torus = build_lattice(Family::SquareTorus, m);
      const MCEstimate e = estimate(torus, BoundaryCondition::periodic(), {p, g.q},
                                    indicator(crossing_event(torus, {0, width, 0, n}, Direction::Horizontal)),
                                    sampler_options(g));
      json j{{"n", n}, {"m", m}, {"alpha", alpha}, {"p", p}, {"estimate", to_json(e)}};
      if (alpha == 1.0 && p == self_dual_point(g.q)) {
        const bool pass = std::abs(e.mean - 0.5) <= 3.0 * e.std_error;
        j["check_half_within_3sigma"] = pass;
        ok = ok && pass;
      }
      out.emit(j);
      out.csv({{p, n, e}});
    } else if (*scan_cmd) {
      std::vector<double> grid;
      for (int i = 0; p_min + i * p_step <= p_max + 1e-12; ++i) grid.push_back(p_min + i * p_step);
      std::vector<CsvRow> rows;
      json scans = json::array();
      std::optional<double> last_width;
      for (int size : parse_int_list(sizes_text)) {
        const ScanResult r = threshold_scan(g.q, size, grid, sampler_options(g), eps);
        for (std::size_t i = 0; i < r.p.size(); ++i) rows.push_back({r.p[i], size, r.estimates[i]});
        json s{{"n", size}, {"monotonicity_violations", r.monotonicity_violations}};
        if (r.width) {
          s["p_lo"] = *r.p_lo;
          s["p_hi"] = *r.p_hi;
          s["width"] = *r.width;
          if (last_width && !(*r.width < *last_width)) ok = false;
          last_width = r.width;
        } else {
          ok = false;
        }
        if (!r.monotonicity_violations.empty()) ok = false;
        scans.push_back(s);
      }
      out.emit({{"scans", scans}, {"eps", eps}, {"checks_pass", ok}});
      out.csv(rows);
    } else if (*circuits_cmd) {
      const double p = g.p.value_or(0.7);
      const CircuitChainResult r = circuit_chain_experiment(g.q, p, alpha, n_max, sampler_options(g));
      json per = json::array();
      std::vector<CsvRow> rows;
      for (std::size_t i = 0; i < r.ns.size(); ++i) {
        per.push_back({{"n", r.ns[i]}, {"estimate", to_json(r.per_n[i])}});
        rows.push_back({p, r.ns[i], r.per_n[i]});
      }
      const bool positive = r.intersection.mean > 3.0 * r.intersection.std_error;
      ok = ok && positive;
      out.emit({{"p", p}, {"alpha", alpha}, {"box_side", r.box_side}, {"per_n", per},
                {"intersection", to_json(r.intersection)}, {"check_intersection_positive", positive}});
      out.csv(rows);
    } else if (*decay_cmd) {
      const double p = g.p.value_or(0.4);
      const DecayFit f = decay_experiment(g.q, p, parse_int_list(distances_text), sampler_options(g));
      json pts = json::array();
      std::vector<CsvRow> rows;
      for (std::size_t i = 0; i < f.distances.size(); ++i) {
        json pt{{"distance", f.distances[i]}, {"free", to_json(f.free_bc[i])}};
        if (!f.wired_bc.empty()) pt["wired"] = to_json(f.wired_bc[i]);
        pts.push_back(pt);
        rows.push_back({p, f.distances[i], f.free_bc[i]});
      }
      const bool pass = f.valid && f.significance <= -5.0;
      ok = ok && pass;
      out.emit({{"p", p}, {"box_side", f.box_side}, {"points", pts}, {"dropped", f.dropped},
                {"slope", f.fit.slope}, {"slope_error", f.fit.slope_error}, {"intercept", f.fit.intercept},
                {"chi2", f.fit.chi2}, {"dof", f.fit.dof}, {"significance", f.significance},
                {"check_slope_negative_5sigma", pass}});
      out.csv(rows);
    } else if (*critical_cmd) {
      json j{{"lattice", lattice_name}, {"q", g.q}};
      if (lattice_name == "square") {
        const double p = self_dual_point(g.q);
        j["p_c"] = p;
        j["y_c"] = p / (1.0 - p);
        j["residual"] = dual_parameter(p, g.q) - p;
      } else {
        const CriticalSolution s = lattice_name == "triangular" ? triangular_critical(g.q) : hexagonal_critical(g.q);
        j["p_c"] = s.p_c;
        j["y_c"] = s.y_c;
        j["residual"] = s.residual;
      }
      ok = ok && std::abs(j["residual"].get<double>()) <= 1e-12;
      out.emit(j);
    } else if (*star_cmd) {
      const StarTriangleReport at = star_triangle_check(g.q);
      const StarTriangleReport off = star_triangle_compare(at.p_triangle + 0.1, g.q);
      ok = ok && at.max_deviation <= 1e-10 && off.max_deviation > 1e-3;
      out.emit({{"p_triangle", at.p_triangle}, {"p_star", at.p_star}, {"triangle", at.triangle}, {"star", at.star},
                {"max_deviation", at.max_deviation}, {"off_critical_deviation", off.max_deviation},
                {"checks_pass", ok}});
    }
  } catch (const std::exception& ex) {
    std::cerr << "fklab: " << ex.what() << "\n";
    return 2;
  }
  return ok ? 0 : 1;
}
