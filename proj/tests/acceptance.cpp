// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
//
//   acceptance [--seeds N]

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "support/checks.hpp"

using namespace prosa;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("criterion %d [%s] %s: %s\n", id, ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  failures += ok ? 0 : 1;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

void random_graph_formulas() {
  struct Row {
    std::uint64_t v, e;
    double cc, apl;
  };
  // Reference (V, E) pairs with the expected random-graph CC and APL.
  const Row rows[] = {{400, 15200, 0.095, 1.65}, {600, 14422, 0.04, 2.01},
                      {800, 14653, 0.02, 2.29},  {1000, 14429, 0.014, 2.58},
                      {3000, 15957, 0.002, 4.8}, {5000, 19901, 0.0008, 6.17}};
  bool ok = true;
  double worst = 0.0;
  for (const auto& r : rows) {
    const double dc = std::fabs(cc_random(r.v, r.e) - r.cc);
    const double da = std::fabs(apl_random(r.v, r.e) - r.apl);
    worst = std::max({worst, dc, da});
    ok = ok && dc <= 0.01 && da <= 0.01;
  }
  report(1, "random-graph formulas", ok, fmt("6 rows, worst abs error %.4f", worst));
}

ExperimentConfig base_config(std::size_t peers, std::uint64_t seed, Strategy s) {
  ExperimentConfig c;
  c.n_peers = peers;
  c.seed = seed;
  c.strategy = s;
  c.true_apl_max_nodes = 1000;
  return c;
}

struct Cell {
  ExperimentStats prosa, flood, walk;
  std::optional<PathLengthStats> bfs;
};

bool ordering_holds(const Cell& c) {
  const auto& p = c.prosa;
  const auto& f = c.flood;
  const auto& w = c.walk;
  return f.success_rate >= p.success_rate && p.success_rate >= w.success_rate &&
         p.avg_links_visited < w.avg_links_visited && w.avg_links_visited < f.avg_links_visited &&
         p.avg_docs_retrieved > w.avg_docs_retrieved && p.avg_deepness < f.avg_deepness &&
         p.avg_deepness < w.avg_deepness && f.avg_links_visited >= 10.0 * p.avg_links_visited;
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t n_seeds = 5;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::strcmp(argv[i], "--seeds") == 0) n_seeds = std::strtoull(argv[i + 1], nullptr, 10);
  }
  const std::size_t need = n_seeds - n_seeds / 5;  // 4 of 5

  random_graph_formulas();

  // Criteria 2-4 share the same runs.
  std::size_t small_world = 0;
  std::size_t ordered = 0;
  std::string ratios;
  std::string orders;
  double worst_apl = 0.0;
  for (std::uint64_t seed = 1; seed <= n_seeds; ++seed) {
    std::vector<Cell> cells;
    for (std::size_t peers : {400, 1000}) {
      Cell c;
      auto pr = run_experiment(base_config(peers, seed, Strategy::Prosa));
      c.prosa = pr.stats;
      c.bfs = pr.true_apl;
      c.flood = run_experiment(base_config(peers, seed, Strategy::Flood)).stats;
      c.walk = run_experiment(base_config(peers, seed, Strategy::RandomWalk)).stats;
      if (c.bfs && c.bfs->mean > 0.0) {
        worst_apl = std::max(worst_apl, std::fabs(c.prosa.apl - c.bfs->mean) / c.bfs->mean);
      }
      cells.push_back(c);
    }
    const double r400 = cells[0].prosa.cc_ratio();
    const double r1000 = cells[1].prosa.cc_ratio();
    const double r3000 = run_experiment(base_config(3000, seed, Strategy::Prosa)).stats.cc_ratio();
    small_world += r400 >= 2.0 && r400 < r1000 && r1000 < r3000;
    ratios += fmt(" %.2f/%.2f/%.2f", r400, r1000, r3000);

    const bool o = ordering_holds(cells[0]) && ordering_holds(cells[1]);
    ordered += o;
    orders += o ? " ok" : " x";
  }
  report(2, "small-world emergence", small_world >= need,
         std::to_string(small_world) + "/" + std::to_string(n_seeds) +
             " seeds, ratio at 400/1000/3000:" + ratios);
  report(3, "strategy ordering", ordered >= need,
         std::to_string(ordered) + "/" + std::to_string(n_seeds) + " seeds at 400 and 1000:" +
             orders);

  const auto cc = checks::clustering_oracle();
  const bool apl_ok = worst_apl < 0.25;
  report(4, "metric oracle equivalence", cc.ok && apl_ok,
         (cc.ok ? std::string("200 graphs match to 1e-12") : cc.detail) +
             fmt(", worst deepness-vs-BFS APL gap %.1f%%", 100.0 * worst_apl));

  const auto inv = checks::invariant_suite();
  report(5, "protocol invariants", inv.ok && inv.events >= 10000,
         (inv.ok ? std::string("all hold") : inv.detail) + " over " +
             std::to_string(inv.events) + " events");

  const auto vsm = checks::vsm_suite();
  report(6, "vector space model", vsm.ok, vsm.ok ? "all hold" : vsm.detail);

  return failures == 0 ? 0 : 1;
}
