// Command line front end: generators, solvers, reductions, local search, and
// a benchmark harness over the core library. Results are printed as JSON on
// standard output (CSV for the bench and localsearch commands); exit code 0
// on success, 1 for "no" answers of decide/detect commands, 2 on usage or
// input errors, 4 when --verify finds a mismatch between the fast algorithm
// and its reference.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "tspfg/bottleneck.hpp"
#include "tspfg/generators.hpp"
#include "tspfg/io.hpp"
#include "tspfg/kopt.hpp"
#include "tspfg/pyramidal.hpp"
#include "tspfg/reductions.hpp"
#include "tspfg/two_opt_engine.hpp"

using namespace tspfg;

namespace {

constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitVerifyMismatch = 4;

// All numeric CLI output uses 12 significant digits.
std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text << "\n";
  else
    save_text(out_path, text + "\n");
}

long long micros_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::microseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

OrderedPointSet require_points(const Instance& inst) {
  if (const auto* p = std::get_if<OrderedPointSet>(&inst)) return *p;
  throw std::runtime_error("this command needs a points instance");
}

// Graph commands accept point instances by rounding distances to integers.
SymmetricWeightedGraph as_graph(const Instance& inst) {
  if (const auto* g = std::get_if<SymmetricWeightedGraph>(&inst)) return *g;
  return rounded_distance_graph(std::get<OrderedPointSet>(inst));
}

int bench_threads() {
  const char* env = std::getenv("TSPFG_THREADS");
  int t = env ? std::atoi(env) : 1;
  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  return std::clamp(t, 1, std::max(1, hw));
}

// Runs the tasks on up to bench_threads() workers; each task owns its slot.
void run_tasks(std::vector<std::function<void()>>& tasks) {
  const int workers = std::min<int>(bench_threads(), static_cast<int>(tasks.size()));
  if (workers <= 1) {
    for (auto& t : tasks) t();
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (size_t i = next++; i < tasks.size(); i = next++) tasks[i]();
    });
  for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------- gen ------

struct GenOpts {
  std::string type = "points";
  int n = 100;
  std::uint64_t seed = 0;
  std::int64_t wmin = -100, wmax = 100;
  bool perturbed = false;
  bool pretty = false;
  std::string out;
};

int cmd_gen(const GenOpts& o) {
  Instance inst;
  if (o.type == "points") {
    inst = gen_random_points(o.n, o.seed);
  } else if (o.type == "graph") {
    if (o.wmin > o.wmax) throw std::runtime_error("--wmin must be <= --wmax");
    inst = gen_random_graph(o.n, o.seed, o.wmin, o.wmax);
  } else if (o.type == "disjointness") {
    // Random U, V of size n drawn from a universe of 4n values.
    std::mt19937_64 rng(o.seed);
    const int universe = std::max(2, 4 * o.n);
    auto draw = [&] {
      std::set<int> s;
      while (static_cast<int>(s.size()) < o.n)
        s.insert(1 + static_cast<int>(rng() % universe));
      return std::vector<int>(s.begin(), s.end());
    };
    const auto U = draw(), V = draw();
    const auto d = gen_disjointness_points(U, V, o.perturbed);
    std::cerr << "bottleneck threshold B = " << fmt12(d.B) << "\n";
    inst = d.points;
  } else {
    throw std::runtime_error("unknown --type " + o.type);
  }
  emit(o.out, serialize_instance(inst, o.pretty));
  return 0;
}

// ---------------------------------------------------------- pyramidal ------

struct PyramidalOpts {
  std::string path, algo = "fast", out;
  bool verify = false, pretty = false;
};

int cmd_pyramidal(const PyramidalOpts& o) {
  const auto pts = require_points(load_instance(o.path));
  const auto t0 = std::chrono::steady_clock::now();
  const PyramidalResult r =
      o.algo == "quadratic" ? pyramidal_quadratic(pts) : pyramidal_fast(pts);
  const long long us = micros_since(t0);
  if (o.verify) {
    const PyramidalResult ref =
        o.algo == "quadratic" ? pyramidal_fast(pts) : pyramidal_quadratic(pts);
    if (std::abs(r.length - ref.length) > 1e-6 * std::max(1.0, std::abs(ref.length))) {
      std::cerr << "verify mismatch: " << fmt12(r.length) << " vs "
                << fmt12(ref.length) << "\n";
      return kExitVerifyMismatch;
    }
  }
  emit(o.out, std::string("{\"command\":\"pyramidal\",\"algo\":\"") + o.algo +
                  "\",\"n\":" + std::to_string(pts.n()) +
                  ",\"length\":" + fmt12(r.length) +
                  ",\"order\":" + join_ints(r.tour.order) +
                  ",\"micros\":" + std::to_string(us) + "}");
  return 0;
}

// --------------------------------------------------------- bottleneck ------

struct BottleneckOpts {
  std::string path, algo = "fast", out;
  double B = 0.0;
  bool verify = false, pretty = false;
};

int cmd_bottleneck_decide(const BottleneckOpts& o) {
  const auto pts = require_points(load_instance(o.path));
  const auto t0 = std::chrono::steady_clock::now();
  const bool yes = bottleneck_decide(pts, o.B);
  const long long us = micros_since(t0);
  if (o.verify) {
    const bool ref = bottleneck_quadratic(pts).value <= o.B;
    if (yes != ref) {
      std::cerr << "verify mismatch: decide=" << yes << " reference=" << ref << "\n";
      return kExitVerifyMismatch;
    }
  }
  emit(o.out, std::string("{\"command\":\"bottleneck-decide\",\"B\":") + fmt12(o.B) +
                  ",\"answer\":" + (yes ? "true" : "false") +
                  ",\"micros\":" + std::to_string(us) + "}");
  return yes ? 0 : kExitNo;
}

int cmd_bottleneck_opt(const BottleneckOpts& o) {
  const auto pts = require_points(load_instance(o.path));
  const auto t0 = std::chrono::steady_clock::now();
  double value = 0.0;
  std::string order_json;
  if (o.algo == "quadratic") {
    const auto r = bottleneck_quadratic(pts);
    value = r.value;
    order_json = ",\"order\":" + join_ints(r.tour.order);
  } else if (o.algo == "search") {
    value = bottleneck_optimize(pts);
  } else {
    value = bottleneck_fast(pts);
  }
  const long long us = micros_since(t0);
  if (o.verify) {
    const double ref = bottleneck_quadratic(pts).value;
    if (std::abs(value - ref) > 1e-9 * std::max(1.0, std::abs(ref))) {
      std::cerr << "verify mismatch: " << fmt12(value) << " vs " << fmt12(ref) << "\n";
      return kExitVerifyMismatch;
    }
  }
  emit(o.out, std::string("{\"command\":\"bottleneck-opt\",\"algo\":\"") + o.algo +
                  "\",\"value\":" + fmt12(value) + order_json +
                  ",\"micros\":" + std::to_string(us) + "}");
  return 0;
}

// --------------------------------------------------------------- kopt ------

struct KoptOpts {
  std::string graph_path, tour_path, algo = "fast", out;
  int k = 3;
  int max_iters = 1000;
  bool verify = false, pretty = false;
};

std::optional<KMoveResult> run_kopt(const SymmetricWeightedGraph& g, const Tour& t,
                                    int k, const std::string& algo) {
  return algo == "brute" ? best_kmove_bruteforce(g, t, k) : best_kmove_fast(g, t, k);
}

int cmd_kopt_detect(const KoptOpts& o) {
  const auto g = as_graph(load_instance(o.graph_path));
  const auto t = load_tour(o.tour_path);
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = run_kopt(g, t, o.k, o.algo);
  const long long us = micros_since(t0);
  if (o.verify) {
    const auto ref = run_kopt(g, t, o.k, o.algo == "brute" ? "fast" : "brute");
    const bool ok = r.has_value() == ref.has_value() &&
                    (!r || r->delta == ref->delta);
    if (!ok) {
      std::cerr << "verify mismatch between fast and brute\n";
      return kExitVerifyMismatch;
    }
  }
  std::string body = std::string("{\"command\":\"kopt-detect\",\"k\":") +
                     std::to_string(o.k) + ",\"algo\":\"" + o.algo +
                     "\",\"found\":" + (r ? "true" : "false");
  if (r)
    body += ",\"delta\":" + std::to_string(r->delta) +
            ",\"positions\":" + join_ints(r->move.positions) +
            ",\"signature\":" + join_ints(r->move.sig.pi);
  body += ",\"micros\":" + std::to_string(us) + "}";
  emit(o.out, body);
  return r ? 0 : kExitNo;
}

int cmd_kopt_optimize(const KoptOpts& o) {
  const auto g = as_graph(load_instance(o.graph_path));
  Tour t = load_tour(o.tour_path);
  const auto t0 = std::chrono::steady_clock::now();
  std::int64_t total = 0;
  int iters = 0;
  while (iters < o.max_iters) {
    const auto r = run_kopt(g, t, o.k, o.algo);
    if (!r) break;
    if (o.verify) {
      const auto ref = run_kopt(g, t, o.k, o.algo == "brute" ? "fast" : "brute");
      if (!ref || ref->delta != r->delta) {
        std::cerr << "verify mismatch between fast and brute\n";
        return kExitVerifyMismatch;
      }
    }
    t = apply_kmove(t, r->move);
    total += r->delta;
    ++iters;
  }
  const long long us = micros_since(t0);
  emit(o.out, std::string("{\"command\":\"kopt-optimize\",\"k\":") +
                  std::to_string(o.k) + ",\"algo\":\"" + o.algo +
                  "\",\"iters\":" + std::to_string(iters) +
                  ",\"total_delta\":" + std::to_string(total) +
                  ",\"cost\":" + std::to_string(tour_cost(g, t)) +
                  ",\"order\":" + join_ints(t.order) +
                  ",\"micros\":" + std::to_string(us) + "}");
  return 0;
}

// -------------------------------------------------------- localsearch ------

struct LocalSearchOpts {
  std::string path, tour_path, moves = "2opt", engine = "fast", out;
  int max_iters = 1000000;
  bool pretty = false;
};

int cmd_localsearch(const LocalSearchOpts& o) {
  if (o.moves != "2opt") throw std::runtime_error("unknown --moves " + o.moves);
  const auto pts = require_points(load_instance(o.path));
  Tour t = o.tour_path.empty() ? Tour::identity(pts.n()) : load_tour(o.tour_path);
  std::ostringstream csv;
  csv << "iter,delta,cost,micros\n";
  if (o.engine == "naive") {
    double cost = tour_cost(pts, t);
    for (int it = 0; it < o.max_iters; ++it) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto m = best_two_move_naive(pts, t);
      if (!(m.delta < 0.0)) break;
      std::reverse(t.order.begin() + m.p + 1, t.order.begin() + m.q + 1);
      const long long us = micros_since(t0);
      cost += m.delta;
      csv << it << "," << fmt12(m.delta) << "," << fmt12(cost) << "," << us << "\n";
    }
  } else if (o.engine == "fast") {
    TourEngine eng(pts, t);
    for (int it = 0; it < o.max_iters; ++it) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto m = eng.best_move();
      if (!(m.delta < 0.0)) break;
      eng.apply(m);
      const long long us = micros_since(t0);
      csv << it << "," << fmt12(m.delta) << "," << fmt12(eng.cost()) << "," << us
          << "\n";
    }
  } else {
    throw std::runtime_error("unknown --engine " + o.engine);
  }
  std::string text = csv.str();
  if (!text.empty() && text.back() == '\n') text.pop_back();
  emit(o.out, text);
  return 0;
}

// ------------------------------------------------------------- reduce ------

struct ReduceOpts {
  std::string graph_path, tour_path, out;
  bool shift = false, pretty = false;
};

// Optional export shift to non-negative weights: adds 4M (M = max absolute
// weight) to every edge, which changes every k-move delta by 0 for fixed k
// edge counts removed and inserted, so improving moves are preserved.
SymmetricWeightedGraph shifted(const SymmetricWeightedGraph& g, std::int64_t& s) {
  s = 4 * g.max_abs_weight();
  SymmetricWeightedGraph h(g.n());
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j) h.set_weight(i, j, g.weight(i, j) + s);
  return h;
}

int cmd_reduce_nt_to_3opt(const ReduceOpts& o) {
  const auto g = as_graph(load_instance(o.graph_path));
  auto inst = nt_to_3opt(g);
  std::int64_t s = 0;
  if (o.shift) inst.graph = shifted(inst.graph, s);
  emit(o.out, std::string("{\"command\":\"nt-to-3opt\",\"shift\":") +
                  std::to_string(s) + ",\"instance\":" +
                  serialize_instance(Instance{inst.graph}, o.pretty) +
                  ",\"tour\":" + serialize_tour(inst.tour, o.pretty) + "}");
  return 0;
}

int cmd_reduce_3opt_to_nt(const ReduceOpts& o) {
  const auto g = as_graph(load_instance(o.graph_path));
  const auto t = load_tour(o.tour_path);
  auto red = threeopt_to_nt(g, t);
  std::int64_t s = 0;
  if (o.shift) red.graph = shifted(red.graph, s);
  emit(o.out, std::string("{\"command\":\"3opt-to-nt\",\"precheck_hit\":") +
                  (red.precheck_hit ? "true" : "false") +
                  ",\"components\":" + std::to_string(red.characteristics.size()) +
                  ",\"n\":" + std::to_string(red.n) +
                  ",\"shift\":" + std::to_string(s) + ",\"instance\":" +
                  serialize_instance(Instance{red.graph}, o.pretty) + "}");
  return 0;
}

// -------------------------------------------------------------- bench ------

struct BenchOpts {
  std::string suite = "pyramidal", out;
  std::vector<int> sizes;
  std::vector<std::uint64_t> seeds;
  int k = 4;
  int iters = 20;  // timed iterations for the localsearch suite
};

struct BenchRow {
  std::string algo;
  int n;
  std::uint64_t seed;
  std::string answer;
  long long micros;
};

long long median_ll(std::vector<long long> v) {
  std::sort(v.begin(), v.end());
  return v.empty() ? 0 : v[v.size() / 2];
}

int cmd_bench(const BenchOpts& o) {
  BenchOpts b = o;
  if (b.seeds.empty()) b.seeds = {1, 2, 3};
  std::vector<std::string> algos;
  if (b.suite == "pyramidal") {
    if (b.sizes.empty()) b.sizes = {2048, 4096, 8192};
    algos = {"fast", "quadratic"};
  } else if (b.suite == "bottleneck") {
    if (b.sizes.empty()) b.sizes = {128, 256, 512};
    algos = {"fast", "quadratic", "search"};
  } else if (b.suite == "kopt") {
    if (b.sizes.empty()) b.sizes = {30, 60, 120};
    algos = {"fast", "brute"};
  } else if (b.suite == "localsearch") {
    if (b.sizes.empty()) b.sizes = {1000, 2000, 5000};
    algos = {"engine", "naive"};
  } else {
    throw std::runtime_error("unknown --suite " + b.suite);
  }

  std::vector<BenchRow> rows;
  for (const auto& algo : algos)
    for (int n : b.sizes)
      for (auto seed : b.seeds) rows.push_back({algo, n, seed, "", 0});

  std::vector<std::function<void()>> tasks;
  for (auto& row : rows)
    tasks.emplace_back([&row, &b] {
      const auto t0 = std::chrono::steady_clock::now();
      if (b.suite == "pyramidal") {
        const auto pts = gen_random_points(row.n, row.seed);
        const auto r = row.algo == "fast" ? pyramidal_fast(pts)
                                          : pyramidal_quadratic(pts);
        row.micros = micros_since(t0);
        row.answer = fmt12(r.length);
      } else if (b.suite == "bottleneck") {
        const auto pts = gen_random_points(row.n, row.seed);
        double v;
        if (row.algo == "quadratic")
          v = bottleneck_quadratic(pts).value;
        else if (row.algo == "search")
          v = bottleneck_optimize(pts);
        else
          v = bottleneck_fast(pts);
        row.micros = micros_since(t0);
        row.answer = fmt12(v);
      } else if (b.suite == "kopt") {
        const auto g = gen_random_graph(row.n, row.seed, -1000, 1000);
        const auto t = Tour::identity(row.n);
        const auto t1 = std::chrono::steady_clock::now();
        const auto r = row.algo == "brute" ? best_kmove_bruteforce(g, t, b.k)
                                           : best_kmove_fast(g, t, b.k);
        row.micros = micros_since(t1);
        row.answer = r ? std::to_string(r->delta) : "none";
      } else {  // localsearch: median per-iteration time, init excluded
        const auto pts = gen_random_points(row.n, row.seed);
        Tour t = Tour::identity(row.n);
        std::vector<long long> per_iter;
        double cost;
        if (row.algo == "engine") {
          TourEngine eng(pts, t);
          for (int it = 0; it < b.iters; ++it) {
            const auto t1 = std::chrono::steady_clock::now();
            const auto m = eng.best_move();
            if (!(m.delta < 0.0)) break;
            eng.apply(m);
            per_iter.push_back(micros_since(t1));
          }
          cost = eng.cost();
        } else {
          for (int it = 0; it < b.iters; ++it) {
            const auto t1 = std::chrono::steady_clock::now();
            const auto m = best_two_move_naive(pts, t);
            if (!(m.delta < 0.0)) break;
            std::reverse(t.order.begin() + m.p + 1, t.order.begin() + m.q + 1);
            per_iter.push_back(micros_since(t1));
          }
          cost = tour_cost(pts, t);
        }
        row.micros = median_ll(per_iter);
        row.answer = fmt12(cost);
      }
    });
  run_tasks(tasks);

  std::ostringstream csv;
  csv << "suite,algo,n,seed,answer,micros\n";
  for (const auto& r : rows)
    csv << b.suite << "," << r.algo << "," << r.n << "," << r.seed << ","
        << r.answer << "," << r.micros << "\n";
  // Doubling-ratio summary: median micros per (algo, n), ratios between
  // consecutive sizes, median of those ratios per algorithm.
  for (const auto& algo : algos) {
    std::vector<long long> med;
    for (int n : b.sizes) {
      std::vector<long long> v;
      for (const auto& r : rows)
        if (r.algo == algo && r.n == n) v.push_back(r.micros);
      med.push_back(median_ll(v));
    }
    std::vector<double> ratios;
    for (size_t i = 1; i < med.size(); ++i)
      if (med[i - 1] > 0) ratios.push_back(double(med[i]) / double(med[i - 1]));
    if (!ratios.empty()) {
      std::sort(ratios.begin(), ratios.end());
      csv << "# doubling-ratio," << algo << ","
          << fmt12(ratios[ratios.size() / 2]) << "\n";
    }
  }
  std::string text = csv.str();
  if (!text.empty() && text.back() == '\n') text.pop_back();
  emit(b.out, text);
  return 0;
}

// ----------------------------------------------------------- selftest ------

int cmd_selftest() {
  int failures = 0;
  auto report = [&](const std::string& name, bool ok) {
    std::cout << name << ": " << (ok ? "ok" : "FAIL") << "\n";
    if (!ok) ++failures;
  };

  {
    bool ok = true;
    for (std::uint64_t s = 1; s <= 10 && ok; ++s) {
      const auto pts = gen_random_points(20 + 7 * static_cast<int>(s), s);
      const auto a = pyramidal_fast(pts), b = pyramidal_quadratic(pts);
      ok = std::abs(a.length - b.length) <= 1e-6 * std::max(1.0, b.length);
    }
    report("pyramidal fast vs quadratic", ok);
  }
  {
    bool ok = true;
    for (std::uint64_t s = 1; s <= 10 && ok; ++s) {
      const auto pts = gen_random_points(15 + 5 * static_cast<int>(s), 100 + s);
      const double q = bottleneck_quadratic(pts).value;
      ok = std::abs(bottleneck_fast(pts) - q) <= 1e-9 &&
           std::abs(bottleneck_optimize(pts) - q) <= 1e-9;
    }
    report("bottleneck fast vs quadratic vs search", ok);
  }
  {
    bool ok = true;
    for (std::uint64_t s = 1; s <= 5 && ok; ++s) {
      const auto g = gen_random_graph(10, 200 + s, -50, 50);
      const auto t = Tour::identity(10);
      const auto f = best_kmove_fast(g, t, 3), b = best_kmove_bruteforce(g, t, 3);
      ok = f.has_value() == b.has_value() && (!f || f->delta == b->delta);
    }
    report("3-opt fast vs brute", ok);
  }
  {
    bool ok = true;
    for (std::uint64_t s = 1; s <= 5 && ok; ++s) {
      const auto g = gen_random_graph(6, 300 + s, -20, 20);
      const auto inst = nt_to_3opt(g);
      const auto red = threeopt_to_nt(inst.graph, inst.tour);
      const bool a = negative_triangle_bruteforce(g).has_value();
      const bool b = best_kmove_bruteforce(inst.graph, inst.tour, 3).has_value();
      const bool c = negative_triangle_bruteforce(red.graph).has_value();
      ok = a == b && b == c;
    }
    report("reduction equivalence chain", ok);
  }
  {
    bool ok = true;
    for (std::uint64_t s = 1; s <= 3 && ok; ++s) {
      const auto pts = gen_random_points(60, 400 + s);
      Tour t = Tour::identity(60);
      TourEngine eng(pts, t);
      for (int it = 0; it < 10000 && ok; ++it) {
        const auto em = eng.best_move();
        const auto nm = best_two_move_naive(pts, t);
        ok = em.p == nm.p && em.q == nm.q && em.delta == nm.delta;
        if (!(nm.delta < 0.0)) break;
        eng.apply(em);
        std::reverse(t.order.begin() + nm.p + 1, t.order.begin() + nm.q + 1);
      }
    }
    report("repeated 2-opt engine vs naive", ok);
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TSP local-search and special-case toolkit"};
  app.require_subcommand(1);
  int rc = 0;
  double eps = geometry_eps();

  auto add_eps = [&](CLI::App* sub) {
    sub->add_option("--eps", eps, "geometry comparison tolerance");
  };

  GenOpts gen;
  auto* sgen = app.add_subcommand("gen", "generate an instance");
  sgen->add_option("--type", gen.type, "points|graph|disjointness");
  sgen->add_option("-n", gen.n, "instance size")->check(CLI::PositiveNumber);
  sgen->add_option("--seed", gen.seed, "random seed");
  sgen->add_option("--wmin", gen.wmin, "minimum graph weight");
  sgen->add_option("--wmax", gen.wmax, "maximum graph weight");
  sgen->add_flag("--perturbed", gen.perturbed, "perturb disjointness points");
  sgen->add_flag("--pretty", gen.pretty, "indented JSON");
  sgen->add_option("-o", gen.out, "output path (default stdout)");
  sgen->callback([&] { rc = cmd_gen(gen); });

  PyramidalOpts pyr;
  auto* spyr = app.add_subcommand("pyramidal", "minimum-length tour, one ascent");
  spyr->add_option("instance", pyr.path, "points instance file")->required();
  spyr->add_option("--algo", pyr.algo, "fast|quadratic");
  spyr->add_flag("--verify", pyr.verify, "cross-check against the other algorithm");
  spyr->add_flag("--pretty", pyr.pretty, "indented JSON");
  spyr->add_option("-o", pyr.out, "output path");
  add_eps(spyr);
  spyr->callback([&] {
    geometry_eps() = eps;
    rc = cmd_pyramidal(pyr);
  });

  BottleneckOpts bot;
  auto* sbot = app.add_subcommand("bottleneck", "min-max-edge tours");
  sbot->require_subcommand(1);
  auto* sdec = sbot->add_subcommand("decide", "is there a tour with all edges <= B");
  sdec->add_option("instance", bot.path, "points instance file")->required();
  sdec->add_option("--B", bot.B, "edge length threshold")->required();
  sdec->add_flag("--verify", bot.verify, "cross-check against the quadratic DP");
  sdec->add_option("-o", bot.out, "output path");
  add_eps(sdec);
  sdec->callback([&] {
    geometry_eps() = eps;
    rc = cmd_bottleneck_decide(bot);
  });
  auto* sopt = sbot->add_subcommand("opt", "minimize the longest tour edge");
  sopt->add_option("instance", bot.path, "points instance file")->required();
  sopt->add_option("--algo", bot.algo, "fast|quadratic|search");
  sopt->add_flag("--verify", bot.verify, "cross-check against the quadratic DP");
  sopt->add_option("-o", bot.out, "output path");
  add_eps(sopt);
  sopt->callback([&] {
    geometry_eps() = eps;
    rc = cmd_bottleneck_opt(bot);
  });

  KoptOpts ko;
  auto* skopt = app.add_subcommand("kopt", "k-opt move detection and optimization");
  skopt->require_subcommand(1);
  auto* sdet = skopt->add_subcommand("detect", "best improving k-move, if any");
  sdet->add_option("instance", ko.graph_path, "graph or points instance")->required();
  sdet->add_option("tour", ko.tour_path, "tour file")->required();
  sdet->add_option("--k", ko.k, "edges removed per move")->check(CLI::Range(2, 8));
  sdet->add_option("--algo", ko.algo, "fast|brute");
  sdet->add_flag("--verify", ko.verify, "cross-check fast against brute");
  sdet->add_option("-o", ko.out, "output path");
  sdet->callback([&] { rc = cmd_kopt_detect(ko); });
  auto* soptk = skopt->add_subcommand("optimize", "apply best k-moves to local optimum");
  soptk->add_option("instance", ko.graph_path, "graph or points instance")->required();
  soptk->add_option("tour", ko.tour_path, "tour file")->required();
  soptk->add_option("--k", ko.k, "edges removed per move")->check(CLI::Range(2, 8));
  soptk->add_option("--algo", ko.algo, "fast|brute");
  soptk->add_option("--max-iters", ko.max_iters, "iteration cap");
  soptk->add_flag("--verify", ko.verify, "cross-check fast against brute");
  soptk->add_option("-o", ko.out, "output path");
  soptk->callback([&] { rc = cmd_kopt_optimize(ko); });

  LocalSearchOpts ls;
  auto* sls = app.add_subcommand("localsearch", "best-improvement 2-opt to local optimum");
  sls->add_option("instance", ls.path, "points instance file")->required();
  sls->add_option("tour", ls.tour_path, "start tour (default identity)");
  sls->add_option("--moves", ls.moves, "move family (2opt)");
  sls->add_option("--engine", ls.engine, "fast|naive");
  sls->add_option("--max-iters", ls.max_iters, "iteration cap");
  sls->add_option("-o", ls.out, "output path for the CSV");
  add_eps(sls);
  sls->callback([&] {
    geometry_eps() = eps;
    rc = cmd_localsearch(ls);
  });

  ReduceOpts red;
  auto* sred = app.add_subcommand("reduce", "negative triangle <-> 3-opt reductions");
  sred->require_subcommand(1);
  auto* sr1 = sred->add_subcommand("nt-to-3opt", "triangle instance to tour instance");
  sr1->add_option("graph", red.graph_path, "graph instance file")->required();
  sr1->add_flag("--shift", red.shift, "export with non-negative weights (+4M)");
  sr1->add_flag("--pretty", red.pretty, "indented JSON");
  sr1->add_option("-o", red.out, "output path");
  sr1->callback([&] { rc = cmd_reduce_nt_to_3opt(red); });
  auto* sr2 = sred->add_subcommand("3opt-to-nt", "tour instance to triangle instance");
  sr2->add_option("graph", red.graph_path, "graph instance file")->required();
  sr2->add_option("tour", red.tour_path, "tour file")->required();
  sr2->add_flag("--shift", red.shift, "export with non-negative weights (+4M)");
  sr2->add_flag("--pretty", red.pretty, "indented JSON");
  sr2->add_option("-o", red.out, "output path");
  sr2->callback([&] { rc = cmd_reduce_3opt_to_nt(red); });

  BenchOpts bench;
  auto* sben = app.add_subcommand("bench", "timing suites (CSV)");
  sben->add_option("--suite", bench.suite, "pyramidal|bottleneck|kopt|localsearch");
  sben->add_option("--sizes", bench.sizes, "instance sizes")->delimiter(',');
  sben->add_option("--seeds", bench.seeds, "seeds")->delimiter(',');
  sben->add_option("--k", bench.k, "k for the kopt suite")->check(CLI::Range(2, 8));
  sben->add_option("--iters", bench.iters, "timed iterations (localsearch suite)");
  sben->add_option("-o", bench.out, "output path for the CSV");
  sben->callback([&] { rc = cmd_bench(bench); });

  auto* sst = app.add_subcommand("selftest", "quick fast-vs-oracle cross-checks");
  sst->callback([&] { rc = cmd_selftest(); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return rc;
}
