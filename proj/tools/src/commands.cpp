// Copyright 2026 The tridecomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "tridecomp_cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tridecomp/errors.hpp"
#include "tridecomp/io.hpp"
#include "tridecomp/metrics.hpp"
#include "tridecomp/steiner.hpp"
#include "tridecomp/templates.hpp"
#include "tridecomp/verify.hpp"

namespace tridecomp::cli {

int BenchReport::successes() const {
  return static_cast<int>(std::count_if(points.begin(), points.end(), [](const BenchPoint& p) { return p.ok; }));
}

std::pair<double, double> fit_loglog(const std::vector<std::pair<double, double>>& xy) {
  if (xy.size() < 2) throw PreconditionError("log-log fit needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : xy) {
    if (x <= 0 || y <= 0) throw PreconditionError("log-log fit needs positive values");
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = static_cast<double>(xy.size());
  const double denom = m * sxx - sx * sx;
  if (std::abs(denom) < 1e-12) throw PreconditionError("log-log fit needs two distinct sizes");
  const double slope = (m * sxy - sx * sy) / denom;
  return {slope, (sy - slope * sx) / m};
}

BenchReport run_bench(const BenchOptions& options) {
  BenchReport report;
  for (int v : options.ladder) {
    BenchPoint p;
    p.vertices = v;
    try {
      const Graph g = generate_instance({v, options.epsilon, options.xi, options.seed});
      p.edges = g.edge_count();
      p.seconds = -1;
      for (int rep = 0; rep < std::max(1, options.repeats); ++rep) {
        const auto start = std::chrono::steady_clock::now();
        const PipelineResult r = decompose(g, options.seed, options.pipeline);
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (p.seconds < 0 || dt < p.seconds) p.seconds = dt;
        p.ok = !r.triangles.empty() || g.edge_count() == 0;
      }
    } catch (const Error& e) {
      p.ok = false;
      p.error = e.what();
    }
    report.points.push_back(std::move(p));
  }
  std::vector<std::pair<double, double>> xy;
  for (const auto& p : report.points) {
    if (p.ok && p.seconds > 0) xy.emplace_back(p.vertices, p.seconds);
  }
  try {
    std::tie(report.slope, report.intercept) = fit_loglog(xy);
    report.fitted = true;
  } catch (const PreconditionError&) {
    report.fitted = false;
  }
  return report;
}

std::string format_bench(const BenchReport& report) {
  std::ostringstream out;
  for (const auto& p : report.points) {
    out << "bench V=" << p.vertices << " E=" << p.edges;
    if (p.ok) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6f", p.seconds);
      out << " seconds=" << buf << " ok\n";
    } else {
      out << " FAILED: " << p.error << "\n";
    }
  }
  if (report.fitted) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "slope %.3f over %d sizes", report.slope, report.successes());
    out << buf << "\n";
  } else {
    out << "slope unavailable: fewer than two successful sizes\n";
  }
  return out.str();
}

namespace {

Rational rational_flag(const std::string& text, const char* name) {
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw CLI::ValidationError(std::string("--") + name, "expects an integer or p/q, got '" + text + "'");
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  try {
    return read_file(path);
  } catch (const Error& e) {
    throw PreconditionError(e.what());  // a usage problem, not a pipeline one
  }
}

std::string ledger_header(const PipelineOptions& o, std::uint64_t seed) {
  std::ostringstream out;
  out << "# max_epsilon " << to_string(o.max_epsilon) << "\n";
  out << "# max_xi " << to_string(o.max_xi) << " (empirical default)\n";
  out << "# seed " << seed << "\n";
  out << "# ordering " << (o.ordering == TradeOptions::Ordering::kMod3 ? "mod3" : "mod4") << "\n";
  return out.str();
}

struct Flags {
  std::string input, output, triangles, ledger;
  std::uint64_t seed = 0;
  std::string epsilon, xi;
  int retry = 0;
  std::string ordering = "mod3";
  bool strict = false;
  int threads = 1;
  int vertices = 0;
  int order = 0;
  bool regenerate = false;
  bool refined = false;
  std::vector<int> ladder;
  int repeats = 1;
};

PipelineOptions pipeline_options(const Flags& f) {
  PipelineOptions o;
  if (!f.epsilon.empty()) o.max_epsilon = rational_flag(f.epsilon, "epsilon");
  if (!f.xi.empty()) o.max_xi = rational_flag(f.xi, "xi");
  o.retry_attempts = f.retry;
  o.ordering = f.ordering == "mod4" ? TradeOptions::Ordering::kMod4 : TradeOptions::Ordering::kMod3;
  o.strict = f.strict;
  o.threads = f.threads;
  return o;
}

int cmd_generate(const Flags& f) {
  const InstanceSpec spec{f.vertices, f.epsilon.empty() ? Rational(0) : rational_flag(f.epsilon, "epsilon"),
                          f.xi.empty() ? Rational(0) : rational_flag(f.xi, "xi"), f.seed};
  const Graph g = generate_instance(spec);
  emit(f.output, format_graph(g));
  const DensityMetrics m = metrics(g, PartiteView::whole_graph(g));
  std::cerr << "generated V=" << g.vertex_count() << " E=" << g.edge_count() << " eps=" << to_string(m.epsilon)
            << " xi=" << to_string(m.xi) << "\n";
  return kExitOk;
}

int cmd_decompose(const Flags& f) {
  const Graph g = parse_graph(slurp(f.input));
  const PipelineOptions o = pipeline_options(f);
  try {
    const PipelineResult r = decompose(g, f.seed, o);
    emit(f.output, format_triangles(r.triangles));
    if (!f.ledger.empty()) write_file(f.ledger, ledger_header(o, r.seed_used) + r.ledger.report());
    std::cerr << "decomposed into " << r.triangles.size() << " triangles" << (r.degenerate ? " (Steiner system)" : "")
              << ", attempts " << r.attempts << "\n";
    return kExitOk;
  } catch (const PipelineError& e) {
    if (!f.ledger.empty()) write_file(f.ledger, ledger_header(o, f.seed) + e.ledger().report());
    std::cerr << "pipeline failed at stage " << e.stage() << ": " << e.inequality() << "\n";
    return kExitPipelineFailed;
  }
}

int cmd_verify(const Flags& f) {
  const Graph g = parse_graph(slurp(f.input));
  const TriangleSet t = parse_triangles(slurp(f.triangles));
  const DecompositionReport rep = check_decomposition(g, t);
  std::cout << rep.to_string();
  return rep.ok ? kExitOk : kExitVerifyFailed;
}

int cmd_sts(const Flags& f) {
  const SteinerSystem s = build_sts(f.order);
  TriangleSet t(s.triples.begin(), s.triples.end());
  std::sort(t.begin(), t.end());
  emit(f.output, format_triangles(t));
  return is_steiner_system(s) ? kExitOk : kExitVerifyFailed;
}

int cmd_trades(const Flags& f) {
  const TradeCatalog cat = f.regenerate ? TradeCatalog::generate() : TradeCatalog::builtin();
  const auto labellings = enumerate_hex_labelings();
  int bad = 0;
  for (const TradeTemplate& t : cat.templates()) {
    std::string why;
    const bool ok = check_template(t, &why);
    bad += ok ? 0 : 1;
    std::cout << "template " << t.boundary.to_string() << " " << to_string(t.family) << " internal "
              << t.internal_labels.size() << " in " << t.in_triangles.size() << " out " << t.out_triangles.size()
              << (ok ? " identity ok" : " IDENTITY FAILS: " + why) << "\n";
  }
  int uncovered = 0;
  for (const HexLabeling& lab : labellings) {
    if (!cat.find(lab, TradeTemplate::Family::kAny)) ++uncovered;
  }
  std::cout << labellings.size() << " labellings, " << cat.templates().size() << " templates, " << bad
            << " identity failures, " << uncovered << " labellings without a template\n";
  if (f.refined) {
    const TradeCatalog refined = f.regenerate ? TradeCatalog::generate_refined() : TradeCatalog::builtin_refined();
    int rbad = 0;
    for (const TradeTemplate& t : refined.templates()) rbad += check_template(t) ? 0 : 1;
    std::cout << refined.templates().size() << " block-refined templates, " << rbad << " identity failures\n";
    bad += rbad;
    if (!f.output.empty()) write_file(f.output + ".refined", refined.serialize());
  }
  if (!f.output.empty()) emit(f.output, cat.serialize());
  return bad == 0 && uncovered == 0 && labellings.size() == 22 ? kExitOk : kExitVerifyFailed;
}

int cmd_bench(const Flags& f) {
  BenchOptions b;
  if (!f.ladder.empty()) b.ladder = f.ladder;
  if (!f.epsilon.empty()) b.epsilon = rational_flag(f.epsilon, "epsilon");
  if (!f.xi.empty()) b.xi = rational_flag(f.xi, "xi");
  b.seed = f.seed;
  b.repeats = f.repeats;
  b.pipeline.ordering = pipeline_options(f).ordering;
  b.pipeline.threads = f.threads;
  const BenchReport r = run_bench(b);
  std::cout << format_bench(r);
  return r.successes() == static_cast<int>(r.points.size()) ? kExitOk : kExitPipelineFailed;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"tridecomp: triangle decompositions of dense graphs"};
  app.require_subcommand(1);
  Flags f;

  auto* gen = app.add_subcommand("generate", "Write a seeded near-complete tridivisible graph");
  gen->add_option("-n,--vertices", f.vertices, "Vertex count")->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--epsilon", f.epsilon, "Largest missing-degree fraction per vertex (p/q)");
  gen->add_option("--xi", f.xi, "Largest missing-edge fraction of V^2 (p/q)");
  gen->add_option("--seed", f.seed, "Random seed");
  gen->add_option("-o,--output", f.output, "Graph file (default stdout)");

  auto* dec = app.add_subcommand("decompose", "Run the decomposition pipeline on a graph file");
  dec->add_option("-i,--input", f.input, "Graph file ('-' for stdin)")->required();
  dec->add_option("-o,--output", f.output, "Triangle file (default stdout)");
  dec->add_option("--seed", f.seed, "Random seed");
  dec->add_option("--epsilon", f.epsilon, "Input epsilon threshold (p/q)");
  dec->add_option("--xi", f.xi, "Input xi threshold (p/q)");
  dec->add_option("--retry", f.retry, "Extra attempts with derived seeds after a stage failure")
      ->check(CLI::NonNegativeNumber);
  dec->add_option("--ordering", f.ordering, "Late trail class in the trade schedule")
      ->check(CLI::IsMember({"mod3", "mod4"}));
  dec->add_option("--ledger", f.ledger, "Write the density ledger here");
  dec->add_flag("--strict", f.strict, "Abort on any violated region or guarantee entry");
  dec->add_option("--threads", f.threads, "Threads for the nine block near-triangulations")
      ->check(CLI::Range(1, 9));

  auto* ver = app.add_subcommand("verify", "Check a triangle file against a graph file");
  ver->add_option("-i,--input", f.input, "Graph file ('-' for stdin)")->required();
  ver->add_option("-t,--triangles", f.triangles, "Triangle file")->required();

  auto* sts = app.add_subcommand("sts", "Print a Steiner triple system as a triangle file");
  sts->add_option("order", f.order, "n = 1 or 3 (mod 6)")->required();
  sts->add_option("-o,--output", f.output, "Triangle file (default stdout)");

  auto* tr = app.add_subcommand("trades", "Check (or regenerate) the trade catalog");
  tr->add_flag("--regenerate", f.regenerate, "Rerun the template search instead of using the built-in catalog");
  tr->add_flag("--refined", f.refined, "Include the block-refined catalog (regeneration takes minutes)");
  tr->add_option("-o,--output", f.output, "Write the catalog here");

  auto* bench = app.add_subcommand("bench", "Time decompose over a size ladder and fit the log-log slope");
  bench->add_option("--ladder", f.ladder, "Vertex counts")->delimiter(',');
  bench->add_option("--epsilon", f.epsilon, "Generator epsilon (p/q)");
  bench->add_option("--xi", f.xi, "Generator xi (p/q)");
  bench->add_option("--seed", f.seed, "Random seed");
  bench->add_option("--repeats", f.repeats, "Timed runs per size (best is kept)")->check(CLI::PositiveNumber);
  bench->add_option("--ordering", f.ordering, "Late trail class")->check(CLI::IsMember({"mod3", "mod4"}));
  bench->add_option("--threads", f.threads, "Threads for near-triangulation")->check(CLI::Range(1, 9));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) return cmd_generate(f);
    if (*dec) return cmd_decompose(f);
    if (*ver) return cmd_verify(f);
    if (*sts) return cmd_sts(f);
    if (*tr) return cmd_trades(f);
    if (*bench) return cmd_bench(f);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPipelineFailed;
  }
  return kExitUsage;
}

}  // namespace tridecomp::cli
