// Command-line front end: pagerank, distance, compare, ergodicity,
// perturb-cycle, linkpred and metro-rank subcommands over the library.
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nlpr/analysis.hpp"
#include "nlpr/distance.hpp"
#include "nlpr/graph.hpp"
#include "nlpr/graphgen.hpp"
#include "nlpr/io.hpp"
#include "nlpr/linkpred.hpp"
#include "nlpr/pagerank.hpp"
#include "nlpr/solver.hpp"

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parseList(const std::string& csv, const char* what) {
  std::vector<double> values;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    double v;
    if (!nlpr::iodetail::parseDouble(tok, v))
      throw UsageError(std::string("bad ") + what + " list entry: " + tok);
    values.push_back(v);
  }
  if (values.empty()) throw UsageError(std::string("empty ") + what + " list");
  return values;
}

nlpr::GraphFormat formatFromName(const std::string& s) {
  if (s == "auto") return nlpr::GraphFormat::Auto;
  if (s == "edges") return nlpr::GraphFormat::EdgeList;
  if (s == "multilayer") return nlpr::GraphFormat::Multilayer;
  if (s == "mm") return nlpr::GraphFormat::MatrixMarket;
  throw UsageError("unknown graph format: " + s);
}

std::ofstream openOutput(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

nlpr::Digraph asDigraph(nlpr::GraphInput input) {
  if (std::holds_alternative<nlpr::Digraph>(input)) return std::get<nlpr::Digraph>(std::move(input));
  std::cerr << "note: multilayer input aggregated to its union graph\n";
  return nlpr::aggregate(std::get<nlpr::MultilayerGraph>(input));
}

struct GraphArgs {
  std::string path;
  bool undirected = false;
  std::string format = "auto";

  void attach(CLI::App* cmd, const char* flag = "--graph") {
    cmd->add_option(flag, path, "graph file (edge list, multilayer TSV or MatrixMarket)")
        ->required();
    cmd->add_flag("--undirected", undirected, "treat edge-list input as undirected");
    cmd->add_option("--format", format, "input format: auto|edges|multilayer|mm")
        ->default_val("auto");
  }

  nlpr::GraphInput load() const {
    return nlpr::readGraphAuto(path, !undirected, formatFromName(format));
  }
};

void checkC(double c, bool allow_one) {
  if (!(c > 0) || c > 1 || (!allow_one && c == 1))
    throw UsageError(allow_one ? "c must be in (0, 1]" : "c must be in (0, 1)");
}

int runPagerank(const GraphArgs& graph, const std::string& distance, double alpha,
                const std::string& smoothing, double c, const std::string& teleport_path,
                const std::string& out_path) {
  checkC(c, /*allow_one=*/true);
  nlpr::PagerankOptions opt;
  opt.distance = nlpr::distanceMethodFromName(distance);
  opt.smoothing = nlpr::smoothingFromName(smoothing, alpha);
  opt.c = c;

  nlpr::GraphInput input = graph.load();
  const auto node_count = std::holds_alternative<nlpr::Digraph>(input)
                              ? std::get<nlpr::Digraph>(input).nodeCount()
                              : std::get<nlpr::MultilayerGraph>(input).nodeCount();
  if (!teleport_path.empty()) {
    std::ifstream in(teleport_path);
    if (!in) throw std::runtime_error("cannot open teleport file: " + teleport_path);
    opt.teleport = nlpr::readTeleport(in, node_count);
  }

  nlpr::RankVector ranks = std::holds_alternative<nlpr::Digraph>(input)
                               ? nlpr::computePagerank(std::get<nlpr::Digraph>(input), opt)
                               : nlpr::computePagerank(std::get<nlpr::MultilayerGraph>(input), opt);
  auto out = openOutput(out_path);
  nlpr::writeRankCsv(ranks, out);
  return 0;
}

int runDistance(const GraphArgs& graph, const std::string& method, const std::string& in_unused,
                const std::string& out_path, bool csv) {
  (void)in_unused;
  const nlpr::DistanceMethod m = nlpr::distanceMethodFromName(method);
  if (m == nlpr::DistanceMethod::None) throw UsageError("distance method must be sp, log or metro");
  nlpr::GraphInput input = graph.load();
  nlpr::Matrix d;
  if (m == nlpr::DistanceMethod::Metro) {
    if (!std::holds_alternative<nlpr::MultilayerGraph>(input))
      throw UsageError("metro distance requires multilayer input");
    d = nlpr::metroDistance(std::get<nlpr::MultilayerGraph>(input));
  } else {
    d = nlpr::distanceMatrixFor(asDigraph(std::move(input)), m);
  }
  auto out = openOutput(out_path);
  if (csv || out_path.ends_with(".csv"))
    nlpr::writeDistanceCsv(d, out);
  else
    nlpr::writeDistanceBinary(d, out);
  return 0;
}

int runCompare(const std::string& a_path, const std::string& b_path, const std::string& metric,
               int k, const std::string& out_path) {
  std::ifstream a_in(a_path), b_in(b_path);
  if (!a_in) throw std::runtime_error("cannot open: " + a_path);
  if (!b_in) throw std::runtime_error("cannot open: " + b_path);
  const nlpr::RankTable a = nlpr::readRankCsv(a_in);
  const nlpr::RankTable b = nlpr::readRankCsv(b_in);

  if (metric == "kendall") {
    if (a.labels.size() != b.labels.size()) throw std::runtime_error("label sets differ in size");
    std::unordered_map<std::string, nlpr::Index> where;
    for (std::size_t i = 0; i < b.labels.size(); ++i)
      where.emplace(b.labels[i], static_cast<nlpr::Index>(i));
    nlpr::Vector aligned(a.scores.size());
    for (std::size_t i = 0; i < a.labels.size(); ++i) {
      auto it = where.find(a.labels[i]);
      if (it == where.end()) throw std::runtime_error("label sets differ: missing " + a.labels[i]);
      aligned[static_cast<nlpr::Index>(i)] = b.scores[it->second];
    }
    const double tau = nlpr::kendallTauB(a.scores, aligned);
    std::cout << "kendall_tau," << nlpr::iodetail::formatDouble(tau) << "\n";
    if (!out_path.empty()) {
      auto out = openOutput(out_path);
      out << "metric,value\nkendall_tau," << nlpr::iodetail::formatDouble(tau) << "\n";
    }
    return 0;
  }
  if (metric != "isim") throw UsageError("metric must be kendall or isim");
  const int k_max = k > 0 ? k : static_cast<int>(std::min(a.labels.size(), b.labels.size()));
  const nlpr::Vector isim = nlpr::intersectionSimilarity(a.labels, b.labels, k_max);
  std::cout << "isim_" << k_max << "," << nlpr::iodetail::formatDouble(isim[k_max - 1]) << "\n";
  if (!out_path.empty()) {
    auto out = openOutput(out_path);
    out << "k,isim\n";
    for (nlpr::Index i = 0; i < isim.size(); ++i)
      out << i + 1 << ',' << nlpr::iodetail::formatDouble(isim[i]) << '\n';
  }
  return 0;
}

int runErgodicity(const GraphArgs& graph, const std::string& alphas, const std::string& smoothing,
                  double c, const std::string& out_path) {
  checkC(c, /*allow_one=*/true);
  const auto alpha_values = parseList(alphas, "alpha");
  const nlpr::Digraph g = asDigraph(graph.load());
  const auto rows = nlpr::ergodicitySweep(g, alpha_values,
                                          nlpr::smoothingFromName(smoothing, 1.0).kind, c);
  auto out = openOutput(out_path);
  nlpr::writeErgodicityCsv(rows, out);
  return 0;
}

int runPerturbCycle(int n, const std::string& chord, const std::string& alphas,
                    const std::string& smoothing, double c, const std::string& out_path) {
  checkC(c, /*allow_one=*/true);
  const auto chord_nodes = parseList(chord, "chord");
  if (chord_nodes.size() != 2) throw UsageError("--chord expects `from,to` (1-based)");
  const auto alpha_values = parseList(alphas, "alpha");

  const nlpr::Digraph g = nlpr::cycleWithChord(n, static_cast<int>(chord_nodes[0]),
                                               static_cast<int>(chord_nodes[1]));
  std::vector<nlpr::CycleProfileRow> rows;
  for (double alpha : alpha_values) {
    nlpr::PagerankOptions opt;
    opt.distance = nlpr::DistanceMethod::ShortestPath;
    opt.smoothing = nlpr::smoothingFromName(smoothing, alpha);
    opt.c = c;
    const nlpr::RankVector s = nlpr::computePagerank(g, opt);
    for (int i = 0; i < g.nodeCount(); ++i)
      rows.push_back({g.label(i), nlpr::iodetail::formatDouble(alpha),
                      s.scores[i]});
  }
  nlpr::PagerankOptions local;
  local.c = c;
  const nlpr::RankVector s = nlpr::computePagerank(g, local);
  for (int i = 0; i < g.nodeCount(); ++i) rows.push_back({g.label(i), "inf", s.scores[i]});
  auto out = openOutput(out_path);
  nlpr::writeCycleProfileCsv(rows, out);
  return 0;
}

int runLinkpred(const GraphArgs& graph, double fraction, int trials, int folds,
                const std::string& grid_c, const std::string& grid_alpha, std::uint64_t seed,
                const std::string& out_path) {
  nlpr::CVGrid grid;
  if (!grid_c.empty()) grid.c_values = parseList(grid_c, "c");
  if (!grid_alpha.empty()) grid.alpha_values = parseList(grid_alpha, "alpha");
  grid.folds = folds;
  grid.trials = trials;
  try {
    grid.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  nlpr::SplitSpec spec;
  spec.fraction = fraction;
  spec.seed = seed;
  if (!(fraction > 0 && fraction < 1)) throw UsageError("--fraction must be in (0, 1)");

  const nlpr::Digraph g = asDigraph(graph.load());
  const auto results = nlpr::runTrials(g, grid, spec);
  auto out = openOutput(out_path);
  nlpr::writeTrialsCsv(results, out);
  for (nlpr::ScoreMethod m : {nlpr::ScoreMethod::LocalRooted, nlpr::ScoreMethod::NonlocalRooted}) {
    const auto s = nlpr::summarize(results, m);
    std::cout << name(m) << " accuracy median " << s.median << " (q1 " << s.q1 << ", q3 "
              << s.q3 << ")\n";
  }
  return 0;
}

int runMetroRank(const GraphArgs& graph, const std::string& usage_path, int year, double alpha,
                 const std::string& smoothing, double c, int k, const std::string& out_path) {
  checkC(c, /*allow_one=*/true);
  nlpr::GraphInput input = graph.load();
  if (!std::holds_alternative<nlpr::MultilayerGraph>(input))
    throw UsageError("metro-rank requires multilayer input");
  const nlpr::MultilayerGraph& m = std::get<nlpr::MultilayerGraph>(input);

  std::ifstream usage_in(usage_path);
  if (!usage_in) throw std::runtime_error("cannot open usage file: " + usage_path);
  const auto usage = nlpr::readUsageCsv(usage_in);
  const nlpr::RankedList truth = nlpr::groundTruthRanking(usage, year);

  nlpr::PagerankOptions opt;
  opt.c = c;
  opt.smoothing = nlpr::smoothingFromName(smoothing, alpha);
  opt.distance = nlpr::DistanceMethod::Metro;
  const nlpr::RankVector metro = nlpr::computePagerank(m, opt);
  opt.distance = nlpr::DistanceMethod::ShortestPath;
  const nlpr::RankVector sp = nlpr::computePagerank(m, opt);
  opt.distance = nlpr::DistanceMethod::None;
  const nlpr::RankVector local = nlpr::computePagerank(m, opt);

  const int k_max = std::min<int>(k, static_cast<int>(truth.size()));
  const nlpr::Vector isim_sp = nlpr::intersectionSimilarity(nlpr::rankedLabels(sp), truth, k_max);
  const nlpr::Vector isim_metro =
      nlpr::intersectionSimilarity(nlpr::rankedLabels(metro), truth, k_max);
  const nlpr::Vector isim_local =
      nlpr::intersectionSimilarity(nlpr::rankedLabels(local), truth, k_max);
  auto out = openOutput(out_path);
  nlpr::writeIsimCsv(isim_sp, isim_metro, isim_local, out);

  std::unordered_map<std::string, double> usage_of;
  for (const auto& row : usage)
    if (row.year == year) usage_of[row.station] = row.passengers;
  auto cumulative = [&](const nlpr::RankedList& order, int depth) {
    double sum = 0;
    for (int i = 0; i < depth && i < static_cast<int>(order.size()); ++i) {
      auto it = usage_of.find(order[static_cast<std::size_t>(i)]);
      if (it != usage_of.end()) sum += it->second;
    }
    return sum;
  };
  for (int depth : {5, 15, 45}) {
    std::cout << "top" << depth << "_passengers,local,"
              << cumulative(nlpr::rankedLabels(local), depth) << "\n";
    std::cout << "top" << depth << "_passengers,sp," << cumulative(nlpr::rankedLabels(sp), depth)
              << "\n";
    std::cout << "top" << depth << "_passengers,metro,"
              << cumulative(nlpr::rankedLabels(metro), depth) << "\n";
    std::cout << "top" << depth << "_passengers,truth," << cumulative(truth, depth) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlocal PageRank toolkit"};
  app.require_subcommand(1);

  // pagerank
  auto* pagerank = app.add_subcommand("pagerank", "compute a (nonlocal) PageRank vector");
  GraphArgs pr_graph;
  pr_graph.attach(pagerank);
  std::string pr_distance = "none", pr_smoothing = "power", pr_teleport, pr_out;
  double pr_alpha = 1.0, pr_c = 0.85;
  pagerank->add_option("--distance", pr_distance, "none|sp|log|metro")->default_val("none");
  pagerank->add_option("--alpha", pr_alpha, "smoothing decay parameter");
  pagerank->add_option("--smoothing", pr_smoothing, "power|exp")->default_val("power");
  pagerank->add_option("--c", pr_c, "teleportation factor")->required();
  pagerank->add_option("--teleport", pr_teleport, "teleport weights, one per line");
  pagerank->add_option("--out", pr_out, "output rank CSV")->required();

  // distance
  auto* distance = app.add_subcommand("distance", "compute a distance matrix");
  GraphArgs d_graph;
  std::string d_method, d_out;
  bool d_csv = false;
  distance->add_option("--method", d_method, "sp|log|metro")->required();
  d_graph.attach(distance, "--in");
  distance->add_option("--out", d_out, "output file (binary, or CSV with --csv/.csv)")
      ->required();
  distance->add_flag("--csv", d_csv, "write CSV instead of the binary format");

  // compare
  auto* compare = app.add_subcommand("compare", "compare two rank CSVs");
  std::string cp_a, cp_b, cp_metric = "kendall", cp_out;
  int cp_k = 0;
  compare->add_option("--a", cp_a)->required();
  compare->add_option("--b", cp_b)->required();
  compare->add_option("--metric", cp_metric, "kendall|isim")->default_val("kendall");
  compare->add_option("--k", cp_k, "ISIM prefix depth (default: full length)");
  compare->add_option("--out", cp_out, "optional CSV output");

  // ergodicity
  auto* ergodicity = app.add_subcommand("ergodicity", "tau_1 sweep over alpha");
  GraphArgs e_graph;
  e_graph.attach(ergodicity);
  std::string e_alphas, e_smoothing = "power", e_out;
  double e_c = 0.85;
  ergodicity->add_option("--alphas", e_alphas, "comma-separated alpha list")->required();
  ergodicity->add_option("--smoothing", e_smoothing, "power|exp")->default_val("power");
  ergodicity->add_option("--c", e_c, "teleportation factor")->required();
  ergodicity->add_option("--out", e_out, "output CSV")->required();

  // perturb-cycle
  auto* perturb = app.add_subcommand("perturb-cycle", "chord-perturbed cycle rank profiles");
  int pc_n = 100;
  std::string pc_chord = "40,1", pc_alphas, pc_smoothing = "power", pc_out;
  double pc_c = 0.85;
  perturb->add_option("--n", pc_n, "cycle length")->default_val(100);
  perturb->add_option("--chord", pc_chord, "added directed edge `from,to` (1-based)")
      ->default_val("40,1");
  perturb->add_option("--alphas", pc_alphas, "comma-separated alpha list")->required();
  perturb->add_option("--smoothing", pc_smoothing, "power|exp")->default_val("power");
  perturb->add_option("--c", pc_c, "teleportation factor")->default_val(0.85);
  perturb->add_option("--out", pc_out, "output CSV")->required();

  // linkpred
  auto* linkpred = app.add_subcommand("linkpred", "edge-removal link prediction trials");
  GraphArgs lp_graph;
  lp_graph.attach(linkpred);
  double lp_fraction = 0.10;
  int lp_trials = 15, lp_folds = 10;
  std::string lp_grid_c, lp_grid_alpha, lp_out;
  std::uint64_t lp_seed = 0;
  linkpred->add_option("--fraction", lp_fraction)->default_val(0.10);
  linkpred->add_option("--trials", lp_trials)->default_val(15);
  linkpred->add_option("--folds", lp_folds)->default_val(10);
  linkpred->add_option("--grid-c", lp_grid_c, "comma-separated c grid (default: standard grid)");
  linkpred->add_option("--grid-alpha", lp_grid_alpha,
                       "comma-separated alpha grid (default: standard grid)");
  linkpred->add_option("--seed", lp_seed)->default_val(0);
  linkpred->add_option("--out", lp_out, "output CSV")->required();

  // metro-rank
  auto* metro = app.add_subcommand(
      "metro-rank", "multilayer TSV -> metro distance -> nonlocal PageRank -> ISIM vs usage");
  GraphArgs mr_graph;
  mr_graph.attach(metro);
  std::string mr_usage, mr_smoothing = "power", mr_out;
  int mr_year = 2017, mr_k = 45;
  double mr_alpha = 1.7, mr_c = 0.85;
  metro->add_option("--usage", mr_usage, "usage CSV `station,year,passengers`")->required();
  metro->add_option("--year", mr_year)->default_val(2017);
  metro->add_option("--alpha", mr_alpha)->default_val(1.7);
  metro->add_option("--smoothing", mr_smoothing, "power|exp")->default_val("power");
  metro->add_option("--c", mr_c)->default_val(0.85);
  metro->add_option("--k", mr_k, "ISIM depth")->default_val(45);
  metro->add_option("--out", mr_out, "output ISIM CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*pagerank)
      return runPagerank(pr_graph, pr_distance, pr_alpha, pr_smoothing, pr_c, pr_teleport, pr_out);
    if (*distance) return runDistance(d_graph, d_method, d_graph.path, d_out, d_csv);
    if (*compare) return runCompare(cp_a, cp_b, cp_metric, cp_k, cp_out);
    if (*ergodicity) return runErgodicity(e_graph, e_alphas, e_smoothing, e_c, e_out);
    if (*perturb) return runPerturbCycle(pc_n, pc_chord, pc_alphas, pc_smoothing, pc_c, pc_out);
    if (*linkpred)
      return runLinkpred(lp_graph, lp_fraction, lp_trials, lp_folds, lp_grid_c, lp_grid_alpha,
                         lp_seed, lp_out);
    if (*metro)
      return runMetroRank(mr_graph, mr_usage, mr_year, mr_alpha, mr_smoothing, mr_c, mr_k, mr_out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
