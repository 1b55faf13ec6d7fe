#pragma once

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "nlpr/analysis.hpp"
#include "nlpr/graph.hpp"
#include "nlpr/linkpred.hpp"
#include "nlpr/solver.hpp"
#include "nlpr/types.hpp"

namespace nlpr {

namespace iodetail {

inline bool parseDouble(const std::string& token, double& out) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

inline std::vector<std::string> splitWhitespace(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) tokens.push_back(tok);
  return tokens;
}

inline std::vector<std::string> splitCsv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

[[noreturn]] inline void lineError(const std::string& what, std::size_t line_no) {
  throw std::runtime_error("line " + std::to_string(line_no) + ": " + what);
}

inline std::string formatDouble(double v) {
  if (v == kInf) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void putU64LE(std::ostream& out, std::uint64_t v) {
  char bytes[8];
  for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((v >> (8 * b)) & 0xff);
  out.write(bytes, 8);
}

inline std::uint64_t getU64LE(std::istream& in) {
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  if (!in) throw std::runtime_error("truncated binary distance file");
  std::uint64_t v = 0;
  for (int b = 7; b >= 0; --b) v = (v << 8) | bytes[b];
  return v;
}

}  // namespace iodetail

// --- graph formats -------------------------------------------------------

/// Whitespace-separated `src dst [weight]` rows, `#` comments and blank
/// lines skipped. A third numeric column makes the graph weighted.
inline Digraph readEdgeList(std::istream& in, bool directed) {
  std::vector<std::tuple<std::string, std::string, double>> rows;
  bool weighted = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
    const auto tokens = iodetail::splitWhitespace(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 2 && tokens.size() != 3)
      iodetail::lineError("expected `src dst [weight]`", line_no);
    double w = 1.0;
    if (tokens.size() == 3) {
      if (!iodetail::parseDouble(tokens[2], w))
        iodetail::lineError("weight is not a number: " + tokens[2], line_no);
      if (!(w > 0)) iodetail::lineError("weight must be positive", line_no);
      weighted = true;
    }
    rows.emplace_back(tokens[0], tokens[1], w);
  }
  if (rows.empty()) throw std::runtime_error("empty edge list");
  if (!weighted) {
    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(rows.size());
    for (auto& [a, b, w] : rows) pairs.emplace_back(std::move(a), std::move(b));
    return fromEdgeList(pairs, directed);
  }
  return fromWeightedEdgeList(rows, directed);
}

/// `src dst layer` rows; the layer key is a string and layers appear in
/// first-appearance order. Connections are undirected.
inline MultilayerGraph readMultilayer(std::istream& in) {
  std::unordered_map<std::string, int> node_index, layer_index;
  std::vector<std::string> labels, layer_names;
  std::vector<std::vector<std::pair<int, int>>> layers;
  std::string line;
  std::size_t line_no = 0;
  auto intern = [](std::unordered_map<std::string, int>& index, std::vector<std::string>& names,
                   const std::string& key) {
    auto [it, fresh] = index.emplace(key, static_cast<int>(names.size()));
    if (fresh) names.push_back(key);
    return it->second;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
    const auto tokens = iodetail::splitWhitespace(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 3) iodetail::lineError("expected `src dst layer`", line_no);
    const int u = intern(node_index, labels, tokens[0]);
    const int v = intern(node_index, labels, tokens[1]);
    const int l = intern(layer_index, layer_names, tokens[2]);
    if (static_cast<std::size_t>(l) >= layers.size()) layers.resize(static_cast<std::size_t>(l) + 1);
    layers[static_cast<std::size_t>(l)].emplace_back(u, v);
  }
  if (labels.empty()) throw std::runtime_error("empty multilayer edge list");
  return MultilayerGraph(static_cast<int>(labels.size()), std::move(layers), std::move(labels),
                         std::move(layer_names));
}

/// Matrix Market coordinate format, 1-based indices. `symmetric` files load
/// as undirected graphs; any nonzero entry is an edge (binary adjacency).
inline Digraph readMatrixMarket(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty Matrix Market file");
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || object != "matrix")
    throw std::runtime_error("not a Matrix Market matrix file");
  if (format != "coordinate")
    throw std::runtime_error("only coordinate Matrix Market files are supported");
  const bool pattern = field == "pattern";
  const bool symmetric = symmetry == "symmetric";
  if (symmetry != "general" && !symmetric)
    throw std::runtime_error("unsupported Matrix Market symmetry: " + symmetry);

  std::size_t line_no = 1;
  long rows = -1, cols = -1, nnz = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '%') continue;
    if (iodetail::splitWhitespace(line).empty()) continue;
    std::istringstream dims(line);
    if (!(dims >> rows >> cols >> nnz)) iodetail::lineError("malformed size line", line_no);
    break;
  }
  if (rows < 0) throw std::runtime_error("missing Matrix Market size line");
  if (rows != cols) throw std::runtime_error("adjacency input must be square");

  std::vector<std::tuple<int, int, double>> arcs;
  arcs.reserve(static_cast<std::size_t>(nnz));
  long seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '%') continue;
    const auto tokens = iodetail::splitWhitespace(line);
    if (tokens.empty()) continue;
    if (tokens.size() < 2) iodetail::lineError("malformed entry", line_no);
    long i = 0, j = 0;
    double v = 1.0;
    try {
      i = std::stol(tokens[0]);
      j = std::stol(tokens[1]);
    } catch (...) {
      iodetail::lineError("malformed entry indices", line_no);
    }
    if (!pattern) {
      if (tokens.size() < 3) iodetail::lineError("missing value", line_no);
      if (!iodetail::parseDouble(tokens[2], v))
        iodetail::lineError("value is not a number", line_no);
    }
    if (i < 1 || i > rows || j < 1 || j > rows)
      iodetail::lineError("index out of range (Matrix Market is 1-based)", line_no);
    ++seen;
    if (v == 0.0) continue;
    arcs.emplace_back(static_cast<int>(i - 1), static_cast<int>(j - 1), 1.0);
  }
  if (seen != nnz)
    throw std::runtime_error("entry count mismatch: header says " + std::to_string(nnz) +
                             ", file has " + std::to_string(seen));
  return Digraph(static_cast<int>(rows), arcs, {}, symmetric);
}

enum class GraphFormat { Auto, EdgeList, Multilayer, MatrixMarket };

using GraphInput = std::variant<Digraph, MultilayerGraph>;

/// Reads a graph file, sniffing the format: a `%%MatrixMarket` banner wins,
/// then three-column rows with a non-numeric third column load as a
/// multilayer graph, everything else as an edge list.
inline GraphInput readGraphAuto(const std::string& path, bool directed,
                                GraphFormat hint = GraphFormat::Auto) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  GraphFormat format = hint;
  if (format == GraphFormat::Auto) {
    std::string line;
    bool decided = false;
    while (!decided && std::getline(in, line)) {
      if (line.rfind("%%MatrixMarket", 0) == 0) {
        format = GraphFormat::MatrixMarket;
        decided = true;
        break;
      }
      if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
      const auto tokens = iodetail::splitWhitespace(line);
      if (tokens.empty()) continue;
      double ignored;
      format = (tokens.size() == 3 && !iodetail::parseDouble(tokens[2], ignored))
                   ? GraphFormat::Multilayer
                   : GraphFormat::EdgeList;
      decided = true;
    }
    if (!decided) throw std::runtime_error("empty graph file: " + path);
    in.clear();
    in.seekg(0);
  }
  switch (format) {
    case GraphFormat::MatrixMarket: return readMatrixMarket(in);
    case GraphFormat::Multilayer: return readMultilayer(in);
    default: return readEdgeList(in, directed);
  }
}

/// One `src dst [weight]` row per edge unit; reading it back with the same
/// directedness reproduces the graph up to label interning order.
inline void writeEdgeList(const Digraph& g, std::ostream& out) {
  for (int u = 0; u < g.nodeCount(); ++u) {
    for (const Arc& a : g.outArcs(u)) {
      if (g.undirected() && u > a.to) continue;
      out << g.label(u) << '\t' << g.label(a.to);
      if (g.weighted()) out << '\t' << iodetail::formatDouble(a.weight);
      out << '\n';
    }
  }
}

// --- rank vectors --------------------------------------------------------

inline void checkCsvSafe(const std::string& label) {
  if (label.find(',') != std::string::npos || label.find('\n') != std::string::npos)
    throw std::invalid_argument("label not CSV-safe: " + label);
}

/// `label,score,rank` rows, best first.
inline void writeRankCsv(const RankVector& r, std::ostream& out) {
  const auto order = rankedLabels(r);
  std::unordered_map<std::string, double> score;
  for (std::size_t i = 0; i < r.labels.size(); ++i)
    score.emplace(r.labels[i], r.scores[static_cast<Index>(i)]);
  out << "label,score,rank\n";
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    checkCsvSafe(order[pos]);
    out << order[pos] << ',' << iodetail::formatDouble(score.at(order[pos])) << ',' << pos + 1
        << '\n';
  }
}

/// A ranked score table as read back from CSV; unlike RankVector the scores
/// need not form a distribution (ground-truth usage lists qualify).
struct RankTable {
  std::vector<std::string> labels;  // in rank order, best first
  Vector scores;
};

inline RankTable readRankCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty rank CSV");
  RankTable table;
  std::vector<double> scores;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = iodetail::splitCsv(line);
    if (fields.size() < 2) iodetail::lineError("expected `label,score[,rank]`", line_no);
    double s;
    if (!iodetail::parseDouble(fields[1], s))
      iodetail::lineError("score is not a number: " + fields[1], line_no);
    table.labels.push_back(fields[0]);
    scores.push_back(s);
  }
  if (table.labels.empty()) throw std::runtime_error("rank CSV has no data rows");
  table.scores = Eigen::Map<Vector>(scores.data(), static_cast<Index>(scores.size()));
  return table;
}

// --- distance matrices ---------------------------------------------------

inline constexpr char kDistanceMagic[9] = "NLPRDMX1";

/// Binary layout: 8-byte magic, u64 node count, then n*n little-endian
/// doubles row-major with IEEE +inf for unreachable pairs.
inline void writeDistanceBinary(const Matrix& d, std::ostream& out) {
  out.write(kDistanceMagic, 8);
  iodetail::putU64LE(out, static_cast<std::uint64_t>(d.rows()));
  for (Index i = 0; i < d.rows(); ++i)
    for (Index j = 0; j < d.cols(); ++j)
      iodetail::putU64LE(out, std::bit_cast<std::uint64_t>(d(i, j)));
  if (!out) throw std::runtime_error("failed writing distance matrix");
}

inline Matrix readDistanceBinary(std::istream& in) {
  char magic[8];
  in.read(magic, 8);
  if (!in || std::string(magic, 8) != std::string(kDistanceMagic, 8))
    throw std::runtime_error("not a distance matrix file (bad magic)");
  const auto n = static_cast<Index>(iodetail::getU64LE(in));
  if (n <= 0 || n > (1 << 20)) throw std::runtime_error("implausible distance matrix size");
  Matrix d(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      d(i, j) = std::bit_cast<double>(iodetail::getU64LE(in));
  return d;
}

/// CSV export with the literal `inf` for unreachable pairs.
inline void writeDistanceCsv(const Matrix& d, std::ostream& out) {
  for (Index i = 0; i < d.rows(); ++i) {
    for (Index j = 0; j < d.cols(); ++j) {
      if (j) out << ',';
      out << iodetail::formatDouble(d(i, j));
    }
    out << '\n';
  }
}

// --- teleport and usage data ---------------------------------------------

/// One nonnegative weight per line, normalized to a distribution.
inline Vector readTeleport(std::istream& in, Index n) {
  std::vector<double> weights;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
    const auto tokens = iodetail::splitWhitespace(line);
    if (tokens.empty()) continue;
    double w;
    if (tokens.size() != 1 || !iodetail::parseDouble(tokens[0], w))
      iodetail::lineError("expected one weight per line", line_no);
    if (w < 0) iodetail::lineError("teleport weight must be nonnegative", line_no);
    weights.push_back(w);
  }
  if (static_cast<Index>(weights.size()) != n)
    throw std::runtime_error("teleport file has " + std::to_string(weights.size()) +
                             " weights for " + std::to_string(n) + " nodes");
  Vector v = Eigen::Map<Vector>(weights.data(), n);
  const double total = v.sum();
  if (!(total > 0)) throw std::runtime_error("teleport weights sum to zero");
  return v / total;
}

struct UsageRow {
  std::string station;
  int year = 0;
  double passengers = 0;
};

/// `station,year,passengers` rows (passengers in millions).
inline std::vector<UsageRow> readUsageCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty usage CSV");
  std::vector<UsageRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = iodetail::splitCsv(line);
    if (fields.size() != 3) iodetail::lineError("expected `station,year,passengers`", line_no);
    UsageRow row;
    row.station = fields[0];
    double year;
    if (!iodetail::parseDouble(fields[1], year) || year != std::floor(year))
      iodetail::lineError("year is not an integer", line_no);
    row.year = static_cast<int>(year);
    if (!iodetail::parseDouble(fields[2], row.passengers))
      iodetail::lineError("passenger count is not a number", line_no);
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Stations of the requested year ranked by descending passenger count,
/// ties by ascending label.
inline RankedList groundTruthRanking(const std::vector<UsageRow>& usage, int year) {
  std::vector<std::pair<double, std::string>> entries;
  for (const auto& row : usage)
    if (row.year == year) entries.emplace_back(row.passengers, row.station);
  if (entries.empty())
    throw std::runtime_error("no usage rows for year " + std::to_string(year));
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  RankedList list;
  list.reserve(entries.size());
  for (auto& [p, s] : entries) list.push_back(std::move(s));
  return list;
}

// --- figure-data CSV emitters --------------------------------------------

struct KendallRow {
  double alpha = 0;
  std::string smoothing;
  double tau = 0;
};

inline void writeKendallCsv(const std::vector<KendallRow>& rows, std::ostream& out) {
  out << "alpha,smoothing,tau\n";
  for (const auto& r : rows)
    out << iodetail::formatDouble(r.alpha) << ',' << r.smoothing << ','
        << iodetail::formatDouble(r.tau) << '\n';
}

inline void writeErgodicityCsv(const std::vector<ErgodicitySweepRow>& rows, std::ostream& out) {
  out << "alpha,tau_nonlocal,tau_local,difference\n";
  for (const auto& r : rows)
    out << iodetail::formatDouble(r.alpha) << ',' << iodetail::formatDouble(r.tau_nonlocal)
        << ',' << iodetail::formatDouble(r.tau_local) << ','
        << iodetail::formatDouble(r.difference) << '\n';
}

struct CycleProfileRow {
  std::string node;
  std::string alpha;  // numeric, or "inf" for the local walk
  double score = 0;
};

inline void writeCycleProfileCsv(const std::vector<CycleProfileRow>& rows, std::ostream& out) {
  out << "node,alpha,score\n";
  for (const auto& r : rows)
    out << r.node << ',' << r.alpha << ',' << iodetail::formatDouble(r.score) << '\n';
}

/// Columns mirror the three ranking strategies compared against the ground
/// truth; entries may be NaN-free only where k is within each list.
inline void writeIsimCsv(const Vector& isim_sp, const Vector& isim_metro,
                         const Vector& isim_local, std::ostream& out) {
  if (isim_sp.size() != isim_metro.size() || isim_sp.size() != isim_local.size())
    throw std::invalid_argument("ISIM vectors differ in length");
  out << "k,isim_sp,isim_metro,isim_local\n";
  for (Index k = 0; k < isim_sp.size(); ++k)
    out << k + 1 << ',' << iodetail::formatDouble(isim_sp[k]) << ','
        << iodetail::formatDouble(isim_metro[k]) << ',' << iodetail::formatDouble(isim_local[k])
        << '\n';
}

inline void writeTrialsCsv(const std::vector<TrialResult>& results, std::ostream& out) {
  out << "trial,method,c,alpha,accuracy\n";
  for (const auto& r : results) {
    out << r.trial_id << ',' << name(r.method) << ',' << iodetail::formatDouble(r.chosen_c)
        << ',' << (r.chosen_alpha ? iodetail::formatDouble(*r.chosen_alpha) : "") << ','
        << iodetail::formatDouble(r.accuracy) << '\n';
  }
  for (ScoreMethod method : {ScoreMethod::LocalRooted, ScoreMethod::NonlocalRooted}) {
    bool any = false;
    for (const auto& r : results) any = any || r.method == method;
    if (!any) continue;
    const MethodSummary s = summarize(results, method);
    out << "median," << name(method) << ",,," << iodetail::formatDouble(s.median) << '\n';
    out << "q1," << name(method) << ",,," << iodetail::formatDouble(s.q1) << '\n';
    out << "q3," << name(method) << ",,," << iodetail::formatDouble(s.q3) << '\n';
  }
}

}  // namespace nlpr
