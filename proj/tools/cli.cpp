#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ned/assignment.hpp"
#include "ned/error.hpp"
#include "ned/experiments.hpp"
#include "ned/graph.hpp"
#include "ned/level_tree.hpp"
#include "ned/ned.hpp"
#include "ned/oracle.hpp"
#include "ned/parallel.hpp"
#include "ned/random.hpp"
#include "ned/ted_star.hpp"
#include "ned/vp_tree.hpp"
#include "ned/weights.hpp"

namespace ned::cli {
namespace {

// Unreadable files and similar input problems.
struct DataFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { plain, csv };

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& os, Format f) const {
    if (f == Format::csv) {
      print_csv_row(os, header_);
      for (const auto& r : rows_) print_csv_row(os, r);
      return;
    }
    std::vector<std::size_t> width(header_.size(), 0);
    auto grow = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size() && i < width.size(); ++i)
        width[i] = std::max(width[i], r[i].size());
    };
    grow(header_);
    for (const auto& r : rows_) grow(r);
    auto line = [&](const std::vector<std::string>& r) {
      std::string s;
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) s += "  ";
        s += r[i];
        if (i + 1 < r.size()) s.append(width[i] - r[i].size(), ' ');
      }
      os << s << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
  }

 private:
  static void print_csv_row(std::ostream& os, const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) os << ',';
      const bool quote = r[i].find_first_of(",\"\n") != std::string::npos;
      if (!quote) {
        os << r[i];
        continue;
      }
      os << '"';
      for (char c : r[i]) os << (c == '"' ? "\"\"" : std::string(1, c));
      os << '"';
    }
    os << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string decimal(double v, int precision = 6) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

// Unit distances are integers; weighted ones carry an extra decimal column.
std::vector<std::string> distance_cells(const Rational& d, bool weighted) {
  if (!weighted) return {format_rational(d)};
  return {format_rational(d), decimal(to_double(d))};
}

std::vector<std::string> distance_header(bool weighted, std::string name = "distance") {
  if (!weighted) return {name};
  return {name, name + "_decimal"};
}

std::string distance_text(const Rational& d, bool weighted) {
  if (!weighted) return format_rational(d);
  return format_rational(d) + " (" + decimal(to_double(d)) + ")";
}

Graph load_graph(const std::string& path, bool directed) {
  std::ifstream in(path);
  if (!in) throw DataFailure("cannot open graph file '" + path + "'");
  try {
    return parse_edge_list(in, directed);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.where());
  }
}

WeightScheme load_weights(const std::string& spec) {
  if (spec == "unit") return WeightScheme::unit();
  if (spec == "wplus") return WeightScheme::wplus();
  std::ifstream in(spec);
  if (!in) throw DataFailure("weights must be 'unit', 'wplus' or a readable file, got '" + spec + "'");
  try {
    return parse_weight_file(in);
  } catch (const ParseError& e) {
    throw ParseError(spec + ": " + e.what(), e.where());
  }
}

CostMatrix<std::int64_t> load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataFailure("cannot open matrix file '" + path + "'");
  std::vector<std::vector<std::int64_t>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tok(line);
    std::vector<std::int64_t> row;
    std::string cell;
    while (tok >> cell) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cell.size() || v < 0)
        throw ParseError("matrix line " + std::to_string(line_no) +
                             ": entries must be non-negative integers",
                         line_no);
      row.push_back(v);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("matrix file is empty", 0);
  CostMatrix<std::int64_t> m(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size())
      throw ParseError("matrix is not square (row " + std::to_string(r + 1) + ")", r + 1);
    for (std::size_t c = 0; c < rows.size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

void breakdown_rows(Table& t, const CostBreakdown& b, const WeightScheme& ws,
                    const std::string& prefix, bool with_prefix) {
  for (std::size_t i = 0; i < b.levels.size(); ++i) {
    const auto& lc = b.levels[i];
    const int level = static_cast<int>(i) + 1;
    Rational cost = ws.insert_delete(level) * lc.padding + ws.move(level) * lc.matching;
    std::vector<std::string> row;
    if (with_prefix) row.push_back(prefix);
    for (auto s : {std::to_string(level), std::to_string(lc.size_u), std::to_string(lc.size_v),
                   std::to_string(lc.padding), std::to_string(lc.matching_min),
                   std::to_string(lc.matching), format_rational(cost)})
      row.push_back(s);
    t.add(std::move(row));
  }
}

std::vector<std::string> breakdown_header(bool with_prefix) {
  std::vector<std::string> h;
  if (with_prefix) h.push_back("tree");
  for (auto s : {"level", "size_u", "size_v", "P", "m", "M", "cost"}) h.push_back(s);
  return h;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += sep;
    s += parts[i];
  }
  return s;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Node similarity across graphs via TED* over k-adjacent trees", "ned"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string format_name = "plain";
  std::string out_path;
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"plain", "csv"}))
      ->capture_default_str();
  app.add_option("--out", out_path, "Write results to this file instead of stdout");

  // ktree
  auto* ktree = app.add_subcommand("ktree", "Extract a node's k-adjacent tree");
  std::string kt_graph, kt_node, kt_mode = "out";
  int kt_k = 3;
  bool kt_directed = false, kt_annotate = false;
  ktree->add_option("--graph", kt_graph, "Edge-list file")->required();
  ktree->add_option("--node", kt_node, "Root node label")->required();
  ktree->add_option("--k", kt_k, "Number of levels")->check(CLI::Range(1, 1 << 20));
  ktree->add_flag("--directed", kt_directed, "Read the graph as directed");
  ktree->add_option("--mode", kt_mode, "Edge direction for directed graphs")
      ->check(CLI::IsMember({"out", "in"}));
  ktree->add_flag("--annotate", kt_annotate, "Also print graph labels per level");

  // dist
  auto* dist = app.add_subcommand("dist", "TED* between two tree literals");
  std::string d_t1, d_t2, d_weights = "unit";
  bool d_breakdown = false;
  dist->add_option("--tree1", d_t1, "First tree literal, e.g. (()())")->required();
  dist->add_option("--tree2", d_t2, "Second tree literal");
  dist->add_option("--weights", d_weights, "unit, wplus or a weight file");
  dist->add_flag("--breakdown", d_breakdown, "Per-level cost table");

  // ned
  auto* nedc = app.add_subcommand("ned", "NED between two nodes");
  std::string n_g1, n_g2, n_u, n_v, n_weights = "unit";
  int n_k = 3;
  bool n_directed = false, n_breakdown = false;
  nedc->add_option("--graph1", n_g1, "Edge-list file of the first node")->required();
  nedc->add_option("--node1", n_u, "First node label")->required();
  nedc->add_option("--graph2", n_g2, "Edge-list file of the second node (default: graph1)");
  nedc->add_option("--node2", n_v, "Second node label")->required();
  nedc->add_option("--k", n_k, "Number of levels")->check(CLI::Range(1, 1 << 20));
  nedc->add_option("--weights", n_weights, "unit, wplus or a weight file");
  nedc->add_flag("--directed", n_directed, "Directed graphs: in-tree plus out-tree distance");
  nedc->add_flag("--breakdown", n_breakdown, "Per-level cost table");

  // knn
  auto* knn = app.add_subcommand("knn", "Nearest nodes of a graph to a query node");
  std::string q_graph, q_qgraph, q_qnode, q_weights = "unit";
  int q_k = 3;
  std::uint64_t q_seed = 0;
  std::size_t q_l = 5;
  double q_radius = -1;
  bool q_directed = false, q_count = false;
  knn->add_option("--graph", q_graph, "Edge-list file to index")->required();
  knn->add_option("--k", q_k, "Number of levels")->check(CLI::Range(1, 1 << 20));
  knn->add_option("--index-seed", q_seed, "Vantage selection seed");
  knn->add_option("--query-graph", q_qgraph, "Graph holding the query node (default: --graph)");
  knn->add_option("--query-node", q_qnode, "Query node label")->required();
  auto* l_opt = knn->add_option("-l", q_l, "Number of neighbors")->check(CLI::Range(1, 1 << 30));
  knn->add_option("--radius", q_radius, "Range query radius instead of -l")
      ->check(CLI::NonNegativeNumber)
      ->excludes(l_opt);
  knn->add_option("--weights", q_weights, "unit, wplus or a weight file");
  knn->add_flag("--directed", q_directed, "Read graphs as directed");
  knn->add_flag("--count-evals", q_count, "Report distance evaluations");

  // graphdist
  auto* gd = app.add_subcommand("graphdist", "Hausdorff distance between two graphs");
  std::string gd_a, gd_b, gd_weights = "unit";
  int gd_k = 3;
  std::size_t gd_sample = 0;
  std::uint64_t gd_seed = 0;
  bool gd_hausdorff = false, gd_directed = false;
  gd->add_flag("--hausdorff", gd_hausdorff, "Hausdorff over node NED (the only measure)");
  gd->add_option("--k", gd_k, "Number of levels")->check(CLI::Range(1, 1 << 20));
  gd->add_option("graph_a", gd_a, "First edge-list file")->required();
  gd->add_option("graph_b", gd_b, "Second edge-list file")->required();
  gd->add_option("--sample", gd_sample, "Nodes sampled per side (approximate)")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 40));
  gd->add_option("--seed", gd_seed, "Sampling seed");
  gd->add_option("--weights", gd_weights, "unit, wplus or a weight file");
  gd->add_flag("--directed", gd_directed, "Read graphs as directed");

  // oracle
  auto* orc = app.add_subcommand("oracle", "Brute-force reference computations");
  orc->require_subcommand(1);
  orc->fallthrough();
  auto* compare = orc->add_subcommand("compare", "Algorithm vs exhaustive search");
  bool o_all = false;
  int o_nmax = 7, o_depth = 3, o_budget = 24;
  std::string o_t1, o_t2;
  auto* all_flag = compare->add_flag("--all", o_all, "Every pair of enumerated trees");
  compare->add_option("--nmax", o_nmax, "Maximum tree size")->check(CLI::Range(1, 8));
  compare->add_option("--depth", o_depth, "Maximum depth in edges")->check(CLI::Range(0, 7));
  compare->add_option("--budget", o_budget, "Search bound for exact TED*")->check(CLI::Range(1, 64));
  compare->add_option("--tree1", o_t1, "First tree literal")->excludes(all_flag);
  compare->add_option("--tree2", o_t2, "Second tree literal")->excludes(all_flag);
  auto* enumerate = orc->add_subcommand("enumerate", "List trees up to isomorphism");
  int e_nmax = 5, e_depth = 8;
  enumerate->add_option("--nmax", e_nmax, "Maximum tree size")->check(CLI::Range(1, 9));
  enumerate->add_option("--depth", e_depth, "Maximum depth in edges")->check(CLI::Range(0, 8));

  // deanon
  auto* de = app.add_subcommand("deanon", "Anonymize a graph and re-identify its nodes");
  std::string de_graph, de_method = "naive", de_ties = "inclusive", de_sim = "ned",
                        de_weights = "unit", de_rows;
  std::vector<double> de_ratios{0.0};
  int de_k = 3;
  std::size_t de_l = 5, de_sample = 0;
  std::uint64_t de_seed = 0;
  bool de_directed = false;
  de->add_option("--graph", de_graph, "Edge-list file")->required();
  de->add_option("--method", de_method, "Anonymization method")
      ->check(CLI::IsMember({"naive", "sparsify", "perturb"}));
  de->add_option("--ratio", de_ratios, "Edge ratio(s) p; repeat for a sweep")
      ->check(CLI::Range(0.0, 1.0));
  de->add_option("--k", de_k, "Number of levels")->check(CLI::Range(1, 1 << 20));
  de->add_option("-l", de_l, "Candidates per query")->check(CLI::Range(1, 1 << 30));
  de->add_option("--sample", de_sample, "Query nodes sampled (0: all)");
  de->add_option("--seed", de_seed, "Anonymization and sampling seed");
  de->add_option("--tie-policy", de_ties, "Ties at the cutoff")
      ->check(CLI::IsMember({"inclusive", "exclusive"}));
  de->add_option("--similarity", de_sim, "Node similarity")
      ->check(CLI::IsMember({"ned", "degree"}));
  de->add_option("--weights", de_weights, "unit, wplus or a weight file");
  de->add_option("--rows", de_rows, "Write per-query rows (CSV) to this file");
  de->add_flag("--directed", de_directed, "Read the graph as directed");

  // study
  auto* st = app.add_subcommand("study", "Experiment tables");
  st->require_subcommand(1);
  st->fallthrough();
  auto* close = st->add_subcommand("ted-closeness", "TED* vs exact unordered TED");
  int c_nmax = 6, c_depth = 5;
  close->add_option("--nmax", c_nmax, "Maximum tree size")->check(CLI::Range(1, 8));
  close->add_option("--depth", c_depth, "Maximum depth in edges")->check(CLI::Range(0, 7));
  auto* scale = st->add_subcommand("scaling", "TED* wall time by tree size and k");
  std::vector<std::size_t> s_sizes{1, 10, 50, 100, 200, 500};
  std::vector<int> s_ks{2, 3, 4};
  std::size_t s_reps = 20;
  std::uint64_t s_seed = 0;
  scale->add_option("--sizes", s_sizes, "Tree sizes")->delimiter(',');
  scale->add_option("--ks", s_ks, "Level counts")->delimiter(',')->check(CLI::Range(1, 8));
  scale->add_option("--reps", s_reps, "Pairs per bucket")->check(CLI::Range(1, 1 << 20));
  scale->add_option("--seed", s_seed, "Generator seed");
  auto* keff = st->add_subcommand("k-effect", "Distance-0 matches and ties as k grows");
  std::string ke_g1, ke_g2;
  std::size_t ke_nodes = 200, ke_edges = 400, ke_queries = 50, ke_l = 5;
  int ke_kmin = 1, ke_kmax = 6;
  std::uint64_t ke_seed = 0;
  keff->add_option("--graph1", ke_g1, "Query graph (default: seeded random graph)");
  keff->add_option("--graph2", ke_g2, "Target graph (default: seeded random graph)");
  keff->add_option("--nodes", ke_nodes, "Random graph node count")->check(CLI::Range(1, 1 << 24));
  keff->add_option("--edges", ke_edges, "Random graph edge count");
  keff->add_option("--queries", ke_queries, "Query nodes")->check(CLI::Range(1, 1 << 24));
  keff->add_option("--kmin", ke_kmin, "Smallest k")->check(CLI::Range(1, 8));
  keff->add_option("--kmax", ke_kmax, "Largest k")->check(CLI::Range(1, 8));
  keff->add_option("-l", ke_l, "Top-l cutoff for ties")->check(CLI::Range(1, 1 << 20));
  keff->add_option("--seed", ke_seed, "Seed for graphs and queries");

  // match (debugging)
  auto* match = app.add_subcommand("match", "Minimum-cost perfect matching of a matrix");
  match->group("");
  std::string m_path;
  match->add_option("--matrix", m_path, "Whitespace-separated square integer matrix")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  const Format format = format_name == "csv" ? Format::csv : Format::plain;
  std::ostringstream buf;
  std::ostream& os = buf;

  try {
    if (ktree->parsed()) {
      Graph g = load_graph(kt_graph, kt_directed);
      if (!kt_directed && ktree->count("--mode"))
        throw UsageError("--mode applies to directed graphs only");
      Direction mode = !kt_directed ? Direction::undirected
                                    : (kt_mode == "in" ? Direction::in : Direction::out);
      LevelTree t = extract_k_adjacent_tree(g, g.index_of(kt_node), kt_k, mode);
      os << to_tree_literal(t) << '\n';
      if (kt_annotate) os << annotate(t, g);
    } else if (dist->parsed()) {
      LevelTree a = parse_tree_literal(d_t1);
      if (!dist->count("--tree2")) throw UsageError("dist: --tree2 is required");
      LevelTree b = parse_tree_literal(d_t2);
      WeightScheme ws = load_weights(d_weights);
      const bool weighted = !ws.is_unit();
      TedStarResult r = ted_star(a, b, ws);
      if (d_breakdown) {
        Table t(breakdown_header(false));
        breakdown_rows(t, r.breakdown, ws, "", false);
        t.print(os, format);
        if (format == Format::csv)
          os << "total," << join(distance_cells(r.distance, weighted), ",") << '\n';
        else
          os << "total: " << distance_text(r.distance, weighted) << '\n';
      } else if (format == Format::csv) {
        Table t(distance_header(weighted));
        t.add(distance_cells(r.distance, weighted));
        t.print(os, format);
      } else {
        os << distance_text(r.distance, weighted) << '\n';
      }
    } else if (nedc->parsed()) {
      WeightScheme ws = load_weights(n_weights);
      const bool weighted = !ws.is_unit();
      Graph g1 = load_graph(n_g1, n_directed);
      std::optional<Graph> g2_store;
      if (!n_g2.empty()) g2_store.emplace(load_graph(n_g2, n_directed));
      const Graph& g2 = g2_store ? *g2_store : g1;
      NodeIndex u = g1.index_of(n_u);
      NodeIndex v = g2.index_of(n_v);
      Rational total(0);
      if (n_directed) {
        auto r = ned_directed_breakdown(g1, u, g2, v, n_k, ws);
        total = r.distance;
        if (n_breakdown) {
          Table t(breakdown_header(true));
          breakdown_rows(t, r.in.breakdown, ws, "in", true);
          breakdown_rows(t, r.out.breakdown, ws, "out", true);
          t.print(os, format);
        }
      } else {
        auto r = ned_breakdown(g1, u, g2, v, n_k, ws);
        total = r.distance;
        if (n_breakdown) {
          Table t(breakdown_header(false));
          breakdown_rows(t, r.breakdown, ws, "", false);
          t.print(os, format);
        }
      }
      if (n_breakdown) {
        if (format == Format::csv)
          os << "total," << join(distance_cells(total, weighted), ",") << '\n';
        else
          os << "total: " << distance_text(total, weighted) << '\n';
      } else if (format == Format::csv) {
        Table t(distance_header(weighted));
        t.add(distance_cells(total, weighted));
        t.print(os, format);
      } else {
        os << distance_text(total, weighted) << '\n';
      }
    } else if (knn->parsed()) {
      WeightScheme ws = load_weights(q_weights);
      const bool weighted = !ws.is_unit();
      Graph g = load_graph(q_graph, q_directed);
      std::optional<Graph> qg_store;
      if (!q_qgraph.empty()) qg_store.emplace(load_graph(q_qgraph, q_directed));
      const Graph& qg = qg_store ? *qg_store : g;
      NodeSignature q = make_signature(qg, qg.index_of(q_qnode), q_k);
      NedIndex index = build_index(g, q_k, ws, q_seed);
      QueryResult<Rational> r;
      if (knn->count("--radius")) {
        // Exact decimal radius as a rational.
        std::ostringstream rs;
        rs << std::setprecision(12) << q_radius;
        r = index.range_query(q, parse_rational(rs.str()));
      } else {
        r = index.knn(q, q_l);
      }
      std::vector<std::string> header{"rank", "node"};
      for (auto& h : distance_header(weighted)) header.push_back(h);
      Table t(header);
      for (std::size_t i = 0; i < r.neighbors.size(); ++i) {
        std::vector<std::string> row{std::to_string(i + 1), g.label(r.neighbors[i].id)};
        for (auto& c : distance_cells(r.neighbors[i].distance, weighted)) row.push_back(c);
        t.add(std::move(row));
      }
      t.print(os, format);
      if (q_count)
        os << (format == Format::csv ? "# " : "") << "evaluations: " << r.evaluations << " of "
           << index.size() << '\n';
    } else if (gd->parsed()) {
      if (!gd_hausdorff) throw UsageError("graphdist: --hausdorff is the only supported measure");
      WeightScheme ws = load_weights(gd_weights);
      const bool weighted = !ws.is_unit();
      Graph a = load_graph(gd_a, gd_directed);
      Graph b = load_graph(gd_b, gd_directed);
      HausdorffOptions opt;
      if (gd->count("--sample")) opt.sample = gd_sample;
      opt.seed = gd_seed;
      HausdorffResult r = hausdorff_graph_distance(a, b, gd_k, ws, opt);
      if (format == Format::csv) {
        std::vector<std::string> header = distance_header(weighted);
        for (auto s : {"forward", "backward", "approximate", "nodes_a", "nodes_b"})
          header.push_back(s);
        Table t(header);
        auto row = distance_cells(r.distance, weighted);
        row.push_back(format_rational(r.forward));
        row.push_back(format_rational(r.backward));
        row.push_back(r.approximate ? "yes" : "no");
        row.push_back(std::to_string(r.nodes_a));
        row.push_back(std::to_string(r.nodes_b));
        t.add(std::move(row));
        t.print(os, format);
      } else {
        os << distance_text(r.distance, weighted) << '\n';
        os << "h(A,B) = " << distance_text(r.forward, weighted)
           << ", h(B,A) = " << distance_text(r.backward, weighted) << '\n';
        if (r.approximate)
          os << "approximate: sampled " << r.nodes_a << " of " << a.size() << " and " << r.nodes_b
             << " of " << b.size() << " nodes\n";
      }
    } else if (orc->parsed()) {
      if (enumerate->parsed()) {
        Table t({"tree", "nodes", "levels"});
        for (const auto& tr : enumerate_trees(e_nmax, e_depth))
          t.add({to_tree_literal(tr), std::to_string(tr.node_count()),
                 std::to_string(tr.depth_levels())});
        t.print(os, format);
      } else {
        std::vector<std::pair<LevelTree, LevelTree>> pairs;
        if (o_all) {
          pairs = exhaustive_pairs(o_nmax, o_depth);
        } else {
          if (o_t1.empty() || o_t2.empty())
            throw UsageError("oracle compare: give --all or both --tree1 and --tree2");
          pairs.emplace_back(parse_tree_literal(o_t1), parse_tree_literal(o_t2));
        }
        std::vector<std::vector<std::string>> rows(pairs.size());
        parallel_for(pairs.size(), [&](std::size_t i) {
          const auto& [a, b] = pairs[i];
          auto exact = exact_ted_star(a, b, o_budget);
          std::string ged = "NA";
          if (a.node_count() <= 7 && b.node_count() <= 7)
            ged = std::to_string(exact_ged_on_trees(a, b));
          rows[i] = {to_tree_literal(a),
                     to_tree_literal(b),
                     format_rational(ted_star(a, b).distance),
                     exact.exact ? std::to_string(exact.value) : ">=" + std::to_string(exact.value),
                     std::to_string(exact_unordered_ted(a, b)),
                     ged,
                     format_rational(ted_star(a, b, WeightScheme::wplus()).distance)};
        });
        Table t({"tree1", "tree2", "ted_star", "exact_ted_star", "exact_ted", "exact_ged", "wplus"});
        for (auto& r : rows) t.add(std::move(r));
        t.print(os, format);
      }
    } else if (de->parsed()) {
      WeightScheme ws = load_weights(de_weights);
      Graph g = load_graph(de_graph, de_directed);
      if (de_method == "naive" && de->count("--ratio"))
        throw UsageError("--ratio does not apply to naive anonymization");
      AnonymizationSpec spec;
      spec.method = de_method == "sparsify"  ? AnonymizationMethod::sparsify
                    : de_method == "perturb" ? AnonymizationMethod::perturb
                                             : AnonymizationMethod::naive;
      spec.seed = de_seed;
      DeanonOptions opt;
      opt.k = de_k;
      opt.l = de_l;
      opt.sample_size = de_sample;
      opt.seed = de_seed;
      opt.ties = de_ties == "exclusive" ? TiePolicy::exclusive : TiePolicy::inclusive;
      opt.similarity = de_sim == "degree" ? Similarity::degree_histogram : Similarity::ned;
      opt.weights = ws;
      Table summary({"method", "ratio", "removed", "added", "k", "l", "queries", "hits", "precision"});
      Table rows({"ratio", "anon", "truth", "rank", "top"});
      for (double p : de_ratios) {
        spec.ratio = p;
        AnonymizedGraph an = anonymize(g, spec);
        for (const auto& w : an.warnings) err << "warning: " << w << '\n';
        DeanonReport rep = deanonymize(g, an.graph, an.truth, opt);
        summary.add({de_method, decimal(p), std::to_string(an.removed), std::to_string(an.added),
                     std::to_string(de_k), std::to_string(de_l), std::to_string(rep.sample_size),
                     std::to_string(rep.hits), fixed(rep.precision, 4)});
        for (const auto& r : rep.rows) {
          std::vector<std::string> top;
          for (const auto& d : r.top) top.push_back(format_rational(d));
          rows.add({decimal(p), an.graph.label(r.anon), g.label(r.truth),
                    r.rank ? std::to_string(*r.rank) : "miss", join(top, " ")});
        }
      }
      summary.print(os, format);
      if (!de_rows.empty()) {
        std::ofstream rf(de_rows);
        if (!rf) throw DataFailure("cannot write '" + de_rows + "'");
        rows.print(rf, Format::csv);
      }
    } else if (st->parsed()) {
      if (close->parsed()) {
        ClosenessReport rep = ted_closeness_study(exhaustive_pairs(c_nmax, c_depth));
        Table t({"slice", "pairs", "pairs_ted_pos", "equal", "mean_rel_err", "stddev_rel_err",
                 "equality_ratio"});
        auto add = [&](const std::string& name, const ClosenessStats& s) {
          t.add({name, std::to_string(s.total_pairs), std::to_string(s.pairs),
                 std::to_string(s.equal), fixed(s.mean_relative_error, 4),
                 fixed(s.stddev_relative_error, 4), fixed(s.equality_ratio, 4)});
        };
        add("all", rep.overall);
        for (const auto& [levels, s] : rep.by_levels) add("levels=" + std::to_string(levels), s);
        t.print(os, format);
      } else if (scale->parsed()) {
        Table t({"nodes", "k", "samples", "p50_us", "p90_us", "max_us"});
        for (const auto& r : scaling_study(s_sizes, s_ks, s_reps, s_seed))
          t.add({std::to_string(r.nodes), std::to_string(r.k), std::to_string(r.samples),
                 fixed(r.p50_us, 1), fixed(r.p90_us, 1), fixed(r.max_us, 1)});
        t.print(os, format);
      } else if (keff->parsed()) {
        if (ke_kmin > ke_kmax) throw UsageError("--kmin must not exceed --kmax");
        Rng rng(ke_seed);
        auto make = [&](const std::string& path) {
          return path.empty() ? random_graph(ke_nodes, ke_edges, rng) : load_graph(path, false);
        };
        Graph g1 = make(ke_g1);
        Graph g2 = make(ke_g2);
        KEffectReport rep = k_effect_study(g1, g2, ke_queries, ke_kmin, ke_kmax, ke_l, ke_seed);
        Table t({"k", "queries", "zero_matches", "nn_set", "top_ties"});
        for (const auto& r : rep.rows)
          t.add({std::to_string(r.k), std::to_string(r.queries), std::to_string(r.zero_matches),
                 std::to_string(r.nn_set), std::to_string(r.top_ties)});
        t.print(os, format);
      }
    } else if (match->parsed()) {
      auto m = load_matrix(m_path);
      auto a = min_cost_perfect_matching(m);
      std::vector<std::string> cols;
      for (auto c : a.row_to_col) cols.push_back(std::to_string(c));
      if (format == Format::csv) {
        Table t({"cost", "assignment"});
        t.add({std::to_string(a.cost), join(cols, " ")});
        t.print(os, format);
      } else {
        os << "cost: " << a.cost << '\n' << "assignment: " << join(cols, " ") << '\n';
      }
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kData;
  } catch (const InvariantError& e) {
    err << "invariant violated: " << e.what() << '\n';
    return kData;
  } catch (const DomainError& e) {
    err << "data error: " << e.what() << '\n';
    return kData;
  } catch (const DataFailure& e) {
    err << "data error: " << e.what() << '\n';
    return kData;
  } catch (const std::bad_alloc&) {
    err << "data error: out of memory\n";
    return kData;
  }

  if (out_path.empty()) {
    out << buf.str();
  } else {
    std::ofstream f(out_path);
    if (!f) {
      err << "data error: cannot write '" << out_path << "'\n";
      return kData;
    }
    f << buf.str();
  }
  return kOk;
}

}  // namespace ned::cli
