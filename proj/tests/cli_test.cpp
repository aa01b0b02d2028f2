#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ned");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = ned::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("ned_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& body) {
    auto p = dir_ / name;
    std::ofstream(p) << body;
    return p.string();
  }

  std::filesystem::path dir_;
};

}  // namespace

TEST(Cli, DistPlain) {
  auto r = run({"dist", "--tree1", "(()())", "--tree2", "((()))"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "2\n");
}

TEST(Cli, DistCsvBeforeOrAfterSubcommand) {
  auto a = run({"--format", "csv", "dist", "--tree1", "()", "--tree2", "(())"});
  auto b = run({"dist", "--tree1", "()", "--tree2", "(())", "--format", "csv"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, "distance\n1\n");
}

TEST(Cli, DistBreakdown) {
  auto r = run({"dist", "--tree1", "(()())", "--tree2", "((()))", "--breakdown", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "level,size_u,size_v,P,m,M,cost");
  EXPECT_NE(r.out.find("total,2\n"), std::string::npos);
}

TEST(Cli, WeightedDistanceShowsDecimal) {
  auto r = run({"dist", "--tree1", "(()())", "--tree2", "((()))", "--weights", "wplus"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find('('), std::string::npos);
}

TEST(Cli, MalformedTreeIsADataError) {
  auto r = run({"dist", "--tree1", "(()", "--tree2", "()"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("parse error"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"dist", "--tree1", "()"}).code, 1);
  EXPECT_EQ(run({"dist", "--bogus"}).code, 1);
  EXPECT_EQ(run({"--format", "xml", "dist", "--tree1", "()", "--tree2", "()"}).code, 1);
  EXPECT_EQ(run({"oracle", "compare", "--tree1", "()"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, OracleCompare) {
  auto r = run({"--format", "csv", "oracle", "compare", "--tree1", "((()()))", "--tree2",
                "(((()))(()()))"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "tree1,tree2,ted_star,exact_ted_star,exact_ted,exact_ged,wplus\n"
            "((()())),(((()))(()())),4,3,3,6," +
                r.out.substr(r.out.rfind(',') + 1));
}

TEST(Cli, OracleEnumerate) {
  auto r = run({"--format", "csv", "oracle", "enumerate", "--nmax", "3", "--depth", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "tree,nodes,levels\n(),1,1\n(()),2,2\n((())),3,3\n(()()),3,2\n");
}

TEST_F(CliFiles, MatchPrintsCostAndAssignment) {
  auto m = file("m.txt", "4 1 3\n2 0 5\n3 2 2\n");
  auto r = run({"match", "--matrix", m});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "cost: 5\nassignment: 1 0 2\n");
}

TEST_F(CliFiles, KtreeAndNed) {
  auto g = file("g.txt", "# path\n1 2\n2 3\n3 4\n4 5\n");
  auto t = run({"ktree", "--graph", g, "--node", "3", "--k", "3"});
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_EQ(t.out, "((())(()))\n");

  auto n = run({"ned", "--graph1", g, "--node1", "1", "--node2", "3", "--k", "2"});
  ASSERT_EQ(n.code, 0) << n.err;
  EXPECT_EQ(n.out, "1\n");

  auto missing = run({"ned", "--graph1", g, "--node1", "1", "--node2", "nope", "--k", "2"});
  EXPECT_EQ(missing.code, 1);

  auto nofile = run({"ktree", "--graph", (dir_ / "absent.txt").string(), "--node", "1"});
  EXPECT_EQ(nofile.code, 2);
}

TEST_F(CliFiles, BadEdgeListReportsTheLine) {
  auto g = file("bad.txt", "a b\nc\n");
  auto r = run({"ktree", "--graph", g, "--node", "a"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("2"), std::string::npos);
}

TEST_F(CliFiles, KnnAgreesWithNed) {
  auto g = file("g.txt", "a b\nb c\nc d\nd a\na e\ne f\n");
  auto r = run({"--format", "csv", "knn", "--graph", g, "--k", "3", "--query-node", "a", "-l", "1",
                "--count-evals"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "rank,node,distance");
  EXPECT_NE(r.out.find("1,a,0\n"), std::string::npos);
  EXPECT_NE(r.out.find("# evaluations: "), std::string::npos);
}

TEST_F(CliFiles, GraphdistAndOutFile) {
  auto a = file("a.txt", "a b\n");
  auto out = (dir_ / "res.txt").string();
  auto r = run({"--out", out, "graphdist", "--hausdorff", "--k", "3", a, a});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(out);
  std::string first;
  std::getline(f, first);
  EXPECT_EQ(first, "0");
  EXPECT_EQ(run({"graphdist", "--k", "3", a, a}).code, 1);
}

TEST_F(CliFiles, DeanonSummaryAndRows) {
  std::string edges;
  for (int i = 0; i < 30; ++i) edges += std::to_string(i) + " " + std::to_string((i * 7 + 3) % 30) + "\n";
  auto g = file("g.txt", edges);
  auto rows = (dir_ / "rows.csv").string();
  auto r = run({"--format", "csv", "deanon", "--graph", g, "--method", "naive", "--k", "3", "-l",
                "5", "--rows", rows});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "method,ratio,removed,added,k,l,queries,hits,precision");
  EXPECT_NE(r.out.find("1.0000"), std::string::npos);
  std::ifstream f(rows);
  std::string header;
  std::getline(f, header);
  EXPECT_EQ(header, "ratio,anon,truth,rank,top");
  EXPECT_EQ(run({"deanon", "--graph", g, "--method", "naive", "--ratio", "0.1"}).code, 1);
}

TEST(Cli, StudiesPrintTheirHeaders) {
  auto c = run({"--format", "csv", "study", "ted-closeness", "--nmax", "4", "--depth", "3"});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(c.out.substr(0, c.out.find('\n')),
            "slice,pairs,pairs_ted_pos,equal,mean_rel_err,stddev_rel_err,equality_ratio");
  auto s = run({"--format", "csv", "study", "scaling", "--sizes", "5,10", "--ks", "2", "--reps", "2"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(s.out.substr(0, s.out.find('\n')), "nodes,k,samples,p50_us,p90_us,max_us");
  auto k = run({"--format", "csv", "study", "k-effect", "--nodes", "40", "--edges", "60", "--queries",
                "5", "--kmin", "1", "--kmax", "3"});
  ASSERT_EQ(k.code, 0) << k.err;
  EXPECT_EQ(k.out.substr(0, k.out.find('\n')), "k,queries,zero_matches,nn_set,top_ties");
}
