#include "corpus.hpp"

#include "cli.hpp"

#include <hatdeg/serialize.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hatdeg;
namespace fs = std::filesystem;

namespace {
    struct Run {
        int code;
        std::string out, err;
    };

    auto run(std::vector<std::string> args) -> Run
    {
        std::ostringstream out, err;
        int code = cli::run_command(args, out, err);
        return {code, out.str(), err.str()};
    }

    class Cli : public ::testing::Test {
      protected:
        fs::path dir;

        void SetUp() override
        {
            dir = fs::temp_directory_path() / ("hatdeg-cli-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-"
                                                  + ::testing::UnitTest::GetInstance()->current_test_info()->name());
            fs::create_directories(dir);
        }
        void TearDown() override { fs::remove_all(dir); }

        auto file(const std::string & name, const std::string & text) -> std::string
        {
            auto p = (dir / name).string();
            std::ofstream(p) << text;
            return p;
        }
        auto graph(const std::string & name, const Graph & g) -> std::string { return file(name, to_edge_list(g)); }
        auto path(const std::string & name) -> std::string { return (dir / name).string(); }
    };

    auto slurp(const std::string & p) -> std::string
    {
        std::ifstream in(p);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
}

TEST_F(Cli, GenWritesEdgeLists)
{
    auto r = run({"gen", "--family", "cycle", "--n", "5"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(parse_edge_list(r.out), generate(FamilySpec::cycle(5)));

    r = run({"gen", "--family", "maximal-outerplanar", "--n", "9", "--seed", "3", "--out", path("m.el")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(parse_edge_list(slurp(path("m.el"))), generate(FamilySpec::maximal_outerplanar(9, 3)));

    r = run({"gen", "--family", "one-subdivision-of", "--base", "complete", "--n", "4"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(parse_edge_list(r.out).num_vertices(), 10);

    r = run({"gen", "--family", "complete-bipartite", "--m", "2", "--n", "3"});
    EXPECT_EQ(parse_edge_list(r.out), generate(FamilySpec::complete_bipartite(2, 3)));
}

TEST_F(Cli, ExitCodeMatrix)
{
    auto tree = graph("tree.el", generate(FamilySpec::random_tree(8, 1)));
    auto bad = file("bad.el", "3 2\n0 1\n1 1\n");
    struct Case {
        std::vector<std::string> args;
        int code;
    };
    const std::vector<Case> cases{
        {{}, 2},
        {{"frobnicate"}, 2},
        {{"gen", "--family", "gnp", "--n", "5", "--p", "0.5"}, 2},
        {{"gen", "--family", "random-tree", "--n", "5"}, 2},
        {{"gen", "--family", "nonsense", "--n", "5"}, 2},
        {{"gen", "--family", "cycle", "--n", "2"}, 2},
        {{"gen", "--family", "cycle"}, 2},
        {{"strongdeg", "--in", tree}, 0},
        {{"strongdeg", "--in", bad}, 2},
        {{"strongdeg", "--in", path("missing.el")}, 2},
        {{"degeneracy", "--in", tree}, 0},
        {{"certify", "--in", tree}, 0},
        {{"certify", "--in", tree, "--schedule", "outerplanar"}, 2},
        {{"certify", "--in", tree, "--schedule", "fancy"}, 2},
        {{"certify", "--in", tree, "--q", "abc"}, 2},
        {{"certify", "--in", tree, "--q", "2"}, 1},
        {{"exact", "--in", tree}, 2},
        {{"exact", "--in", tree, "--qmax", "0"}, 2},
        {{"exact", "--in", tree, "--qmax", "3", "--budgets", "1,2"}, 2},
        {{"exact", "--in", tree, "--qmax", "3", "--guard", "10"}, 1},
        {{"density", "--in", tree, "--depth", "2"}, 2},
        {{"density", "--in", tree, "--depth", "1"}, 0},
        {{"bounds", "--s", "2"}, 2},
        {{"bounds", "--prop", "31", "--s", "1", "--t0", "1", "--th", "1"}, 2},
        {{"bounds", "--prop", "31", "--s", "2", "--t0", "2", "--th", "1"}, 2},
        {{"bounds", "--prop", "32", "--s", "2", "--g1", "x"}, 2},
        {{"obstruction", "--in", tree, "--d", "0"}, 2},
        {{"obstruction", "--in", tree, "--d", "1"}, 0},
        {{"experiment-random", "--n", "100", "--C", "2", "--trials", "2"}, 2},
        {{"experiment-random", "--n", "100", "--C", "-1", "--trials", "2", "--seed", "1"}, 2},
        {{"experiment-random", "--n", "100", "--C", "2", "--trials", "2", "--seed", "1"}, 0},
        {{"--help"}, 0},
    };
    for (const auto & c : cases) {
        std::string joined;
        for (const auto & a : c.args)
            joined += a + " ";
        EXPECT_EQ(run(c.args).code, c.code) << joined;
    }
}

TEST_F(Cli, StrongDegeneracyTextAndJson)
{
    auto tree = graph("tree.el", generate(FamilySpec::random_tree(6, 2)));
    auto r = run({"strongdeg", "--in", tree});
    EXPECT_EQ(r.out.rfind("strong degeneracy: 1\norder: ", 0), 0u) << r.out;

    r = run({"--json", "strongdeg", "--in", graph("k23.el", generate(FamilySpec::complete_bipartite(2, 3)))});
    auto j = Json::parse(r.out);
    EXPECT_EQ(j["d"], 3);
    auto order = j["order"].get<EliminationOrder>();
    EXPECT_EQ(validate_order(generate(FamilySpec::complete_bipartite(2, 3)), order), std::nullopt);

    r = run({"degeneracy", "--in", tree, "--json"});
    EXPECT_EQ(Json::parse(r.out)["degeneracy"], 1);
}

TEST_F(Cli, CertifyThenCheck)
{
    Graph fan = test::fan(5);
    auto el = graph("fan6.el", fan);
    auto r = run({"certify", "--in", el, "--schedule", "outerplanar", "--out", path("cert.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("bound: 40"), std::string::npos) << r.out;

    r = run({"certify", "--in", el, "--schedule", "outerplanar", "--json"});
    auto cert = Json::parse(r.out).get<ReductionCertificate>();
    EXPECT_EQ(cert.bound(), 40);
    EXPECT_EQ(Json(cert), Json::parse(slurp(path("cert.json"))));

    r = run({"check-certificate", "--in", el, "--cert", path("cert.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "certificate valid\nbound: 40\n");

    auto j = Json::parse(slurp(path("cert.json")));
    j["steps"][0]["lhs"]["num"] = "0";
    auto tampered = file("bad.json", j.dump());
    r = run({"check-certificate", "--in", el, "--cert", tampered, "--json"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(Json::parse(r.out)["valid"], false);
}

TEST_F(Cli, CertifyVariants)
{
    auto k23 = graph("k23.el", generate(FamilySpec::complete_bipartite(2, 3)));
    auto r = run({"certify", "--in", k23, "--d", "2", "--q", "17"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;

    auto order = file("order.txt", "2 0 1 3 4\n");
    r = run({"certify", "--in", k23, "--d", "2", "--q", "17", "--order", "file:" + order, "--json"});
    EXPECT_EQ(r.code, 1);
    auto j = Json::parse(r.out);
    EXPECT_EQ(j["certified"], false);
    EXPECT_EQ(j["failure"]["stage"], 0);

    auto schedule = file("s.json", R"({"by_degree": [4, 3, 2], "fallback": 1})");
    r = run({"certify", "--in", graph("p4.el", generate(FamilySpec::path(4))), "--schedule", "file:" + schedule, "--q", "9"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    r = run({"certify", "--in", k23, "--schedule", "file:" + schedule});
    EXPECT_EQ(r.code, 2);
    r = run({"certify", "--in", k23, "--schedule", "file:" + file("junk.json", "{]"), "--q", "5"});
    EXPECT_EQ(r.code, 2);
}

TEST_F(Cli, ExactAndVerify)
{
    auto c4 = graph("c4.el", generate(FamilySpec::cycle(4)));
    auto r = run({"exact", "--in", c4, "--qmax", "4", "--strategy-out", path("s.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("HG = 3\n", 0), 0u) << r.out;

    r = run({"exact", "--in", c4, "--qmax", "2", "--json"});
    auto j = Json::parse(r.out);
    EXPECT_EQ(j["value"], 2);
    EXPECT_EQ(j["at_least"], true);
    auto table = j["strategy"].get<StrategyTable>();
    EXPECT_EQ(table.q, 2);

    r = run({"verify-strategy", "--in", c4, "--strategy", path("s.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "winning\n");

    auto s = Json::parse(slurp(path("s.json"))).get<StrategyTable>();
    for (auto & cell : s.guesses[0])
        cell = {0};
    for (auto & cell : s.guesses[1])
        cell = {0};
    for (auto & cell : s.guesses[2])
        cell = {0};
    for (auto & cell : s.guesses[3])
        cell = {0};
    auto mean = file("mean.json", Json(s).dump());
    r = run({"verify-strategy", "--in", c4, "--strategy", mean, "--json"});
    EXPECT_EQ(r.code, 1);
    j = Json::parse(r.out);
    EXPECT_EQ(j["winning"], false);
    EXPECT_EQ(j["mean_colouring"], (std::vector<int>{1, 1, 1, 1}));

    s.guesses[0].pop_back();
    r = run({"verify-strategy", "--in", c4, "--strategy", file("short.json", Json(s).dump())});
    EXPECT_EQ(r.code, 2);

    r = run({"exact", "--in", graph("k2.el", generate(FamilySpec::path(2))), "--qmax", "5", "--budgets", "all:2"});
    EXPECT_EQ(r.out.rfind("HG = 4\n", 0), 0u) << r.out;
}

TEST_F(Cli, ExactThreadsAgree)
{
    auto k3 = graph("k3.el", generate(FamilySpec::complete(3)));
    auto one = Json::parse(run({"exact", "--in", k3, "--qmax", "4", "--threads", "1", "--json"}).out);
    auto four = Json::parse(run({"exact", "--in", k3, "--qmax", "4", "--threads", "4", "--json"}).out);
    EXPECT_EQ(one["value"], 3);
    EXPECT_EQ(one["strategy"], four["strategy"]);
}

TEST_F(Cli, DensityJsonRoundTrips)
{
    Graph g = generate(FamilySpec::one_subdivision_of(FamilySpec::complete(4)));
    auto el = graph("sk4.el", g);
    for (std::string depth : {"0", "half", "1"}) {
        auto r = run({"density", "--in", el, "--depth", depth, "--json"});
        ASSERT_EQ(r.code, 0) << depth;
        auto d = Json::parse(r.out).get<Density>();
        EXPECT_EQ(validate_density(g, d), std::nullopt) << depth;
        EXPECT_EQ(d.value, depth == "0" ? Rational(6, 5) : Rational(3, 2));
    }
    EXPECT_EQ(run({"density", "--in", graph("big.el", Graph(12)), "--depth", "1"}).code, 1);
}

TEST_F(Cli, Bounds)
{
    auto r = run({"bounds", "--prop", "31", "--s", "2", "--t0", "2", "--th", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("d = 8"), std::string::npos);
    r = run({"bounds", "--prop", "32", "--s", "2", "--g1", "1.5", "--json"});
    EXPECT_EQ(Json::parse(r.out)["d"], 6);
    auto sk4 = graph("sk4.el", generate(FamilySpec::one_subdivision_of(FamilySpec::complete(4))));
    r = run({"bounds", "--prop", "32", "--s", "2", "--in", sk4, "--json"});
    EXPECT_EQ(Json::parse(r.out)["d"], 6);
    r = run({"bounds", "--minor-free", "--s", "2", "--t", "4", "--C", "1", "--json"});
    EXPECT_EQ(Json::parse(r.out)["d"], 18);
}

TEST_F(Cli, ObstructionWitnessesValidate)
{
    Graph k23 = generate(FamilySpec::complete_bipartite(2, 3));
    auto r = run({"obstruction", "--in", graph("k23.el", k23), "--d", "2", "--json"});
    EXPECT_EQ(r.code, 0);
    auto w = Json::parse(r.out)["witness"].get<ObstructionWitness>();
    ASSERT_TRUE(std::holds_alternative<BipartiteWitness>(w));
    EXPECT_EQ(validate_witness(k23, w), std::nullopt);

    Graph sk4 = generate(FamilySpec::one_subdivision_of(FamilySpec::complete(4)));
    r = run({"obstruction", "--in", graph("sk4.el", sk4), "--d", "2", "--json"});
    w = Json::parse(r.out)["witness"].get<ObstructionWitness>();
    ASSERT_TRUE(std::holds_alternative<SubdivisionWitness>(w));
    EXPECT_EQ(std::get<SubdivisionWitness>(w).min_degree, 3);
    EXPECT_EQ(validate_witness(sk4, w), std::nullopt);

    r = run({"obstruction", "--in", graph("k23b.el", k23), "--d", "3"});
    EXPECT_EQ(r.out, "strongly 3-degenerate: no obstruction\n");
}

TEST_F(Cli, ExperimentIsReproducible)
{
    auto a = run({"experiment-random", "--n", "500", "--C", "2", "--trials", "3", "--seed", "11", "--json"});
    auto b = run({"experiment-random", "--n", "500", "--C", "2", "--trials", "3", "--seed", "11", "--json"});
    EXPECT_EQ(a.out, b.out);
    auto j = Json::parse(a.out);
    EXPECT_EQ(j["rows"].size(), 3u);
    EXPECT_DOUBLE_EQ(j["aggregates"]["markov_bound"].get<double>(), 64.0 / 500);

    auto zero = cli::random_experiment(50, 0, 4, 1);
    EXPECT_EQ(zero.free_fraction, 1.0);
    for (const auto & row : zero.rows) {
        EXPECT_EQ(row.m, 0);
        EXPECT_EQ(row.strong_degeneracy, 1);
        EXPECT_EQ(row.hg_bound, 2);
    }

    auto csv = run({"experiment-random", "--n", "200", "--C", "1", "--trials", "2", "--seed", "4", "--csv", "-"});
    EXPECT_EQ(csv.out.rfind("seed,n,m,max_common_neighbors,k23_free,strong_degeneracy,hg_bound\n", 0), 0u);
    EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 3);
}

TEST(ParseRational, Forms)
{
    EXPECT_EQ(cli::parse_rational("3"), 3);
    EXPECT_EQ(cli::parse_rational("3/2"), Rational(3, 2));
    EXPECT_EQ(cli::parse_rational("1.25"), Rational(5, 4));
    EXPECT_EQ(cli::parse_rational("-0.5"), Rational(-1, 2));
    EXPECT_THROW(cli::parse_rational("1/0"), std::exception);
    EXPECT_THROW(cli::parse_rational("abc"), std::exception);
}
