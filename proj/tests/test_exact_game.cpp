#include "corpus.hpp"
#include "oracles.hpp"

#include <hatdeg/exact_game.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace hatdeg;
using hatdeg::test::make;

namespace {
    auto winnable(const Graph & g, int q, int threads = 1) -> bool
    {
        SolverOptions o;
        o.threads = threads;
        return decide_winnable(g, unit_budgets(g.num_vertices()), q, o).winnable;
    }

    // Number of strategy tables the brute-force oracle would walk.
    auto tables(const Graph & g, const std::vector<int> & budgets, int q) -> double
    {
        double total = 1;
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            int k = std::min(budgets[v], q);
            double choose = 1;
            for (int i = 0; i < k; ++i)
                choose = choose * (q - i) / (i + 1);
            total *= std::pow(choose, std::pow(q, g.degree(v)));
        }
        return total;
    }
}

TEST(Verify, SingleVertex)
{
    Graph g(1);
    StrategyTable s{.q = 2, .guesses = {{{1}}}};
    auto r = verify_strategy(g, unit_budgets(1), 2, s);
    ASSERT_TRUE(std::holds_alternative<MeanColouring>(r));
    EXPECT_EQ(std::get<MeanColouring>(r).colours, (std::vector<Colour>{0}));
    StrategyTable both{.q = 2, .guesses = {{{0, 1}}}};
    std::vector<int> two{2};
    EXPECT_TRUE(std::holds_alternative<Winning>(verify_strategy(g, two, 2, both)));
}

TEST(Verify, TwoPlayers)
{
    Graph g = make(2, {{0, 1}});
    // 0 guesses 1's colour, 1 guesses the other colour
    StrategyTable s{.q = 2, .guesses = {{{0}, {1}}, {{1}, {0}}}};
    EXPECT_TRUE(std::holds_alternative<Winning>(verify_strategy(g, unit_budgets(2), 2, s)));
    StrategyTable same{.q = 2, .guesses = {{{0}, {1}}, {{0}, {1}}}};
    auto r = verify_strategy(g, unit_budgets(2), 2, same);
    ASSERT_TRUE(std::holds_alternative<MeanColouring>(r));
    EXPECT_EQ(std::get<MeanColouring>(r).colours, (std::vector<Colour>{0, 1}));
}

TEST(Verify, CliqueSumHasExactlyOneWinner)
{
    EXPECT_EQ(clique_sum_strategy(1).guesses, (std::vector<std::vector<std::vector<Colour>>>{{{0}}}));
    for (int n = 1; n <= 4; ++n) {
        Graph g = generate(FamilySpec::complete(n));
        auto s = clique_sum_strategy(n);
        EXPECT_TRUE(std::holds_alternative<Winning>(verify_strategy(g, unit_budgets(n), n, s)));
        std::vector<Colour> c(n, 0);
        for (long x = 0; x < static_cast<long>(std::pow(n, n)); ++x) {
            long rest = x;
            for (int i = n - 1; i >= 0; --i, rest /= n)
                c[i] = static_cast<int>(rest % n);
            int right = 0;
            for (Vertex v = 0; v < n; ++v)
                right += s.guesses[v][view_index(g, v, c, n)][0] == c[v];
            EXPECT_EQ(right, 1);
        }
    }
}

TEST(Verify, MalformedTables)
{
    Graph g = make(2, {{0, 1}});
    auto budgets = unit_budgets(2);
    EXPECT_THROW(verify_strategy(g, budgets, 2, {.q = 3, .guesses = {{{0}, {1}}, {{1}, {0}}}}), MalformedStrategy);
    EXPECT_THROW(verify_strategy(g, budgets, 2, {.q = 2, .guesses = {{{0}, {1}}}}), MalformedStrategy);
    EXPECT_THROW(verify_strategy(g, budgets, 2, {.q = 2, .guesses = {{{0}}, {{1}, {0}}}}), MalformedStrategy);
    EXPECT_THROW(verify_strategy(g, budgets, 2, {.q = 2, .guesses = {{{0, 1}, {1}}, {{1}, {0}}}}), MalformedStrategy);
    EXPECT_THROW(verify_strategy(g, budgets, 2, {.q = 2, .guesses = {{{2}, {1}}, {{1}, {0}}}}), MalformedStrategy);
}

TEST(Solver, KnownValues)
{
    EXPECT_TRUE(winnable(generate(FamilySpec::complete(3)), 3));
    EXPECT_FALSE(winnable(generate(FamilySpec::complete(3)), 4));
    EXPECT_TRUE(winnable(generate(FamilySpec::cycle(4)), 3));
    EXPECT_FALSE(winnable(generate(FamilySpec::cycle(4)), 4));
    for (int k = 1; k <= 3; ++k)
        for (int q = 1; q <= 5; ++q) {
            std::vector<int> b{k};
            EXPECT_EQ(decide_winnable(Graph(1), b, q).winnable, q <= k);
        }
}

TEST(Solver, HatGuessingNumber)
{
    auto hg = [](const Graph & g, int qmax) { return hat_guessing_number(g, unit_budgets(g.num_vertices()), qmax); };
    EXPECT_EQ(hg(generate(FamilySpec::path(2)), 4).value, 2);
    EXPECT_EQ(hg(generate(FamilySpec::path(3)), 4).value, 2);
    EXPECT_EQ(hg(generate(FamilySpec::path(4)), 4).value, 2);
    EXPECT_EQ(hg(generate(FamilySpec::complete(3)), 5).value, 3);
    auto capped = hg(generate(FamilySpec::complete(3)), 2);
    EXPECT_EQ(capped.value, 2);
    EXPECT_TRUE(capped.at_least);
    EXPECT_FALSE(hg(generate(FamilySpec::path(2)), 4).at_least);
    EXPECT_THROW(hg(Graph(1), 0), std::invalid_argument);
}

TEST(Solver, TablesVerify)
{
    for (const auto & [name, g] : test::tiny_graphs())
        for (int q = 2; q <= 3; ++q) {
            SCOPED_TRACE(name + " q=" + std::to_string(q));
            auto budgets = unit_budgets(g.num_vertices());
            auto r = decide_winnable(g, budgets, q);
            if (r.winnable) {
                ASSERT_TRUE(r.strategy);
                EXPECT_TRUE(std::holds_alternative<Winning>(verify_strategy(g, budgets, q, *r.strategy)));
            }
            else
                EXPECT_FALSE(r.strategy);
        }
}

TEST(Solver, MatchesStrategyEnumeration)
{
    int checked = 0;
    for (const auto & [name, g] : test::tiny_graphs()) {
        const int n = g.num_vertices();
        for (int q = 1; q <= 4 && std::pow(q, n) <= 64; ++q)
            for (int k = 1; k <= 2; ++k)
                for (Vertex special = 0; special < n; ++special) {
                    std::vector<int> budgets(n, 1);
                    budgets[special] = k;
                    if (tables(g, budgets, q) > 2e6)
                        continue;
                    SCOPED_TRACE(name + " q=" + std::to_string(q) + " k=" + std::to_string(k));
                    EXPECT_EQ(decide_winnable(g, budgets, q).winnable, test::brute_winnable(g, budgets, q));
                    ++checked;
                }
    }
    EXPECT_GT(checked, 50);
}

TEST(Solver, ThreadsGiveTheSameTable)
{
    for (const auto & [name, g] : test::tiny_graphs()) {
        if (g.num_vertices() > 4)
            continue;
        for (int q = 2; q <= 4; ++q) {
            SCOPED_TRACE(name + " q=" + std::to_string(q));
            auto budgets = unit_budgets(g.num_vertices());
            auto one = decide_winnable(g, budgets, q, {.threads = 1});
            auto four = decide_winnable(g, budgets, q, {.threads = 4});
            EXPECT_EQ(one.winnable, four.winnable);
            EXPECT_EQ(one.strategy, four.strategy);
        }
    }
}

// With exactly q guesses in total a winning table must be right exactly once
// on every colouring; only cliques manage that.
TEST(Solver, ExactlyQGuessesNeedsAClique)
{
    int checked = 0;
    for (const auto & [name, g] : test::tiny_graphs()) {
        const int n = g.num_vertices();
        for (int q = 2; q <= 6; ++q) {
            std::vector<int> budgets(n, 1);
            for (int extra = q - n, v = 0; extra > 0; --extra, v = (v + 1) % n)
                ++budgets[v];
            int total = 0;
            for (int b : budgets)
                total += std::min(b, q);
            if (total != q || std::pow(q, n) > 64 || tables(g, budgets, q) > 2e6)
                continue;
            SCOPED_TRACE(name + " q=" + std::to_string(q));
            const bool brute = test::brute_winnable(g, budgets, q);
            EXPECT_EQ(brute, g.num_edges() == static_cast<long>(n) * (n - 1) / 2);
            EXPECT_EQ(decide_winnable(g, budgets, q).winnable, brute);
            ++checked;
        }
    }
    EXPECT_GE(checked, 8);
}

TEST(Solver, Guards)
{
    Graph k5 = generate(FamilySpec::complete(5));
    EXPECT_THROW(decide_winnable(k5, unit_budgets(5), 12), ScaleGuardExceeded);
    EXPECT_THROW(decide_winnable(k5, unit_budgets(5), 5, {.scale_guard = 100}), ScaleGuardExceeded);
    EXPECT_THROW(decide_winnable(k5, unit_budgets(4), 2), std::invalid_argument);
    EXPECT_THROW(decide_winnable(k5, std::vector<int>{1, 1, 0, 1, 1}, 2), std::invalid_argument);
    EXPECT_THROW(decide_winnable(k5, unit_budgets(5), 0), std::invalid_argument);
    // too few guesses in total: decided without searching
    auto r = decide_winnable(generate(FamilySpec::cycle(5)), unit_budgets(5), 6);
    EXPECT_FALSE(r.winnable);
    EXPECT_EQ(r.stats.nodes, 0u);
}

TEST(Solver, TimeLimit)
{
    Graph c5 = generate(FamilySpec::cycle(5));
    EXPECT_THROW(decide_winnable(c5, unit_budgets(5), 3, {.time_limit = 0.2}), SearchTimeout);
}
