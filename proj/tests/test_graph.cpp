#include "corpus.hpp"

#include <hatdeg/elimination.hpp>
#include <hatdeg/graph.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace hatdeg;
using hatdeg::test::make;

TEST(Graph, AdjacencyIsSortedAndSymmetric)
{
    Graph g = make(5, {{3, 4}, {0, 3}, {0, 1}, {1, 3}});
    EXPECT_EQ(g.num_edges(), 4);
    auto n3 = g.neighbors(3);
    EXPECT_TRUE(std::is_sorted(n3.begin(), n3.end()));
    EXPECT_EQ(std::vector<Vertex>(n3.begin(), n3.end()), (std::vector<Vertex>{0, 1, 4}));
    EXPECT_TRUE(g.adjacent(4, 3));
    EXPECT_FALSE(g.adjacent(2, 3));
    EXPECT_EQ(g.max_degree(), 3);
    EXPECT_EQ(g.min_degree(), 0);
    EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {0, 3}, {1, 3}, {3, 4}}));
}

TEST(Graph, RejectsBadEdges)
{
    EXPECT_THROW(make(3, {{0, 0}}), std::invalid_argument);
    EXPECT_THROW(make(3, {{0, 3}}), std::invalid_argument);
    EXPECT_THROW(make(3, {{0, 1}, {1, 0}}), std::invalid_argument);
}

TEST(Graph, InducedRelabels)
{
    Graph c5 = generate(FamilySpec::cycle(5));
    std::vector<Vertex> keep{4, 0, 1};
    Graph h = c5.induced(keep);
    EXPECT_EQ(h.num_vertices(), 3);
    EXPECT_EQ(h.edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
}

TEST(EdgeList, RoundTrip)
{
    for (const auto & [name, g] : test::corpus()) {
        SCOPED_TRACE(name);
        EXPECT_EQ(parse_edge_list(to_edge_list(g)), g);
    }
}

TEST(EdgeList, CommentsAndBlankLines)
{
    Graph g = parse_edge_list("# a triangle\n\n3 3\n0 1\n  1 2  \n# mid\n0 2\n");
    EXPECT_EQ(g, generate(FamilySpec::complete(3)));
}

namespace {
    auto parse_kind(const std::string & text) -> std::pair<ParseError::Kind, int>
    {
        try {
            parse_edge_list(text);
        }
        catch (const ParseError & e) {
            return {e.kind(), e.line()};
        }
        ADD_FAILURE() << "no error for: " << text;
        return {ParseError::Kind::malformed, -1};
    }
}

TEST(EdgeList, ErrorsCarryKindAndLine)
{
    using K = ParseError::Kind;
    EXPECT_EQ(parse_kind(""), std::make_pair(K::header, 0));
    EXPECT_EQ(parse_kind("x y\n").first, K::header);
    EXPECT_EQ(parse_kind("3 4\n").first, K::header);
    EXPECT_EQ(parse_kind("3 1\n0 a\n"), std::make_pair(K::malformed, 2));
    EXPECT_EQ(parse_kind("3 1\n1 1\n"), std::make_pair(K::loop, 2));
    EXPECT_EQ(parse_kind("3 1\n0 3\n"), std::make_pair(K::vertex_range, 2));
    EXPECT_EQ(parse_kind("3 2\n0 1\n1 0\n"), std::make_pair(K::duplicate_edge, 3));
    EXPECT_EQ(parse_kind("3 1\n0 1\n1 2\n"), std::make_pair(K::edge_count, 3));
    EXPECT_EQ(parse_kind("3 2\n0 1\n").first, K::edge_count);
}

TEST(Families, Shapes)
{
    EXPECT_EQ(generate(FamilySpec::path(6)).num_edges(), 5);
    EXPECT_EQ(generate(FamilySpec::cycle(7)).num_edges(), 7);
    EXPECT_EQ(generate(FamilySpec::complete(6)).num_edges(), 15);
    Graph k = generate(FamilySpec::complete_bipartite(2, 4));
    EXPECT_EQ(k.num_vertices(), 6);
    EXPECT_EQ(k.num_edges(), 8);
    EXPECT_TRUE(k.adjacent(0, 2));
    EXPECT_FALSE(k.adjacent(0, 1));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Graph t = generate(FamilySpec::random_tree(15, seed));
        EXPECT_EQ(t.num_edges(), 14);
        EXPECT_EQ(degeneracy(t), t.num_vertices() > 1 ? 1 : 0);
    }
}

TEST(Families, SeedsAreReproducible)
{
    EXPECT_EQ(generate(FamilySpec::gnp(30, 0.3, 7)), generate(FamilySpec::gnp(30, 0.3, 7)));
    EXPECT_NE(generate(FamilySpec::gnp(30, 0.3, 7)), generate(FamilySpec::gnp(30, 0.3, 8)));
    EXPECT_EQ(generate(FamilySpec::maximal_outerplanar(40, 3)), generate(FamilySpec::maximal_outerplanar(40, 3)));
    EXPECT_EQ(generate(FamilySpec::gnp(8, 1.0, 1)), generate(FamilySpec::complete(8)));
    EXPECT_EQ(generate(FamilySpec::gnp(8, 0.0, 1)).num_edges(), 0);
}

TEST(Families, DomainErrors)
{
    EXPECT_THROW(generate(FamilySpec::cycle(2)), std::invalid_argument);
    EXPECT_THROW(generate(FamilySpec::path(0)), std::invalid_argument);
    EXPECT_THROW(generate(FamilySpec::maximal_outerplanar(2, 1)), std::invalid_argument);
    EXPECT_THROW(generate(FamilySpec::gnp(5, 1.5, 1)), std::invalid_argument);
    EXPECT_THROW(generate(FamilySpec::complete_bipartite(0, 3)), std::invalid_argument);
}

TEST(Families, NamesRoundTrip)
{
    for (auto f : {Family::path, Family::cycle, Family::complete, Family::complete_bipartite, Family::random_tree,
             Family::maximal_outerplanar, Family::gnp, Family::one_subdivision_of})
        EXPECT_EQ(parse_family(family_name(f)), f);
    EXPECT_FALSE(parse_family("nonsense"));
}

TEST(Families, MaximalOuterplanarIsRecognised)
{
    for (int n = 3; n <= 60; n += 7)
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            Graph g = generate(FamilySpec::maximal_outerplanar(n, seed));
            EXPECT_EQ(g.num_edges(), 2 * n - 3);
            auto r = is_maximal_outerplanar(g);
            ASSERT_TRUE(std::holds_alternative<OuterplanarYes>(r));
            EXPECT_EQ(std::get<OuterplanarYes>(r).ears.size(), static_cast<std::size_t>(n - 3));
        }
}

TEST(Outerplanar, Rejections)
{
    using R = OuterplanarNo::Reason;
    auto reason = [](const Graph & g) { return std::get<OuterplanarNo>(is_maximal_outerplanar(g)).reason; };
    EXPECT_EQ(reason(generate(FamilySpec::complete(2))), R::too_few_vertices);
    EXPECT_EQ(reason(generate(FamilySpec::cycle(5))), R::wrong_edge_count);
    // K4 has 6 = 2*4 - 2 edges; K4 minus an edge is outerplanar
    EXPECT_EQ(reason(make(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}})), R::peeling_stuck);
    EXPECT_TRUE(std::holds_alternative<OuterplanarYes>(is_maximal_outerplanar(make(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}}))));
}

TEST(Subdivision, Structure)
{
    Graph k4 = generate(FamilySpec::complete(4));
    Graph s = one_subdivision(k4);
    EXPECT_EQ(s.num_vertices(), 10);
    EXPECT_EQ(s.num_edges(), 12);
    auto e = k4.edges();
    for (std::size_t i = 0; i < e.size(); ++i) {
        EXPECT_TRUE(s.adjacent(e[i].first, 4 + static_cast<int>(i)));
        EXPECT_TRUE(s.adjacent(e[i].second, 4 + static_cast<int>(i)));
        EXPECT_EQ(s.degree(4 + static_cast<int>(i)), 2);
    }
    EXPECT_EQ(generate(FamilySpec::one_subdivision_of(FamilySpec::complete(4))), s);
}

TEST(CommonNeighbors, MatchesDirectCount)
{
    for (const auto & [name, g] : test::corpus()) {
        SCOPED_TRACE(name);
        int best = 0;
        std::optional<Edge> first;
        for (int u = 0; u < g.num_vertices(); ++u)
            for (int v = u + 1; v < g.num_vertices(); ++v) {
                int c = 0;
                for (int w = 0; w < g.num_vertices(); ++w)
                    c += g.adjacent(u, w) && g.adjacent(v, w);
                if (c > best || ! first) {
                    first = Edge{u, v};
                    best = c;
                }
            }
        auto r = max_common_neighbors(g);
        EXPECT_EQ(r.s, best);
        if (best > 0)
            EXPECT_EQ(r.pair, first);
    }
}
