#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace hatdeg {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
/// Immutable once built, so it can be shared freely between threads.
class Graph {
  public:
    Graph() = default;
    explicit Graph(int n);

    /// Builds from an edge list. Throws std::invalid_argument on loops,
    /// duplicate edges or out-of-range endpoints.
    Graph(int n, std::span<const Edge> edges);

    [[nodiscard]] auto num_vertices() const -> int { return static_cast<int>(adj_.size()); }
    [[nodiscard]] auto num_edges() const -> long { return m_; }
    [[nodiscard]] auto degree(Vertex v) const -> int { return static_cast<int>(adj_[v].size()); }
    [[nodiscard]] auto neighbors(Vertex v) const -> std::span<const Vertex> { return adj_[v]; }
    [[nodiscard]] auto adjacent(Vertex u, Vertex v) const -> bool;
    [[nodiscard]] auto max_degree() const -> int;
    [[nodiscard]] auto min_degree() const -> int;

    /// Edges (u, v) with u < v in lexicographic order.
    [[nodiscard]] auto edges() const -> std::vector<Edge>;

    /// Induced subgraph on `keep` (any order, no repeats). Vertex i of the
    /// result corresponds to keep[i].
    [[nodiscard]] auto induced(std::span<const Vertex> keep) const -> Graph;

    auto operator==(const Graph &) const -> bool = default;

  private:
    std::vector<std::vector<Vertex>> adj_;
    long m_ = 0;
};

/// An exhaustive computation was asked to run beyond its size limit.
class ScaleGuardExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
  public:
    enum class Kind { malformed, header, vertex_range, duplicate_edge, loop, edge_count };

    ParseError(Kind kind, int line, const std::string & what);

    [[nodiscard]] auto kind() const -> Kind { return kind_; }
    [[nodiscard]] auto line() const -> int { return line_; }

  private:
    Kind kind_;
    int line_;
};

/// Reads the edge-list format: '#' comment lines, a header "n m", then m
/// lines "u v" with 0 <= u < v < n.
auto parse_edge_list(std::string_view text) -> Graph;
auto read_edge_list_file(const std::string & path) -> Graph;
auto to_edge_list(const Graph & g) -> std::string;

// ---------------------------------------------------------------------
// Seeded families

enum class Family { path, cycle, complete, complete_bipartite, random_tree, maximal_outerplanar, gnp, one_subdivision_of };

struct FamilySpec {
    Family family = Family::path;
    int n = 0;
    int m = 0;        // first side for complete-bipartite
    double p = 0.0;   // gnp
    std::uint64_t seed = 0;
    std::shared_ptr<const FamilySpec> base;   // one-subdivision-of

    static auto path(int n) -> FamilySpec;
    static auto cycle(int n) -> FamilySpec;
    static auto complete(int n) -> FamilySpec;
    static auto complete_bipartite(int m, int n) -> FamilySpec;
    static auto random_tree(int n, std::uint64_t seed) -> FamilySpec;
    static auto maximal_outerplanar(int n, std::uint64_t seed) -> FamilySpec;
    static auto gnp(int n, double p, std::uint64_t seed) -> FamilySpec;
    static auto one_subdivision_of(FamilySpec base) -> FamilySpec;
};

auto family_name(Family f) -> std::string_view;
auto parse_family(std::string_view name) -> std::optional<Family>;

/// Throws std::invalid_argument for parameters outside the family's domain.
auto generate(const FamilySpec & spec) -> Graph;

/// H^(1): vertices 0..n-1 of h keep their ids, edge i of h.edges() gets the
/// middle vertex n + i.
auto one_subdivision(const Graph & h) -> Graph;

// ---------------------------------------------------------------------
// Structural detectors

struct CommonNeighbors {
    int s = 0;
    std::optional<Edge> pair;
};

/// Largest |N(u) ∩ N(v)| over pairs u < v; the first pair (lexicographic)
/// attaining it.
auto max_common_neighbors(const Graph & g) -> CommonNeighbors;

struct OuterplanarYes {
    std::vector<Vertex> ears;   // removal order; the final triangle is not listed
};

struct OuterplanarNo {
    enum class Reason { too_few_vertices, wrong_edge_count, peeling_stuck };
    Reason reason;
    std::string detail;
};

using OuterplanarResult = std::variant<OuterplanarYes, OuterplanarNo>;

/// Ear peeling: repeatedly remove a degree-2 vertex with adjacent neighbours
/// (lowest index first) until a triangle remains.
auto is_maximal_outerplanar(const Graph & g) -> OuterplanarResult;

}
