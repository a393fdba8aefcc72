#pragma once

#include <hatdeg/graph.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hatdeg {

struct EliminationStep {
    Vertex v = 0;
    std::vector<Vertex> neighbors;       // in the remaining graph, sorted
    std::vector<int> neighbor_degrees;   // parallel to neighbors, at removal time
};

/// A witness that a graph is strongly d-degenerate: every step removes a
/// vertex that is d-removable in the graph that remains at that point.
struct EliminationOrder {
    int d = 1;
    std::vector<EliminationStep> steps;

    [[nodiscard]] auto vertices() const -> std::vector<Vertex>;
};

/// Remaining vertex set once no d-removable vertex is left.
struct StuckSubgraph {
    int d = 1;
    std::vector<Vertex> vertices;   // sorted host ids
};

using EliminationResult = std::variant<EliminationOrder, StuckSubgraph>;

/// deg(v) <= d and at most one neighbour of v has degree > d.
/// Throws std::out_of_range for a bad vertex and std::invalid_argument for d < 1.
auto is_d_removable(const Graph & g, Vertex v, int d) -> bool;

/// Greedy elimination, always taking the lowest-index removable vertex.
auto strong_elimination(const Graph & g, int d) -> EliminationResult;

struct StrongDegeneracy {
    int d = 1;
    EliminationOrder order;
};

/// Least d >= 1 for which strong_elimination succeeds.
auto strong_degeneracy(const Graph & g) -> StrongDegeneracy;

/// Ordinary degeneracy by repeated minimum-degree removal.
auto degeneracy(const Graph & g) -> int;

/// Re-checks an order against g: a permutation of V(g), every step
/// d-removable, recorded neighbourhoods and degrees exact.
auto validate_order(const Graph & g, const EliminationOrder & order) -> std::optional<std::string>;

// ---------------------------------------------------------------------
// Obstructions

/// K_{2,s}: two centres and s common neighbours.
struct BipartiteWitness {
    Vertex left = 0, right = 0;
    std::vector<Vertex> common;
};

/// A graph F (on host vertices `branch`) of minimum degree `min_degree`,
/// with the 1-subdivision of F embedded in the host: F-edge i joins
/// edges[i] through the host vertex middles[i]. A middle of -1 means the
/// edge is realised directly by a host edge (only when no low-degree
/// vertices were available to subdivide).
struct SubdivisionWitness {
    int min_degree = 0;
    std::vector<Vertex> branch;
    std::vector<Edge> edges;
    std::vector<Vertex> middles;
};

using ObstructionWitness = std::variant<BipartiteWitness, SubdivisionWitness>;

/// g must contain no d-removable vertex (and be non-empty); throws
/// std::invalid_argument otherwise. Vertex ids in the witness are g's.
auto extract_obstruction(const Graph & g, int d) -> ObstructionWitness;

/// Runs strong_elimination on g and, when it gets stuck, extracts a witness
/// from the stuck subgraph, reported in g's vertex ids.
auto find_obstruction(const Graph & g, int d) -> std::optional<ObstructionWitness>;

/// std::nullopt when the witness is a valid subgraph of host.
auto validate_witness(const Graph & host, const ObstructionWitness & w) -> std::optional<std::string>;

}
