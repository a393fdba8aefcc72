#pragma once

#include <hatdeg/certifier.hpp>
#include <hatdeg/graph.hpp>

#include <optional>
#include <string>
#include <vector>

namespace hatdeg {

/// Depth-1 minor model: disjoint branch sets, each dominated by its centre.
struct ContractionModel {
    std::vector<std::vector<Vertex>> sets;
    std::vector<Vertex> centres;
    std::vector<Edge> minor_edges;   // pairs of set indices joined by a host edge
};

/// Depth-1/2 topological minor: branch vertices, the direct host edges among
/// them, and middle vertices each carrying one length-2 path.
struct TopologicalModel {
    std::vector<Vertex> branch;
    std::vector<Edge> direct;
    std::vector<Edge> subdivided;
    std::vector<Vertex> middles;   // parallel to subdivided
};

/// e(H)/v(H) together with the H that attains it.
struct Density {
    Rational value = 0;
    std::vector<Vertex> subgraph;                  // depth 0
    std::optional<TopologicalModel> topological;   // depth 1/2
    std::optional<ContractionModel> contraction;   // depth 1
};

/// Maximum e(H)/v(H) over subgraphs, by parametric maximum-flow search with
/// exact integer capacities. 0 with an empty witness for edgeless graphs.
auto max_subgraph_density(const Graph & g) -> Density;

struct DensityOptions {
    int threads = 1;
    int scale_guard = 0;   // 0: the operation's default
};

/// Top-grad at depth 1/2: best density over branch sets B, counting
/// E(g[B]) plus pairs realised by distinct middle vertices outside B
/// (maximum bipartite matching middles -> non-adjacent B-pairs).
/// Default guard: 14 vertices; larger inputs throw ScaleGuardExceeded.
auto topgrad_half(const Graph & g, const DensityOptions & options = {}) -> Density;

/// Grad at depth 1: best density over families of disjoint sets, each with
/// a centre adjacent to every other member, after contraction.
/// Default guard: 10 vertices; larger inputs throw ScaleGuardExceeded.
auto grad_one(const Graph & g, const DensityOptions & options = {}) -> Density;

/// floor((2 t0 - 2)(s - 1) th + 2 t0), but at least 1
auto strongdeg_bound_from_topgrads(int s, const Rational & t0, const Rational & th) -> BigInt;

/// floor(2 s g1), but at least 1
auto strongdeg_bound_from_grad1(int s, const Rational & g1) -> BigInt;

/// Plug-in evaluations for graphs with no K_t minor / no K_t subdivision.
/// The density constant C is not known explicitly and must be supplied by
/// the caller; the results are only as good as that constant.
/// floor(2 s C t sqrt(log t)) from the grad bound C t sqrt(log t).
auto strongdeg_bound_minor_free(int s, int t, double c) -> long long;
/// Top-grad formula with t0 = th = C t^2.
auto strongdeg_bound_subdivision_free(int s, int t, double c) -> long long;

/// Re-evaluates a witness against g: nullopt if it is valid and attains
/// d.value exactly.
auto validate_density(const Graph & g, const Density & d) -> std::optional<std::string>;

}
