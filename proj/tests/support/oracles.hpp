#pragma once

// Brute-force reference implementations. They share nothing with the
// library beyond the Graph type and are only meant for tiny inputs.

#include <hatdeg/certifier.hpp>
#include <hatdeg/graph.hpp>

#include <cstdint>
#include <vector>

namespace hatdeg::test {

/// Every non-empty induced subgraph has a d-removable vertex (n <= 16).
auto brute_strongly_degenerate(const Graph & g, int d) -> bool;
auto brute_strong_degeneracy(const Graph & g) -> int;
auto brute_degeneracy(const Graph & g) -> int;

/// Largest s with K_{2,s} as a subgraph, by subset search (n <= 12).
auto brute_max_k2s(const Graph & g) -> int;

/// max e(S)/|S| over vertex subsets (n <= 16).
auto brute_max_density(const Graph & g) -> Rational;

/// Depth-1/2 top-grad by trying every use of every outside vertex (n <= 9).
auto brute_topgrad_half(const Graph & g) -> Rational;

/// Depth-1 grad by trying every labelling of the vertices with a set index
/// or "unused" (n <= 7).
auto brute_grad_one(const Graph & g) -> Rational;

/// Whether some strategy table wins, by trying them all (q^n <= 64).
auto brute_winnable(const Graph & g, const std::vector<int> & budgets, int q) -> bool;

}
