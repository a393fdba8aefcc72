#pragma once

#include <hatdeg/graph.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

namespace hatdeg {

using Colour = int;

/// Per-vertex guessing functions. guesses[v][view] is the sorted guess set of
/// v when its neighbours (sorted by id) show colours c_0, c_1, ..., encoded
/// least-significant first: view = c_0 + c_1 q + c_2 q^2 + ...
struct StrategyTable {
    int q = 0;
    std::vector<std::vector<std::vector<Colour>>> guesses;

    auto operator==(const StrategyTable &) const -> bool = default;
};

class MalformedStrategy : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct Winning {};

/// A colouring under which no vertex guesses its own colour.
struct MeanColouring {
    std::vector<Colour> colours;
};

using VerifyResult = std::variant<Winning, MeanColouring>;

auto unit_budgets(int n) -> std::vector<int>;

/// view index of v under colouring c
auto view_index(const Graph & g, Vertex v, std::span<const Colour> c, int q) -> std::int64_t;

/// Checks all q^n colourings in lexicographic order (vertex 0 most
/// significant) and returns the first mean one, or Winning. Throws
/// MalformedStrategy on a missing view, a colour out of range or a guess set
/// larger than the budget.
auto verify_strategy(const Graph & g, std::span<const int> budgets, int q, const StrategyTable & s) -> VerifyResult;

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t propagations = 0;
    double seconds = 0.0;
};

struct GameOutcome {
    bool winnable = false;
    std::optional<StrategyTable> strategy;
    SearchStats stats;
};

struct SolverOptions {
    int threads = 1;
    /// Upper limit for both q^n and the total number of table cells.
    std::int64_t scale_guard = 100000;
    /// Wall-clock limit in seconds for the exhaustive search; 0 for none.
    double time_limit = 0;
};

class SearchTimeout : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Exhaustive decision of whether a winning strategy exists. Deterministic:
/// the returned table does not depend on options.threads. Throws
/// ScaleGuardExceeded before searching and SearchTimeout when the time
/// limit runs out.
auto decide_winnable(const Graph & g, std::span<const int> budgets, int q, const SolverOptions & options = {}) -> GameOutcome;

struct HatGuessingValue {
    int value = 0;
    bool at_least = false;   // winnable at q_max, so the true value may be larger
};

/// max{q <= q_max : winnable}, scanning q upwards; relies on winnability
/// being downward closed in q.
auto hat_guessing_number(const Graph & g, std::span<const int> budgets, int q_max, const SolverOptions & options = {}) -> HatGuessingValue;

/// K_n with n colours: player i guesses the colour that makes the total
/// colour sum congruent to i mod n.
auto clique_sum_strategy(int n) -> StrategyTable;

}
