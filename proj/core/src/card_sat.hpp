#pragma once

// Clause-learning SAT search over clauses plus at-most-k groups. Used by the
// exact game solver; not part of the installed interface.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace hatdeg::detail {

/// Literal 2v is variable v, 2v + 1 its negation.
inline auto pos(int v) -> int { return 2 * v; }
inline auto neg(int v) -> int { return 2 * v + 1; }

class CardSat {
  public:
    struct Stats {
        std::uint64_t decisions = 0, propagations = 0, conflicts = 0;
    };

    explicit CardSat(int num_vars);

    /// Adds a fresh variable and returns it.
    auto new_var() -> int;

    /// At most k of vars may be true. Groups must be disjoint.
    void add_at_most(std::span<const int> vars, int k);
    /// Returns false if the formula became trivially unsatisfiable.
    auto add_clause(std::vector<int> lits) -> bool;

    /// Perturbs the initial branching order; seed 0 keeps the plain order.
    void shuffle_activity(std::uint64_t seed);

    /// true: model(), false: unsatisfiable, nullopt: stop() returned true.
    auto solve(const std::function<bool()> & stop) -> std::optional<bool>;

    [[nodiscard]] auto value(int v) const -> bool { return assign_[v] == 1; }
    [[nodiscard]] auto stats() const -> const Stats & { return stats_; }

  private:
    static constexpr std::int8_t undef = 2;
    static constexpr int no_reason = -1;
    // reasons below -1 name a group: -2 - g

    struct Clause {
        std::vector<int> lits;
        bool learnt = false;
        bool deleted = false;
        double activity = 0;
    };
    struct Watcher {
        int clause;
        int blocker;
    };
    struct Group {
        int first, size, k, count = 0;
    };

    auto lit_value(int l) const -> std::int8_t
    {
        std::int8_t a = assign_[l >> 1];
        return a == undef ? undef : static_cast<std::int8_t>(a ^ (l & 1));
    }
    auto level(int v) const -> int { return level_[v]; }
    auto decision_level() const -> int { return static_cast<int>(trail_lim_.size()); }

    void enqueue(int l, int reason);
    auto propagate() -> bool;   // false on conflict, literals in conflict_
    void reason_lits(int v, std::vector<int> & out);
    void analyze(std::vector<int> & learnt, int & back_level);
    void cancel_until(int lvl);
    auto pick_branch() -> int;
    void bump_var(int v);
    void bump_clause(Clause & c);
    void reduce_learnts();
    void attach(int ci);
    auto new_clause(std::vector<int> lits, bool learnt) -> int;

    // heap of variables by activity
    void heap_insert(int v);
    void heap_up(int i);
    void heap_down(int i);
    auto heap_pop() -> int;

    int num_vars_;
    std::vector<std::int8_t> assign_, phase_;
    std::vector<int> level_, reason_, trail_pos_;
    std::vector<int> trail_, trail_lim_;
    std::size_t qhead_ = 0;
    std::vector<Clause> clauses_;
    std::vector<std::vector<Watcher>> watches_;
    std::vector<int> learnts_;
    std::vector<int> free_clauses_;
    std::vector<Group> groups_;
    std::vector<int> group_vars_, group_of_;

    std::vector<double> activity_;
    double var_inc_ = 1, clause_inc_ = 1;
    std::vector<int> heap_, heap_index_;

    std::vector<char> seen_;
    std::vector<int> conflict_, scratch_, reason_buf_;
    int conflict_ci_ = -1;
    bool empty_clause_ = false;
    double max_learnts_ = 0;
    Stats stats_;
};

}
