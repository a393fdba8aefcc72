#include "card_sat.hpp"

#include <algorithm>
#include <random>

namespace hatdeg::detail {

namespace {

auto luby(double y, int x) -> double
{
    int size = 1, seq = 0;
    while (size < x + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    double r = 1;
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        --seq;
        x %= size;
    }
    for (int i = 0; i < seq; ++i) r *= y;
    return r;
}

}

CardSat::CardSat(int num_vars)
    : num_vars_(num_vars),
      assign_(num_vars, undef),
      phase_(num_vars, 0),
      level_(num_vars, 0),
      reason_(num_vars, no_reason),
      trail_pos_(num_vars, 0),
      watches_(2 * static_cast<std::size_t>(num_vars)),
      group_of_(num_vars, -1),
      activity_(num_vars, 0.0),
      heap_index_(num_vars, -1),
      seen_(num_vars, 0)
{
    heap_.reserve(num_vars);
    for (int v = 0; v < num_vars; ++v) heap_insert(v);
}

auto CardSat::new_var() -> int
{
    int v = num_vars_++;
    assign_.push_back(undef);
    phase_.push_back(0);
    level_.push_back(0);
    reason_.push_back(no_reason);
    trail_pos_.push_back(0);
    watches_.resize(2 * static_cast<std::size_t>(num_vars_));
    group_of_.push_back(-1);
    activity_.push_back(0.0);
    heap_index_.push_back(-1);
    seen_.push_back(0);
    heap_insert(v);
    return v;
}

void CardSat::add_at_most(std::span<const int> vars, int k)
{
    if (k >= static_cast<int>(vars.size())) return;
    Group g{static_cast<int>(group_vars_.size()), static_cast<int>(vars.size()), k};
    int id = static_cast<int>(groups_.size());
    for (int v : vars) {
        group_vars_.push_back(v);
        group_of_[v] = id;
        if (assign_[v] == 1) ++g.count;
    }
    groups_.push_back(g);
}

auto CardSat::add_clause(std::vector<int> lits) -> bool
{
    if (empty_clause_) return false;
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    std::vector<int> kept;
    for (std::size_t i = 0; i < lits.size(); ++i) {
        if (i + 1 < lits.size() && (lits[i] ^ 1) == lits[i + 1]) return true;
        auto val = lit_value(lits[i]);
        if (val == 1) return true;
        if (val == undef) kept.push_back(lits[i]);
    }
    if (kept.empty()) {
        empty_clause_ = true;
        return false;
    }
    if (kept.size() == 1) {
        enqueue(kept[0], no_reason);
        return true;
    }
    attach(new_clause(std::move(kept), false));
    return true;
}

void CardSat::shuffle_activity(std::uint64_t seed)
{
    if (seed == 0) return;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(0.0, 1e-3);
    for (auto & a : activity_) a = jitter(rng);
    for (int i = static_cast<int>(heap_.size()) / 2; i >= 0; --i) heap_down(i);
    for (auto & p : phase_) p = static_cast<std::int8_t>(rng() % 8 == 0);
}

auto CardSat::new_clause(std::vector<int> lits, bool learnt) -> int
{
    Clause c{std::move(lits), learnt, false, 0};
    if (!free_clauses_.empty()) {
        int ci = free_clauses_.back();
        free_clauses_.pop_back();
        clauses_[ci] = std::move(c);
        return ci;
    }
    clauses_.push_back(std::move(c));
    return static_cast<int>(clauses_.size()) - 1;
}

void CardSat::attach(int ci)
{
    const auto & c = clauses_[ci].lits;
    watches_[c[0] ^ 1].push_back({ci, c[1]});
    watches_[c[1] ^ 1].push_back({ci, c[0]});
}

void CardSat::enqueue(int l, int reason)
{
    int v = l >> 1;
    assign_[v] = static_cast<std::int8_t>((l & 1) ^ 1);
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_pos_[v] = static_cast<int>(trail_.size());
    trail_.push_back(l);
    if ((l & 1) == 0 && group_of_[v] >= 0) ++groups_[group_of_[v]].count;
}

auto CardSat::propagate() -> bool
{
    while (qhead_ < trail_.size()) {
        int p = trail_[qhead_++];
        ++stats_.propagations;

        int v = p >> 1;
        if ((p & 1) == 0 && group_of_[v] >= 0) {
            int gi = group_of_[v];
            const auto & g = groups_[gi];
            auto vars = std::span(group_vars_).subspan(g.first, g.size);
            if (g.count > g.k) {
                conflict_.clear();
                conflict_ci_ = -1;
                for (int u : vars)
                    if (assign_[u] == 1) conflict_.push_back(neg(u));
                return false;
            }
            if (g.count == g.k)
                for (int u : vars)
                    if (assign_[u] == undef) enqueue(neg(u), -2 - gi);
        }

        auto & ws = watches_[p];
        int false_lit = p ^ 1;
        std::size_t i = 0, j = 0;
        for (; i < ws.size(); ++i) {
            Watcher w = ws[i];
            if (lit_value(w.blocker) == 1) {
                ws[j++] = w;
                continue;
            }
            auto & c = clauses_[w.clause].lits;
            if (c[0] == false_lit) std::swap(c[0], c[1]);
            if (lit_value(c[0]) == 1) {
                ws[j++] = {w.clause, c[0]};
                continue;
            }
            bool moved = false;
            for (std::size_t k = 2; k < c.size(); ++k) {
                if (lit_value(c[k]) != 0) {
                    std::swap(c[1], c[k]);
                    watches_[c[1] ^ 1].push_back({w.clause, c[0]});
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            ws[j++] = {w.clause, c[0]};
            if (lit_value(c[0]) == 0) {
                for (++i; i < ws.size(); ++i) ws[j++] = ws[i];
                ws.resize(j);
                conflict_ = c;
                conflict_ci_ = w.clause;
                return false;
            }
            enqueue(c[0], w.clause);
        }
        ws.resize(j);
    }
    return true;
}

// Literals of the reason for v, all false, excluding v's own literal.
void CardSat::reason_lits(int v, std::vector<int> & out)
{
    out.clear();
    int r = reason_[v];
    if (r >= 0) {
        for (int l : clauses_[r].lits)
            if ((l >> 1) != v) out.push_back(l);
        return;
    }
    const auto & g = groups_[-2 - r];
    for (int u : std::span(group_vars_).subspan(g.first, g.size))
        if (assign_[u] == 1 && trail_pos_[u] < trail_pos_[v]) out.push_back(neg(u));
}

void CardSat::analyze(std::vector<int> & learnt, int & back_level)
{
    learnt.assign(1, -1);
    int path = 0;
    int p = -1;
    auto idx = static_cast<int>(trail_.size()) - 1;
    auto * lits = &conflict_;
    if (conflict_ci_ >= 0 && clauses_[conflict_ci_].learnt) bump_clause(clauses_[conflict_ci_]);

    for (;;) {
        for (int q : *lits) {
            int v = q >> 1;
            if (seen_[v] || level_[v] == 0) continue;
            seen_[v] = 1;
            bump_var(v);
            if (level_[v] >= decision_level())
                ++path;
            else
                learnt.push_back(q);
        }
        while (!seen_[trail_[idx] >> 1]) --idx;
        p = trail_[idx--];
        seen_[p >> 1] = 0;
        if (--path == 0) break;
        int r = reason_[p >> 1];
        if (r >= 0 && clauses_[r].learnt) bump_clause(clauses_[r]);
        reason_lits(p >> 1, reason_buf_);
        lits = &reason_buf_;
    }
    learnt[0] = p ^ 1;

    // drop literals implied by the rest of the clause
    scratch_.assign(learnt.begin(), learnt.end());
    std::size_t j = 1;
    for (std::size_t i = 1; i < learnt.size(); ++i) {
        int v = learnt[i] >> 1;
        bool keep = true;
        if (reason_[v] != no_reason) {
            reason_lits(v, reason_buf_);
            keep = std::any_of(reason_buf_.begin(), reason_buf_.end(), [&](int l) {
                return !seen_[l >> 1] && level_[l >> 1] > 0;
            });
        }
        if (keep) learnt[j++] = learnt[i];
    }
    learnt.resize(j);
    for (std::size_t i = 1; i < scratch_.size(); ++i) seen_[scratch_[i] >> 1] = 0;

    back_level = 0;
    if (learnt.size() > 1) {
        std::size_t best = 1;
        for (std::size_t i = 2; i < learnt.size(); ++i)
            if (level_[learnt[i] >> 1] > level_[learnt[best] >> 1]) best = i;
        std::swap(learnt[1], learnt[best]);
        back_level = level_[learnt[1] >> 1];
    }
}

void CardSat::cancel_until(int lvl)
{
    if (decision_level() <= lvl) return;
    for (auto i = static_cast<int>(trail_.size()) - 1; i >= trail_lim_[lvl]; --i) {
        int l = trail_[i];
        int v = l >> 1;
        if ((l & 1) == 0 && group_of_[v] >= 0) --groups_[group_of_[v]].count;
        phase_[v] = static_cast<std::int8_t>((l & 1) ^ 1);
        assign_[v] = undef;
        reason_[v] = no_reason;
        if (heap_index_[v] < 0) heap_insert(v);
    }
    trail_.resize(trail_lim_[lvl]);
    trail_lim_.resize(lvl);
    qhead_ = trail_.size();
}

auto CardSat::pick_branch() -> int
{
    while (!heap_.empty()) {
        int v = heap_pop();
        if (assign_[v] == undef) return phase_[v] ? pos(v) : neg(v);
    }
    return -1;
}

void CardSat::bump_var(int v)
{
    if ((activity_[v] += var_inc_) > 1e100) {
        for (auto & a : activity_) a *= 1e-100;
        var_inc_ *= 1e-100;
    }
    if (heap_index_[v] >= 0) heap_up(heap_index_[v]);
}

void CardSat::bump_clause(Clause & c)
{
    if ((c.activity += clause_inc_) > 1e20) {
        for (int ci : learnts_) clauses_[ci].activity *= 1e-20;
        clause_inc_ *= 1e-20;
    }
}

void CardSat::reduce_learnts()
{
    auto locked = [&](int ci) {
        int l = clauses_[ci].lits[0];
        return reason_[l >> 1] == ci && lit_value(l) == 1;
    };
    std::sort(learnts_.begin(), learnts_.end(),
              [&](int a, int b) { return clauses_[a].activity < clauses_[b].activity; });
    std::size_t half = learnts_.size() / 2;
    std::vector<int> kept;
    bool any = false;
    for (std::size_t i = 0; i < learnts_.size(); ++i) {
        int ci = learnts_[i];
        auto & c = clauses_[ci];
        if (i < half && c.lits.size() > 2 && !locked(ci)) {
            c.deleted = true;
            any = true;
        } else {
            kept.push_back(ci);
        }
    }
    learnts_ = std::move(kept);
    if (!any) return;
    for (auto & ws : watches_)
        std::erase_if(ws, [&](const Watcher & w) { return clauses_[w.clause].deleted; });
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
        auto & c = clauses_[ci];
        if (c.deleted && !c.lits.empty()) {
            c.lits = {};
            free_clauses_.push_back(static_cast<int>(ci));
        }
    }
}

auto CardSat::solve(const std::function<bool()> & stop) -> std::optional<bool>
{
    if (empty_clause_) return false;
    if (!propagate()) return false;
    if (stop && stop()) return std::nullopt;

    max_learnts_ = std::max(2000.0, static_cast<double>(clauses_.size()) / 3);
    std::vector<int> learnt;
    for (int restart = 0;; ++restart) {
        auto budget = static_cast<std::uint64_t>(luby(2, restart) * 100);
        std::uint64_t local = 0;
        for (;;) {
            if (!propagate()) {
                ++stats_.conflicts;
                ++local;
                if (decision_level() == 0) return false;
                int back = 0;
                analyze(learnt, back);
                cancel_until(back);
                if (learnt.size() == 1) {
                    enqueue(learnt[0], no_reason);
                } else {
                    int ci = new_clause(learnt, true);
                    attach(ci);
                    learnts_.push_back(ci);
                    bump_clause(clauses_[ci]);
                    enqueue(learnt[0], ci);
                }
                var_inc_ /= 0.95;
                clause_inc_ /= 0.999;
                if (stats_.conflicts % 256 == 0 && stop && stop()) return std::nullopt;
                continue;
            }
            if (local >= budget) {
                cancel_until(0);
                break;
            }
            if (static_cast<double>(learnts_.size()) - static_cast<double>(trail_.size()) >= max_learnts_) {
                reduce_learnts();
                max_learnts_ *= 1.1;
            }
            int l = pick_branch();
            if (l < 0) return true;
            ++stats_.decisions;
            trail_lim_.push_back(static_cast<int>(trail_.size()));
            enqueue(l, no_reason);
        }
    }
}

void CardSat::heap_insert(int v)
{
    heap_index_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    heap_up(heap_index_[v]);
}

void CardSat::heap_up(int i)
{
    int v = heap_[i];
    while (i > 0) {
        int parent = (i - 1) / 2;
        if (activity_[heap_[parent]] >= activity_[v]) break;
        heap_[i] = heap_[parent];
        heap_index_[heap_[i]] = i;
        i = parent;
    }
    heap_[i] = v;
    heap_index_[v] = i;
}

void CardSat::heap_down(int i)
{
    auto n = static_cast<int>(heap_.size());
    if (i >= n) return;
    int v = heap_[i];
    for (;;) {
        int child = 2 * i + 1;
        if (child >= n) break;
        if (child + 1 < n && activity_[heap_[child + 1]] > activity_[heap_[child]]) ++child;
        if (activity_[heap_[child]] <= activity_[v]) break;
        heap_[i] = heap_[child];
        heap_index_[heap_[i]] = i;
        i = child;
    }
    heap_[i] = v;
    heap_index_[v] = i;
}

auto CardSat::heap_pop() -> int
{
    int top = heap_.front();
    heap_index_[top] = -1;
    int last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
        heap_[0] = last;
        heap_index_[last] = 0;
        heap_down(0);
    }
    return top;
}

}
