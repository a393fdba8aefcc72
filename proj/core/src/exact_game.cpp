#include <hatdeg/exact_game.hpp>

#include "card_sat.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <mutex>
#include <random>
#include <thread>

using std::int64_t;
using std::vector;

namespace hatdeg {

auto unit_budgets(int n) -> vector<int> { return vector<int>(n, 1); }

namespace {
    auto checked_power(int64_t base, int exp, int64_t limit) -> std::optional<int64_t>
    {
        int64_t r = 1;
        for (int i = 0; i < exp; ++i) {
            if (r > limit / base)
                return std::nullopt;
            r *= base;
        }
        return r;
    }

    auto check_budgets(const Graph & g, std::span<const int> budgets) -> void
    {
        if (static_cast<int>(budgets.size()) != g.num_vertices())
            throw std::invalid_argument("need one budget per vertex");
        for (int b : budgets)
            if (b < 1)
                throw std::invalid_argument("budgets must be >= 1");
    }
}

auto view_index(const Graph & g, Vertex v, std::span<const Colour> c, int q) -> int64_t
{
    int64_t view = 0, weight = 1;
    for (Vertex w : g.neighbors(v)) {
        view += c[w] * weight;
        weight *= q;
    }
    return view;
}

auto verify_strategy(const Graph & g, std::span<const int> budgets, int q, const StrategyTable & s) -> VerifyResult
{
    const int n = g.num_vertices();
    check_budgets(g, budgets);
    if (q < 1 || s.q != q)
        throw MalformedStrategy("strategy is for q = " + std::to_string(s.q) + ", game has q = " + std::to_string(q));
    if (static_cast<int>(s.guesses.size()) != n)
        throw MalformedStrategy("strategy has " + std::to_string(s.guesses.size()) + " vertices, graph has " + std::to_string(n));

    // Per vertex and view, the guess set as a bitmask over colours.
    vector<vector<vector<char>>> hit(n);
    for (Vertex v = 0; v < n; ++v) {
        auto views = checked_power(q, g.degree(v), std::numeric_limits<int64_t>::max() / q);
        if (! views || static_cast<int64_t>(s.guesses[v].size()) != *views)
            throw MalformedStrategy("vertex " + std::to_string(v) + " does not map every view");
        hit[v].assign(*views, vector<char>(q, 0));
        for (int64_t view = 0; view < *views; ++view) {
            const auto & set = s.guesses[v][view];
            if (static_cast<int>(set.size()) > budgets[v])
                throw MalformedStrategy("vertex " + std::to_string(v) + " guesses more than its budget");
            for (Colour c : set) {
                if (c < 0 || c >= q)
                    throw MalformedStrategy("colour " + std::to_string(c) + " out of range");
                if (hit[v][view][c])
                    throw MalformedStrategy("repeated colour in a guess set");
                hit[v][view][c] = 1;
            }
        }
    }

    if (n == 0)
        return MeanColouring{};

    vector<Colour> c(n, 0);
    while (true) {
        bool someone_right = false;
        for (Vertex v = 0; v < n && ! someone_right; ++v)
            someone_right = hit[v][view_index(g, v, c, q)][c[v]];
        if (! someone_right)
            return MeanColouring{c};

        // next colouring in lexicographic order, vertex 0 most significant
        int pos = n - 1;
        while (pos >= 0 && c[pos] == q - 1)
            c[pos--] = 0;
        if (pos < 0)
            return Winning{};
        ++c[pos];
    }
}

auto clique_sum_strategy(int n) -> StrategyTable
{
    if (n < 1)
        throw std::invalid_argument("clique_sum_strategy needs n >= 1");
    StrategyTable s{.q = n, .guesses = vector<vector<vector<Colour>>>(n)};
    const auto views = *checked_power(n, n - 1, std::numeric_limits<int64_t>::max());
    for (int i = 0; i < n; ++i) {
        s.guesses[i].resize(views);
        for (int64_t view = 0; view < views; ++view) {
            int64_t rest = view, seen = 0;
            for (int j = 0; j < n - 1; ++j) {
                seen += rest % n;
                rest /= n;
            }
            s.guesses[i][view] = {static_cast<Colour>(((i - seen) % n + n) % n)};
        }
    }
    return s;
}

// ---------------------------------------------------------------------
// Solver
//
// One positive clause per colouring x ("some vertex guesses right under x"),
// over literals (cell, colour) meaning "the cell's guess set contains the
// colour". A cell is (vertex, view); at most k = min(g(v), q) of its
// literals may be true. Guessing more never hurts, so at-most-k suffices.

namespace {
    struct Instance {
        int n = 0, q = 0;
        vector<int> k;            // per cell
        vector<int> cell_base;    // per vertex
        int num_cells = 0;
        int64_t num_clauses = 0;
        vector<int> clause_lits;  // num_clauses * n
        vector<int> lit_start;    // CSR over literals
        vector<int> lit_clauses;

        auto lits(int64_t x) const -> std::span<const int> { return {clause_lits.data() + x * n, static_cast<std::size_t>(n)}; }
        auto clauses(int l) const -> std::span<const int> { return {lit_clauses.data() + lit_start[l], static_cast<std::size_t>(lit_start[l + 1] - lit_start[l])}; }
    };

    auto build_instance(const Graph & g, std::span<const int> budgets, int q) -> Instance
    {
        Instance in;
        in.n = g.num_vertices();
        in.q = q;
        in.cell_base.resize(in.n);
        for (Vertex v = 0; v < in.n; ++v) {
            in.cell_base[v] = in.num_cells;
            const int views = static_cast<int>(*checked_power(q, g.degree(v), std::numeric_limits<int>::max()));
            in.num_cells += views;
            for (int i = 0; i < views; ++i)
                in.k.push_back(std::min(budgets[v], q));
        }
        in.num_clauses = *checked_power(q, in.n, std::numeric_limits<int>::max());

        in.clause_lits.resize(in.num_clauses * in.n);
        vector<Colour> c(in.n, 0);
        vector<int> degree_count(static_cast<std::size_t>(in.num_cells) * q + 1, 0);
        for (int64_t x = 0; x < in.num_clauses; ++x) {
            int64_t rest = x;
            for (int v = in.n - 1; v >= 0; --v) {
                c[v] = static_cast<Colour>(rest % q);
                rest /= q;
            }
            for (Vertex v = 0; v < in.n; ++v) {
                int lit = (in.cell_base[v] + static_cast<int>(view_index(g, v, c, q))) * q + c[v];
                in.clause_lits[x * in.n + v] = lit;
                ++degree_count[lit + 1];
            }
        }
        in.lit_start.assign(degree_count.begin(), degree_count.end());
        for (std::size_t i = 1; i < in.lit_start.size(); ++i)
            in.lit_start[i] += in.lit_start[i - 1];
        in.lit_clauses.resize(in.lit_start.back());
        vector<int> fill(in.lit_start.begin(), in.lit_start.end() - 1);
        for (int64_t x = 0; x < in.num_clauses; ++x)
            for (int l : in.lits(x))
                in.lit_clauses[fill[l]++] = static_cast<int>(x);
        return in;
    }

    // Guess sets from a model, padded up to k with the lowest unused colours.
    auto table_from(const Instance & in, const std::function<bool(int)> & is_true) -> StrategyTable
    {
        const int q = in.q;
        StrategyTable s{.q = q, .guesses = vector<vector<vector<Colour>>>(in.n)};
        for (Vertex v = 0; v < in.n; ++v) {
            const int last = v + 1 < in.n ? in.cell_base[v + 1] : in.num_cells;
            for (int cell = in.cell_base[v]; cell < last; ++cell) {
                vector<Colour> set;
                for (int c = 0; c < q; ++c)
                    if (is_true(cell * q + c))
                        set.push_back(c);
                for (int c = 0; c < q && static_cast<int>(set.size()) < in.k[cell]; ++c)
                    if (! is_true(cell * q + c))
                        set.push_back(c);
                std::sort(set.begin(), set.end());
                s.guesses[v].push_back(std::move(set));
            }
        }
        return s;
    }

    // Seeded WalkSAT-style local search over full tables: repeatedly take an
    // uncovered colouring and swap one guess of one of its cells so that it
    // becomes covered, usually greedily. Cheap way to find strategies for
    // tight instances where backtracking thrashes; gives no verdict when it
    // fails.
    auto local_search(const Instance & in, std::int64_t max_flips) -> std::optional<vector<vector<Colour>>>
    {
        const int q = in.q;
        std::mt19937_64 rng(0x5eed);
        vector<vector<Colour>> sets(in.num_cells);
        vector<int> cover(in.num_clauses, 0);
        vector<char> in_set(static_cast<std::size_t>(in.num_cells) * q, 0);
        for (int cell = 0; cell < in.num_cells; ++cell) {
            vector<Colour> all(q);
            std::iota(all.begin(), all.end(), 0);
            std::shuffle(all.begin(), all.end(), rng);
            sets[cell].assign(all.begin(), all.begin() + in.k[cell]);
            for (Colour c : sets[cell]) {
                in_set[cell * q + c] = 1;
                for (int x : in.clauses(cell * q + c))
                    ++cover[x];
            }
        }
        vector<int> uncovered, where(in.num_clauses, -1);
        auto add = [&](int x) {
            where[x] = static_cast<int>(uncovered.size());
            uncovered.push_back(x);
        };
        auto drop = [&](int x) {
            int last = uncovered.back();
            uncovered[where[x]] = last;
            where[last] = where[x];
            uncovered.pop_back();
            where[x] = -1;
        };
        for (int x = 0; x < in.num_clauses; ++x)
            if (cover[x] == 0)
                add(x);

        auto gain = [&](int l) {
            int r = 0;
            for (int x : in.clauses(l))
                r += cover[x] == 0 ? 1 : 0;
            return r;
        };
        auto loss = [&](int l) {
            int r = 0;
            for (int x : in.clauses(l))
                r += cover[x] == 1 ? 1 : 0;
            return r;
        };

        struct Move {
            int cell, slot;
            Colour to;
        };
        vector<Move> moves, best;
        for (std::int64_t flip = 0; flip < max_flips && ! uncovered.empty(); ++flip) {
            const int x = uncovered[rng() % uncovered.size()];
            moves.clear();
            best.clear();
            int best_delta = std::numeric_limits<int>::min();
            for (int l : in.lits(x)) {
                const int cell = l / q;
                const int g = gain(l);
                for (int slot = 0; slot < static_cast<int>(sets[cell].size()); ++slot) {
                    Move m{cell, slot, static_cast<Colour>(l % q)};
                    moves.push_back(m);
                    const int delta = g - loss(cell * q + sets[cell][slot]);
                    if (delta > best_delta) {
                        best_delta = delta;
                        best.clear();
                    }
                    if (delta == best_delta)
                        best.push_back(m);
                }
            }
            const bool noisy = (rng() % 100) < 20;
            const Move m = noisy ? moves[rng() % moves.size()] : best[rng() % best.size()];
            const int old_lit = m.cell * q + sets[m.cell][m.slot], new_lit = m.cell * q + m.to;
            in_set[old_lit] = 0;
            for (int y : in.clauses(old_lit))
                if (--cover[y] == 0)
                    add(y);
            in_set[new_lit] = 1;
            for (int y : in.clauses(new_lit))
                if (cover[y]++ == 0)
                    drop(y);
            sets[m.cell][m.slot] = m.to;
        }
        if (! uncovered.empty())
            return std::nullopt;
        for (auto & set : sets)
            std::sort(set.begin(), set.end());
        return sets;
    }

    // Renaming the colours of one player's hat (and rewriting the views of
    // its neighbours accordingly) maps winning strategies to winning
    // strategies. Go through the vertices in index order. Vertex v may use
    // any renaming, or only those fixing colour 0 if it has an earlier
    // neighbour (whose normalised cells all see v in colour 0). The cells of
    // v in which every later neighbour shows 0 are left alone by all later
    // renamings, so v's renaming can normalise them:
    //  - one guess: the movable colours first appear in increasing order
    //    along these cells;
    //  - more guesses: the all-zero-view set becomes {0..k-1}, or lies in
    //    {0..k} and contains {1..k-1} when 0 is fixed.
    void break_symmetry(const Graph & g, const Instance & in, detail::CardSat & sat)
    {
        const int q = in.q;
        auto var = [q](int cell, int c) { return cell * q + c; };
        vector<Colour> colouring(in.n, 0);
        for (Vertex v = 0; v < in.n; ++v) {
            const int base = in.cell_base[v], k = in.k[base];
            if (k == q)
                continue;
            vector<Vertex> earlier;
            for (Vertex w : g.neighbors(v))
                if (w < v)
                    earlier.push_back(w);

            if (k > 1) {
                const int lo = earlier.empty() ? 0 : 1;
                for (int c = lo; c < k; ++c)
                    sat.add_clause({detail::pos(var(base, c))});
                for (int c = k + (earlier.empty() ? 0 : 1); c < q; ++c)
                    sat.add_clause({detail::neg(var(base, c))});
                continue;
            }

            vector<int> cells;
            std::fill(colouring.begin(), colouring.end(), 0);
            while (true) {
                cells.push_back(base + static_cast<int>(view_index(g, v, colouring, q)));
                std::size_t i = 0;
                while (i < earlier.size() && ++colouring[earlier[i]] == q)
                    colouring[earlier[i++]] = 0;
                if (i == earlier.size())
                    break;
            }
            const int first = earlier.empty() ? 0 : 1;
            // seen[a]: a variable that can only be true if colour a was
            // guessed in an earlier cell
            vector<int> seen(q, -1);
            for (std::size_t i = 0; i < cells.size(); ++i) {
                for (int b = first + 1; b < q; ++b) {
                    if (seen[b - 1] < 0)
                        sat.add_clause({detail::neg(var(cells[i], b))});
                    else
                        sat.add_clause({detail::neg(var(cells[i], b)), detail::pos(seen[b - 1])});
                }
                if (i + 1 == cells.size())
                    break;
                for (int a = first; a + 1 < q; ++a) {
                    const int y = sat.new_var();
                    vector<int> why{detail::neg(y), detail::pos(var(cells[i], a))};
                    if (seen[a] >= 0)
                        why.push_back(detail::pos(seen[a]));
                    sat.add_clause(why);
                    seen[a] = y;
                }
            }
        }
    }
}

auto decide_winnable(const Graph & g, std::span<const int> budgets, int q, const SolverOptions & options) -> GameOutcome
{
    const auto started = std::chrono::steady_clock::now();
    check_budgets(g, budgets);
    if (q < 1)
        throw std::invalid_argument("q must be >= 1");
    const int n = g.num_vertices();

    GameOutcome outcome;
    if (n == 0)
        return outcome;

    const auto colourings = checked_power(q, n, options.scale_guard);
    int64_t cells = 0;
    for (Vertex v = 0; v < n && cells <= options.scale_guard; ++v) {
        auto views = checked_power(q, g.degree(v), options.scale_guard);
        cells = views ? cells + *views : options.scale_guard + 1;
    }
    if (! colourings || cells > options.scale_guard)
        throw ScaleGuardExceeded("q^n or the number of table cells exceeds " + std::to_string(options.scale_guard));

    // Under a uniformly random colouring vertex v is right with probability
    // min(g(v), q)/q; if these sum to less than 1 some colouring is mean.
    // At exactly 1 a winning table is right exactly once on every colouring,
    // but two players who cannot see each other are both right on some
    // colouring (fix everyone else; their guess sets are then fixed too).
    std::int64_t expected_hits = 0;
    for (int b : budgets)
        expected_hits += std::min(b, q);
    const bool complete = g.num_edges() == static_cast<long>(n) * (n - 1) / 2;
    if (expected_hits < q || (expected_hits == q && ! complete)) {
        outcome.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        return outcome;
    }

    const auto in = build_instance(g, budgets, q);

    const std::int64_t flips = std::min<std::int64_t>(2'000'000, 200 * in.num_clauses);
    if (auto sets = local_search(in, flips)) {
        StrategyTable table{.q = q, .guesses = vector<vector<vector<Colour>>>(n)};
        for (Vertex v = 0; v < n; ++v) {
            const int last = v + 1 < n ? in.cell_base[v + 1] : in.num_cells;
            for (int cell = in.cell_base[v]; cell < last; ++cell)
                table.guesses[v].push_back((*sets)[cell]);
        }
        outcome.winnable = true;
        outcome.strategy = std::move(table);
        outcome.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        return outcome;
    }

    // Clause learning search. With several threads, workers race on
    // differently perturbed copies; an unwinnable verdict from any of them
    // settles it, but the table always comes from worker 0 so it does not
    // depend on the thread count.
    const int workers = std::max(1, options.threads);
    std::atomic<bool> settled{false}, timed_out{false};
    const auto deadline = started + std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(options.time_limit));
    std::mutex lock;
    std::optional<StrategyTable> found;
    bool unwinnable = false;
    SearchStats total;

    auto worker = [&](int w) {
        detail::CardSat sat(in.num_cells * q);
        vector<int> vars(q);
        for (int cell = 0; cell < in.num_cells; ++cell) {
            std::iota(vars.begin(), vars.end(), cell * q);
            sat.add_at_most(vars, in.k[cell]);
        }
        break_symmetry(g, in, sat);
        vector<int> clause(n);
        for (int64_t x = 0; x < in.num_clauses; ++x) {
            auto lits = in.lits(x);
            std::transform(lits.begin(), lits.end(), clause.begin(), detail::pos);
            sat.add_clause(clause);
        }
        sat.shuffle_activity(static_cast<std::uint64_t>(w));
        const std::function<bool()> stop = [&] {
            if (options.time_limit > 0 && std::chrono::steady_clock::now() > deadline)
                timed_out = true;
            return settled.load() || timed_out.load();
        };
        auto verdict = sat.solve(stop);
        std::lock_guard guard(lock);
        total.nodes += sat.stats().decisions;
        total.propagations += sat.stats().propagations;
        if (! verdict)
            return;
        if (! *verdict) {
            unwinnable = true;
            settled = true;
        }
        else if (w == 0) {
            found = table_from(in, [&](int l) { return sat.value(l); });
            settled = true;
        }
    };

    if (workers == 1)
        worker(0);
    else {
        vector<std::jthread> pool;
        for (int t = 0; t < workers; ++t)
            pool.emplace_back(worker, t);
    }

    if (! found && ! unwinnable)
        throw SearchTimeout("no verdict within " + std::to_string(options.time_limit) + " s");
    outcome.winnable = found.has_value();
    outcome.strategy = std::move(found);
    outcome.stats = total;
    outcome.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return outcome;
}

auto hat_guessing_number(const Graph & g, std::span<const int> budgets, int q_max, const SolverOptions & options) -> HatGuessingValue
{
    if (q_max < 1)
        throw std::invalid_argument("q_max must be >= 1");
    HatGuessingValue result;
    for (int q = 1; q <= q_max; ++q) {
        if (! decide_winnable(g, budgets, q, options).winnable)
            return result;
        result.value = q;
    }
    result.at_least = true;
    return result;
}

}
