#include <hatdeg/density.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <queue>
#include <set>
#include <thread>

using std::int64_t;
using std::vector;

namespace hatdeg {

namespace {
    // Dinic's algorithm on int64 capacities.
    class MaxFlow {
      public:
        explicit MaxFlow(int nodes) : head_(nodes, -1), level_(nodes), it_(nodes) {}

        auto add_edge(int u, int v, int64_t cap, int64_t reverse_cap = 0) -> void
        {
            arcs_.push_back({v, head_[u], cap});
            head_[u] = static_cast<int>(arcs_.size()) - 1;
            arcs_.push_back({u, head_[v], reverse_cap});
            head_[v] = static_cast<int>(arcs_.size()) - 1;
        }

        auto run(int s, int t) -> int64_t
        {
            int64_t flow = 0;
            while (bfs(s, t)) {
                std::copy(head_.begin(), head_.end(), it_.begin());
                while (int64_t f = dfs(s, t, std::numeric_limits<int64_t>::max()))
                    flow += f;
            }
            return flow;
        }

        /// Nodes reachable from s in the residual graph after run().
        auto source_side(int s) -> vector<char>
        {
            vector<char> seen(head_.size(), 0);
            vector<int> stack{s};
            seen[s] = 1;
            while (! stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (int a = head_[u]; a >= 0; a = arcs_[a].next)
                    if (arcs_[a].cap > 0 && ! seen[arcs_[a].to]) {
                        seen[arcs_[a].to] = 1;
                        stack.push_back(arcs_[a].to);
                    }
            }
            return seen;
        }

      private:
        struct Arc {
            int to, next;
            int64_t cap;
        };

        auto bfs(int s, int t) -> bool
        {
            std::fill(level_.begin(), level_.end(), -1);
            std::queue<int> queue;
            level_[s] = 0;
            queue.push(s);
            while (! queue.empty()) {
                int u = queue.front();
                queue.pop();
                for (int a = head_[u]; a >= 0; a = arcs_[a].next)
                    if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
                        level_[arcs_[a].to] = level_[u] + 1;
                        queue.push(arcs_[a].to);
                    }
            }
            return level_[t] >= 0;
        }

        auto dfs(int u, int t, int64_t limit) -> int64_t
        {
            if (u == t)
                return limit;
            for (int & a = it_[u]; a >= 0; a = arcs_[a].next) {
                int v = arcs_[a].to;
                if (arcs_[a].cap > 0 && level_[v] == level_[u] + 1) {
                    if (int64_t f = dfs(v, t, std::min(limit, arcs_[a].cap)); f > 0) {
                        arcs_[a].cap -= f;
                        arcs_[a ^ 1].cap += f;
                        return f;
                    }
                }
            }
            return 0;
        }

        vector<int> head_, level_, it_;
        vector<Arc> arcs_;
    };

    auto edges_within(const Graph & g, std::span<const Vertex> set) -> long
    {
        vector<char> in(g.num_vertices(), 0);
        for (Vertex v : set)
            in[v] = 1;
        long e = 0;
        for (Vertex v : set)
            for (Vertex w : g.neighbors(v))
                e += (in[w] && v < w) ? 1 : 0;
        return e;
    }

    // A vertex set maximising b e(S) - a |S|, if that maximum is positive
    // (i.e. some subgraph is denser than a/b). Goldberg's network, scaled
    // by b so all capacities are integers.
    auto denser_than(const Graph & g, int64_t a, int64_t b) -> std::optional<vector<Vertex>>
    {
        const int n = g.num_vertices();
        const int64_t m = g.num_edges();
        const int s = n, t = n + 1;
        MaxFlow flow(n + 2);
        for (Vertex v = 0; v < n; ++v) {
            flow.add_edge(s, v, b * m);
            flow.add_edge(v, t, b * m + 2 * a - b * g.degree(v));
            for (Vertex w : g.neighbors(v))
                if (v < w)
                    flow.add_edge(v, w, b, b);
        }
        // cut(S) = b m n + 2 (a |S| - b e(S))
        if (flow.run(s, t) >= b * m * n)
            return std::nullopt;
        auto side = flow.source_side(s);
        vector<Vertex> set;
        for (Vertex v = 0; v < n; ++v)
            if (side[v])
                set.push_back(v);
        return set;
    }
}

auto max_subgraph_density(const Graph & g) -> Density
{
    Density result;
    const int64_t n = g.num_vertices(), m = g.num_edges();
    if (m == 0)
        return result;

    // Distinct densities with denominators <= n differ by more than 1/n^2,
    // so once some subgraph beats k/n^2 but none beats (k+1)/n^2 the
    // subgraph found is optimal. Binary search on k.
    const int64_t scale = n * n;
    if (n > 1 && static_cast<double>(scale) * m * n * 4.0 > 9.0e18)
        throw ScaleGuardExceeded("graph too large for 64-bit flow capacities");

    auto test = [&](int64_t k) {
        int64_t a = k, b = scale;
        int64_t d = std::gcd(a, b);
        return denser_than(g, a / d, b / d);
    };

    int64_t lo = 0, hi = (g.max_degree() * scale) / 2 + 1;   // test(lo) succeeds, test(hi) fails
    auto best = test(lo);
    while (hi - lo > 1) {
        int64_t mid = lo + (hi - lo) / 2;
        if (auto found = test(mid)) {
            best = std::move(found);
            lo = mid;
        }
        else
            hi = mid;
    }

    result.subgraph = *best;
    result.value = Rational(edges_within(g, *best), static_cast<long>(best->size()));
    return result;
}

// ---------------------------------------------------------------------

namespace {
    auto default_guard(const DensityOptions & o, int fallback) -> int { return o.scale_guard > 0 ? o.scale_guard : fallback; }

    using Mask = std::uint32_t;

    auto neighbour_masks(const Graph & g) -> vector<Mask>
    {
        vector<Mask> nb(g.num_vertices(), 0);
        for (Vertex v = 0; v < g.num_vertices(); ++v)
            for (Vertex w : g.neighbors(v))
                nb[v] |= Mask{1} << w;
        return nb;
    }

    auto members(Mask m) -> vector<Vertex>
    {
        vector<Vertex> r;
        for (Vertex v = 0; m; ++v, m >>= 1)
            if (m & 1)
                r.push_back(v);
        return r;
    }

    struct Score {
        int edges = 0, vertices = 0;   // vertices == 0: nothing yet
        auto better_than(const Score & o) const -> bool
        {
            if (o.vertices == 0)
                return vertices > 0;
            return static_cast<int64_t>(edges) * o.vertices > static_cast<int64_t>(o.edges) * vertices;
        }
    };

    // Maximum matching of middles to candidate pairs (Kuhn's algorithm).
    struct PairMatching {
        const vector<vector<int>> & options;   // per middle: candidate pair ids
        vector<int> pair_owner, middle_pair;
        vector<char> visited;

        PairMatching(const vector<vector<int>> & opts, int num_pairs) :
            options(opts), pair_owner(num_pairs, -1), middle_pair(opts.size(), -1), visited(num_pairs)
        {
        }

        auto augment(int middle) -> bool
        {
            for (int p : options[middle]) {
                if (visited[p])
                    continue;
                visited[p] = 1;
                if (pair_owner[p] < 0 || augment(pair_owner[p])) {
                    pair_owner[p] = middle;
                    middle_pair[middle] = p;
                    return true;
                }
            }
            return false;
        }

        auto solve() -> int
        {
            int size = 0;
            for (int mid = 0; mid < static_cast<int>(options.size()); ++mid) {
                std::fill(visited.begin(), visited.end(), 0);
                size += augment(mid) ? 1 : 0;
            }
            return size;
        }
    };

    struct HalfCandidate {
        Score score;
        Mask branch = 0;
    };

    auto evaluate_branch_set(const Graph & g, const vector<Mask> & nb, Mask branch, TopologicalModel * model) -> Score
    {
        const int n = g.num_vertices();
        auto b = members(branch);
        const int k = static_cast<int>(b.size());
        vector<int> pos(n, -1);
        for (int i = 0; i < k; ++i)
            pos[b[i]] = i;

        int direct = 0;
        for (Vertex v : b)
            direct += std::popcount(nb[v] & branch & ~((Mask{2} << v) - 1));

        vector<Vertex> middle_ids;
        vector<vector<int>> options;
        for (Vertex m = 0; m < n; ++m) {
            if (branch >> m & 1)
                continue;
            auto reach = members(nb[m] & branch);
            if (reach.size() < 2)
                continue;
            vector<int> opts;
            for (std::size_t i = 0; i < reach.size(); ++i)
                for (std::size_t j = i + 1; j < reach.size(); ++j)
                    if (! (nb[reach[i]] >> reach[j] & 1))
                        opts.push_back(pos[reach[i]] * k + pos[reach[j]]);
            if (! opts.empty()) {
                middle_ids.push_back(m);
                options.push_back(std::move(opts));
            }
        }
        PairMatching matching(options, k * k);
        const int matched = options.empty() ? 0 : matching.solve();

        if (model) {
            model->branch = b;
            for (Vertex v : b)
                for (Vertex w : b)
                    if (v < w && (nb[v] >> w & 1))
                        model->direct.emplace_back(v, w);
            for (std::size_t i = 0; i < middle_ids.size(); ++i)
                if (int p = matching.middle_pair[i]; p >= 0) {
                    model->subdivided.emplace_back(b[p / k], b[p % k]);
                    model->middles.push_back(middle_ids[i]);
                }
        }
        return {direct + matched, k};
    }

    template <typename Work>
    auto run_chunks(int threads, int chunks, Work && work) -> void
    {
        threads = std::max(1, std::min(threads, chunks));
        if (threads == 1) {
            for (int c = 0; c < chunks; ++c)
                work(c);
            return;
        }
        std::atomic<int> next{0};
        vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (int c; (c = next++) < chunks;)
                    work(c);
            });
    }
}

auto topgrad_half(const Graph & g, const DensityOptions & options) -> Density
{
    const int n = g.num_vertices();
    const int guard = default_guard(options, 14);
    if (n > guard || n > 30)
        throw ScaleGuardExceeded("topgrad_half: " + std::to_string(n) + " vertices exceeds the limit of " + std::to_string(guard));

    Density result;
    if (n == 0)
        return result;

    const auto nb = neighbour_masks(g);
    const Mask limit = Mask{1} << n;

    // Contiguous chunks of branch-set masks; the first maximum in mask
    // order wins, both within and across chunks.
    const int chunks = options.threads > 1 ? options.threads * 8 : 1;
    vector<HalfCandidate> best(chunks);
    run_chunks(options.threads, chunks, [&](int c) {
        const Mask lo = static_cast<Mask>((static_cast<std::uint64_t>(limit) * c) / chunks);
        const Mask hi = static_cast<Mask>((static_cast<std::uint64_t>(limit) * (c + 1)) / chunks);
        for (Mask branch = std::max<Mask>(lo, 1); branch < hi; ++branch) {
            auto score = evaluate_branch_set(g, nb, branch, nullptr);
            if (score.better_than(best[c].score))
                best[c] = {score, branch};
        }
    });

    HalfCandidate winner;
    for (const auto & c : best)
        if (c.score.better_than(winner.score))
            winner = c;

    TopologicalModel model;
    auto score = evaluate_branch_set(g, nb, winner.branch, &model);
    result.value = Rational(score.edges, score.vertices);
    result.topological = std::move(model);
    return result;
}

// ---------------------------------------------------------------------

namespace {
    struct OneCandidate {
        Score score;
        vector<Mask> blocks;
    };

    // Restricted-growth enumeration: each vertex is unused (-1) or joins an
    // existing block or opens the next one. A block stays feasible while
    // some member is adjacent to all other members.
    struct BlockEnumerator {
        const vector<Mask> & closed;   // closed neighbourhoods
        const vector<Mask> & nb;
        int n;
        vector<Mask> blocks, centres;
        OneCandidate best;

        auto evaluate() -> void
        {
            const int p = static_cast<int>(blocks.size());
            if (p == 0)
                return;
            int edges = 0;
            for (int i = 0; i < p; ++i) {
                Mask reach = 0;
                for (Mask m = blocks[i]; m; m &= m - 1)
                    reach |= nb[std::countr_zero(m)];
                for (int j = i + 1; j < p; ++j)
                    edges += (reach & blocks[j]) ? 1 : 0;
            }
            Score s{edges, p};
            if (s.better_than(best.score))
                best = {s, blocks};
        }

        auto run(int v) -> void
        {
            if (v == n) {
                evaluate();
                return;
            }
            run(v + 1);
            const Mask bit = Mask{1} << v;
            for (std::size_t i = 0; i < blocks.size(); ++i) {
                const Mask saved_centres = centres[i];
                // centres must dominate every member including v
                Mask ok = 0;
                for (Mask m = (blocks[i] | bit); m; m &= m - 1) {
                    int c = std::countr_zero(m);
                    if ((closed[c] & (blocks[i] | bit)) == (blocks[i] | bit))
                        ok |= Mask{1} << c;
                }
                if (! ok)
                    continue;
                blocks[i] |= bit;
                centres[i] = ok;
                run(v + 1);
                blocks[i] &= ~bit;
                centres[i] = saved_centres;
            }
            blocks.push_back(bit);
            centres.push_back(bit);
            run(v + 1);
            blocks.pop_back();
            centres.pop_back();
        }
    };
}

auto grad_one(const Graph & g, const DensityOptions & options) -> Density
{
    const int n = g.num_vertices();
    const int guard = default_guard(options, 10);
    if (n > guard || n > 30)
        throw ScaleGuardExceeded("grad_one: " + std::to_string(n) + " vertices exceeds the limit of " + std::to_string(guard));

    Density result;
    if (n == 0)
        return result;

    const auto nb = neighbour_masks(g);
    vector<Mask> closed(n);
    for (Vertex v = 0; v < n; ++v)
        closed[v] = nb[v] | (Mask{1} << v);

    // Enumerate the placements of the first few vertices up front; each
    // prefix is searched independently and results are merged in prefix
    // order, which is the sequential enumeration order.
    const int split = options.threads > 1 ? std::min(n, 4) : 0;
    vector<vector<int>> prefixes;
    {
        vector<int> labels;
        auto grow = [&](auto && self, int v, int blocks_used) -> void {
            if (v == split) {
                prefixes.push_back(labels);
                return;
            }
            for (int label = -1; label <= blocks_used; ++label) {
                labels.push_back(label);
                self(self, v + 1, std::max(blocks_used, label + 1));
                labels.pop_back();
            }
        };
        grow(grow, 0, 0);
    }

    vector<OneCandidate> best(prefixes.size());
    run_chunks(options.threads, static_cast<int>(prefixes.size()), [&](int c) {
        BlockEnumerator e{closed, nb, n, {}, {}, {}};
        for (int v = 0; v < split; ++v) {
            int label = prefixes[c][v];
            if (label < 0)
                continue;
            const Mask bit = Mask{1} << v;
            if (label == static_cast<int>(e.blocks.size())) {
                e.blocks.push_back(bit);
                e.centres.push_back(bit);
                continue;
            }
            e.blocks[label] |= bit;
            Mask ok = 0;
            for (Mask m = e.blocks[label]; m; m &= m - 1) {
                int x = std::countr_zero(m);
                if ((closed[x] & e.blocks[label]) == e.blocks[label])
                    ok |= Mask{1} << x;
            }
            if (! ok)
                return;
            e.centres[label] = ok;
        }
        e.run(split);
        best[c] = std::move(e.best);
    });

    OneCandidate winner;
    for (auto & c : best)
        if (c.score.better_than(winner.score))
            winner = std::move(c);

    ContractionModel model;
    for (Mask block : winner.blocks) {
        auto set = members(block);
        Vertex centre = -1;
        for (Vertex x : set)
            if (centre < 0 && (closed[x] & block) == block)
                centre = x;
        model.sets.push_back(std::move(set));
        model.centres.push_back(centre);
    }
    for (std::size_t i = 0; i < winner.blocks.size(); ++i) {
        Mask reach = 0;
        for (Mask m = winner.blocks[i]; m; m &= m - 1)
            reach |= nb[std::countr_zero(m)];
        for (std::size_t j = i + 1; j < winner.blocks.size(); ++j)
            if (reach & winner.blocks[j])
                model.minor_edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
    result.value = Rational(winner.score.edges, winner.score.vertices);
    result.contraction = std::move(model);
    return result;
}

// ---------------------------------------------------------------------

namespace {
    auto floor_of(const Rational & r) -> BigInt
    {
        BigInt num = boost::multiprecision::numerator(r), den = boost::multiprecision::denominator(r);
        BigInt q = num / den;
        if (num % den != 0 && num < 0)
            q -= 1;
        return q;
    }
}

auto strongdeg_bound_from_topgrads(int s, const Rational & t0, const Rational & th) -> BigInt
{
    if (s < 2)
        throw std::invalid_argument("s must be >= 2");
    if (th < t0)
        throw std::invalid_argument("the depth-1/2 top-grad cannot be below the subgraph density");
    // d >= 1 always; the formula dips below 1 on forests where t0 < 1
    return std::max(BigInt(1), floor_of((2 * t0 - 2) * (s - 1) * th + 2 * t0));
}

auto strongdeg_bound_from_grad1(int s, const Rational & g1) -> BigInt
{
    if (s < 2)
        throw std::invalid_argument("s must be >= 2");
    if (g1 < 0)
        throw std::invalid_argument("grad must be non-negative");
    return std::max(BigInt(1), floor_of(2 * s * g1));
}

auto strongdeg_bound_minor_free(int s, int t, double c) -> long long
{
    if (s < 2 || t < 2 || c <= 0)
        throw std::invalid_argument("need s >= 2, t >= 2, C > 0");
    return static_cast<long long>(std::floor(2.0 * s * c * t * std::sqrt(std::log(static_cast<double>(t)))));
}

auto strongdeg_bound_subdivision_free(int s, int t, double c) -> long long
{
    if (s < 2 || t < 2 || c <= 0)
        throw std::invalid_argument("need s >= 2, t >= 2, C > 0");
    const double density = c * t * t;
    return static_cast<long long>(std::floor((2 * density - 2) * (s - 1) * density + 2 * density));
}

// ---------------------------------------------------------------------

auto validate_density(const Graph & g, const Density & d) -> std::optional<std::string>
{
    const int n = g.num_vertices();
    auto in_range = [n](Vertex v) { return v >= 0 && v < n; };

    if (d.contraction) {
        const auto & m = *d.contraction;
        if (m.sets.size() != m.centres.size())
            return "one centre per set required";
        vector<int> owner(n, -1);
        for (std::size_t i = 0; i < m.sets.size(); ++i) {
            if (m.sets[i].empty())
                return "empty branch set";
            for (Vertex v : m.sets[i]) {
                if (! in_range(v) || owner[v] >= 0)
                    return "branch sets overlap or leave the graph";
                owner[v] = static_cast<int>(i);
            }
            const Vertex c = m.centres[i];
            if (! in_range(c) || owner[c] != static_cast<int>(i))
                return "centre outside its set";
            for (Vertex v : m.sets[i])
                if (v != c && ! g.adjacent(v, c))
                    return "set " + std::to_string(i) + " has radius > 1";
        }
        std::set<Edge> seen;
        for (auto [i, j] : m.minor_edges) {
            if (i == j || i < 0 || j < 0 || i >= static_cast<int>(m.sets.size()) || j >= static_cast<int>(m.sets.size()) || ! seen.insert(std::minmax(i, j)).second)
                return "bad minor edge";
            bool linked = false;
            for (Vertex v : m.sets[i])
                for (Vertex w : g.neighbors(v))
                    linked = linked || owner[w] == j;
            if (! linked)
                return "minor edge without a host edge";
        }
        if (m.sets.empty())
            return d.value == 0 ? std::nullopt : std::optional<std::string>("empty model with non-zero value");
        if (Rational(static_cast<long>(m.minor_edges.size()), static_cast<long>(m.sets.size())) != d.value)
            return "value does not match the model";
        return std::nullopt;
    }

    if (d.topological) {
        const auto & m = *d.topological;
        vector<char> used(n, 0), branch(n, 0);
        for (Vertex v : m.branch) {
            if (! in_range(v) || branch[v])
                return "bad branch vertex";
            branch[v] = used[v] = 1;
        }
        std::set<Edge> seen;
        for (auto [u, v] : m.direct)
            if (! in_range(u) || ! in_range(v) || ! branch[u] || ! branch[v] || ! g.adjacent(u, v) || ! seen.insert(std::minmax(u, v)).second)
                return "bad direct edge";
        if (m.subdivided.size() != m.middles.size())
            return "one middle per subdivided edge required";
        for (std::size_t i = 0; i < m.subdivided.size(); ++i) {
            auto [u, v] = m.subdivided[i];
            Vertex mid = m.middles[i];
            if (! in_range(u) || ! in_range(v) || ! branch[u] || ! branch[v] || u == v || ! seen.insert(std::minmax(u, v)).second)
                return "bad subdivided edge";
            if (! in_range(mid) || used[mid] || ! g.adjacent(u, mid) || ! g.adjacent(mid, v))
                return "bad middle vertex";
            used[mid] = 1;
        }
        if (m.branch.empty())
            return d.value == 0 ? std::nullopt : std::optional<std::string>("empty model with non-zero value");
        if (Rational(static_cast<long>(seen.size()), static_cast<long>(m.branch.size())) != d.value)
            return "value does not match the model";
        return std::nullopt;
    }

    vector<char> seen(n, 0);
    for (Vertex v : d.subgraph) {
        if (! in_range(v) || seen[v])
            return "bad subgraph vertex";
        seen[v] = 1;
    }
    if (d.subgraph.empty())
        return d.value == 0 ? std::nullopt : std::optional<std::string>("empty witness with non-zero value");
    if (Rational(edges_within(g, d.subgraph), static_cast<long>(d.subgraph.size())) != d.value)
        return "value does not match the subgraph";
    return std::nullopt;
}

}
