#include <hatdeg/elimination.hpp>

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>

using std::vector;

namespace hatdeg {

auto EliminationOrder::vertices() const -> vector<Vertex>
{
    vector<Vertex> result;
    result.reserve(steps.size());
    for (const auto & s : steps)
        result.push_back(s.v);
    return result;
}

auto is_d_removable(const Graph & g, Vertex v, int d) -> bool
{
    if (v < 0 || v >= g.num_vertices())
        throw std::out_of_range("vertex " + std::to_string(v) + " not in graph");
    if (d < 1)
        throw std::invalid_argument("d must be >= 1");
    if (g.degree(v) > d)
        return false;
    int high = 0;
    for (Vertex w : g.neighbors(v))
        if (g.degree(w) > d)
            ++high;
    return high <= 1;
}

auto strong_elimination(const Graph & g, int d) -> EliminationResult
{
    if (d < 1)
        throw std::invalid_argument("d must be >= 1");
    const int n = g.num_vertices();

    vector<int> deg(n), high(n, 0);
    vector<char> alive(n, 1), queued(n, 0);
    for (Vertex v = 0; v < n; ++v)
        deg[v] = g.degree(v);
    for (Vertex v = 0; v < n; ++v)
        for (Vertex w : g.neighbors(v))
            if (deg[w] > d)
                ++high[v];

    // Removability is monotone under vertex deletion (degrees only drop), so
    // a vertex stays a candidate once it becomes one and a min-heap yields
    // the lowest-index removable vertex at every step.
    std::priority_queue<Vertex, vector<Vertex>, std::greater<>> ready;
    auto offer = [&](Vertex v) {
        if (alive[v] && ! queued[v] && deg[v] <= d && high[v] <= 1) {
            queued[v] = 1;
            ready.push(v);
        }
    };
    for (Vertex v = 0; v < n; ++v)
        offer(v);

    EliminationOrder order{.d = d};
    order.steps.reserve(n);
    while (! ready.empty()) {
        Vertex v = ready.top();
        ready.pop();

        EliminationStep step{.v = v};
        for (Vertex w : g.neighbors(v))
            if (alive[w]) {
                step.neighbors.push_back(w);
                step.neighbor_degrees.push_back(deg[w]);
            }
        alive[v] = 0;

        for (Vertex w : step.neighbors) {
            if (deg[w]-- == d + 1)
                for (Vertex x : g.neighbors(w))
                    if (alive[x]) {
                        --high[x];
                        offer(x);
                    }
            offer(w);
        }
        order.steps.push_back(std::move(step));
    }

    if (static_cast<int>(order.steps.size()) == n)
        return order;

    StuckSubgraph stuck{.d = d};
    for (Vertex v = 0; v < n; ++v)
        if (alive[v])
            stuck.vertices.push_back(v);
    return stuck;
}

auto degeneracy(const Graph & g) -> int
{
    const int n = g.num_vertices();
    if (n == 0)
        return 0;

    // Bucket queue keyed by current degree.
    const int max_deg = g.max_degree();
    vector<int> deg(n);
    vector<vector<Vertex>> buckets(max_deg + 1);
    for (Vertex v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        buckets[deg[v]].push_back(v);
    }
    vector<char> removed(n, 0);
    int result = 0, level = 0;
    for (int done = 0; done < n;) {
        while (buckets[level].empty())
            ++level;
        Vertex v = buckets[level].back();
        buckets[level].pop_back();
        if (removed[v] || deg[v] != level)
            continue;
        removed[v] = 1;
        ++done;
        result = std::max(result, level);
        for (Vertex w : g.neighbors(v))
            if (! removed[w]) {
                buckets[--deg[w]].push_back(w);
                level = std::min(level, deg[w]);
            }
    }
    return result;
}

auto strong_degeneracy(const Graph & g) -> StrongDegeneracy
{
    // Strongly d-degenerate implies d-degenerate, so nothing below the
    // ordinary degeneracy can succeed.
    const int top = std::max(1, g.max_degree());
    for (int d = std::max(1, degeneracy(g)); d <= top; ++d) {
        auto r = strong_elimination(g, d);
        if (auto * order = std::get_if<EliminationOrder>(&r))
            return {d, std::move(*order)};
    }
    throw std::logic_error("strong elimination failed at d = max degree");
}

auto validate_order(const Graph & g, const EliminationOrder & order) -> std::optional<std::string>
{
    const int n = g.num_vertices();
    if (order.d < 1)
        return "d < 1";
    if (static_cast<int>(order.steps.size()) != n)
        return "order has " + std::to_string(order.steps.size()) + " steps for " + std::to_string(n) + " vertices";

    vector<char> alive(n, 1);
    vector<int> deg(n);
    for (Vertex v = 0; v < n; ++v)
        deg[v] = g.degree(v);

    for (const auto & step : order.steps) {
        const Vertex v = step.v;
        if (v < 0 || v >= n || ! alive[v])
            return "vertex " + std::to_string(v) + " invalid or repeated";
        vector<Vertex> nbrs;
        for (Vertex w : g.neighbors(v))
            if (alive[w])
                nbrs.push_back(w);
        if (nbrs != step.neighbors)
            return "recorded neighbourhood of " + std::to_string(v) + " is wrong";
        if (step.neighbor_degrees.size() != nbrs.size())
            return "recorded degrees of " + std::to_string(v) + " are wrong";
        int high = 0;
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            if (step.neighbor_degrees[i] != deg[nbrs[i]])
                return "recorded degree of " + std::to_string(nbrs[i]) + " is wrong";
            if (deg[nbrs[i]] > order.d)
                ++high;
        }
        if (static_cast<int>(nbrs.size()) > order.d || high > 1)
            return "vertex " + std::to_string(v) + " is not " + std::to_string(order.d) + "-removable";
        alive[v] = 0;
        for (Vertex w : nbrs)
            --deg[w];
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------

namespace {
    // Vertices of the largest-k k-core of h (k = its min degree), with k.
    auto max_core(const Graph & h) -> std::pair<vector<Vertex>, int>
    {
        const int n = h.num_vertices();
        vector<int> deg(n);
        vector<char> removed(n, 0);
        for (Vertex v = 0; v < n; ++v)
            deg[v] = h.degree(v);

        // Peel by minimum degree; the core order is the suffix after the
        // last time the running maximum strictly increased.
        vector<Vertex> order;
        vector<int> level_at(n);
        int level = 0;
        for (int done = 0; done < n; ++done) {
            Vertex best = -1;
            for (Vertex v = 0; v < n; ++v)
                if (! removed[v] && (best < 0 || deg[v] < deg[best]))
                    best = v;
            level = std::max(level, deg[best]);
            level_at[done] = level;
            removed[best] = 1;
            order.push_back(best);
            for (Vertex w : h.neighbors(best))
                if (! removed[w])
                    --deg[w];
        }
        const int k = n == 0 ? 0 : level_at[n - 1];
        int first = n - 1;
        while (first > 0 && level_at[first - 1] == k)
            --first;
        vector<Vertex> core(order.begin() + first, order.end());
        std::sort(core.begin(), core.end());
        return {core, k};
    }
}

auto extract_obstruction(const Graph & g, int d) -> ObstructionWitness
{
    const int n = g.num_vertices();
    if (n == 0)
        throw std::invalid_argument("extract_obstruction: empty graph");
    for (Vertex v = 0; v < n; ++v)
        if (is_d_removable(g, v, d))
            throw std::invalid_argument("extract_obstruction: vertex " + std::to_string(v) + " is " + std::to_string(d) + "-removable");

    vector<char> in_b(n, 0);
    vector<Vertex> a_side, b_side;
    for (Vertex v = 0; v < n; ++v) {
        in_b[v] = g.degree(v) > d;
        (in_b[v] ? b_side : a_side).push_back(v);
    }

    if (a_side.empty()) {
        auto [core, k] = max_core(g);
        auto f = g.induced(core);
        SubdivisionWitness w{.min_degree = k, .branch = core};
        for (auto [i, j] : f.edges()) {
            w.edges.emplace_back(core[i], core[j]);
            w.middles.push_back(-1);
        }
        return w;
    }

    // Each A-vertex picks its two lowest-index B-neighbours.
    std::map<Edge, vector<Vertex>> chosen_by;
    for (Vertex a : a_side) {
        vector<Vertex> pick;
        for (Vertex w : g.neighbors(a))
            if (in_b[w] && pick.size() < 2)
                pick.push_back(w);
        chosen_by[{pick[0], pick[1]}].push_back(a);
    }

    for (const auto & [pair, as] : chosen_by)
        if (static_cast<int>(as.size()) >= d + 1)
            return BipartiteWitness{pair.first, pair.second, vector<Vertex>(as.begin(), as.begin() + (d + 1))};

    // Auxiliary graph on B with one edge per chosen pair.
    vector<int> index(n, -1);
    for (int i = 0; i < static_cast<int>(b_side.size()); ++i)
        index[b_side[i]] = i;
    vector<Edge> aux_edges;
    vector<Vertex> aux_middle;
    for (const auto & [pair, as] : chosen_by) {
        aux_edges.emplace_back(index[pair.first], index[pair.second]);
        aux_middle.push_back(as.front());
    }
    Graph aux(static_cast<int>(b_side.size()), aux_edges);

    auto [core, k] = max_core(aux);
    vector<char> in_core(aux.num_vertices(), 0);
    for (Vertex c : core)
        in_core[c] = 1;

    SubdivisionWitness w{.min_degree = k};
    for (Vertex c : core)
        w.branch.push_back(b_side[c]);
    for (std::size_t e = 0; e < aux_edges.size(); ++e) {
        auto [i, j] = aux_edges[e];
        if (in_core[i] && in_core[j]) {
            w.edges.emplace_back(b_side[i], b_side[j]);
            w.middles.push_back(aux_middle[e]);
        }
    }
    return w;
}

auto find_obstruction(const Graph & g, int d) -> std::optional<ObstructionWitness>
{
    auto r = strong_elimination(g, d);
    auto * stuck = std::get_if<StuckSubgraph>(&r);
    if (! stuck)
        return std::nullopt;

    const auto & ids = stuck->vertices;
    auto w = extract_obstruction(g.induced(ids), d);
    if (auto * b = std::get_if<BipartiteWitness>(&w)) {
        b->left = ids[b->left];
        b->right = ids[b->right];
        for (auto & c : b->common)
            c = ids[c];
    }
    else {
        auto & s = std::get<SubdivisionWitness>(w);
        for (auto & v : s.branch)
            v = ids[v];
        for (auto & [u, v] : s.edges)
            u = ids[u], v = ids[v];
        for (auto & m : s.middles)
            if (m >= 0)
                m = ids[m];
    }
    return w;
}

auto validate_witness(const Graph & host, const ObstructionWitness & witness) -> std::optional<std::string>
{
    const int n = host.num_vertices();
    auto in_range = [n](Vertex v) { return v >= 0 && v < n; };

    if (auto * b = std::get_if<BipartiteWitness>(&witness)) {
        vector<Vertex> all{b->left, b->right};
        all.insert(all.end(), b->common.begin(), b->common.end());
        if (! std::all_of(all.begin(), all.end(), in_range))
            return "vertex out of range";
        std::sort(all.begin(), all.end());
        if (std::adjacent_find(all.begin(), all.end()) != all.end())
            return "witness vertices are not distinct";
        for (Vertex c : b->common)
            if (! host.adjacent(c, b->left) || ! host.adjacent(c, b->right))
                return "missing edge at common neighbour " + std::to_string(c);
        return std::nullopt;
    }

    const auto & s = std::get<SubdivisionWitness>(witness);
    if (s.edges.size() != s.middles.size())
        return "edge/middle count mismatch";
    if (! std::all_of(s.branch.begin(), s.branch.end(), in_range))
        return "branch vertex out of range";

    vector<char> used(n, 0);
    for (Vertex b : s.branch) {
        if (used[b])
            return "repeated branch vertex";
        used[b] = 1;
    }
    vector<char> is_branch = used;

    std::map<Vertex, int> f_degree;
    vector<Edge> seen;
    for (std::size_t i = 0; i < s.edges.size(); ++i) {
        auto [u, v] = s.edges[i];
        if (! in_range(u) || ! in_range(v) || ! is_branch[u] || ! is_branch[v] || u == v)
            return "F-edge endpoint is not a branch vertex";
        seen.push_back(std::minmax(u, v));
        ++f_degree[u], ++f_degree[v];
        Vertex m = s.middles[i];
        if (m < 0) {
            if (! host.adjacent(u, v))
                return "direct F-edge missing in host";
            continue;
        }
        if (! in_range(m) || used[m])
            return "middle vertex reused or clashes with a branch vertex";
        used[m] = 1;
        if (! host.adjacent(u, m) || ! host.adjacent(m, v))
            return "subdivided path missing in host";
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        return "F has a repeated edge";

    int min_deg = s.branch.empty() ? 0 : std::numeric_limits<int>::max();
    for (Vertex b : s.branch)
        min_deg = std::min(min_deg, f_degree[b]);
    if (min_deg != s.min_degree)
        return "stated minimum degree " + std::to_string(s.min_degree) + " but F has " + std::to_string(min_deg);
    return std::nullopt;
}

}
