#include <hatdeg/graph.hpp>
#include <hatdeg/rng.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <queue>
#include <sstream>

using std::string;
using std::string_view;
using std::vector;

namespace hatdeg {

Graph::Graph(int n) : adj_(n)
{
    if (n < 0)
        throw std::invalid_argument("negative vertex count");
}

Graph::Graph(int n, std::span<const Edge> edges) : Graph(n)
{
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::invalid_argument("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
        if (u == v)
            throw std::invalid_argument("loop at vertex " + std::to_string(u));
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto & a : adj_) {
        std::sort(a.begin(), a.end());
        if (std::adjacent_find(a.begin(), a.end()) != a.end())
            throw std::invalid_argument("duplicate edge");
    }
    m_ = static_cast<long>(edges.size());
}

auto Graph::adjacent(Vertex u, Vertex v) const -> bool
{
    const auto & a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    return std::binary_search(a.begin(), a.end(), &a == &adj_[u] ? v : u);
}

auto Graph::max_degree() const -> int
{
    int best = 0;
    for (const auto & a : adj_)
        best = std::max(best, static_cast<int>(a.size()));
    return best;
}

auto Graph::min_degree() const -> int
{
    if (adj_.empty())
        return 0;
    int best = std::numeric_limits<int>::max();
    for (const auto & a : adj_)
        best = std::min(best, static_cast<int>(a.size()));
    return best;
}

auto Graph::edges() const -> vector<Edge>
{
    vector<Edge> result;
    result.reserve(m_);
    for (Vertex u = 0; u < num_vertices(); ++u)
        for (Vertex v : adj_[u])
            if (u < v)
                result.emplace_back(u, v);
    return result;
}

auto Graph::induced(std::span<const Vertex> keep) const -> Graph
{
    vector<int> index(num_vertices(), -1);
    for (int i = 0; i < static_cast<int>(keep.size()); ++i)
        index[keep[i]] = i;

    vector<Edge> sub;
    for (int i = 0; i < static_cast<int>(keep.size()); ++i)
        for (Vertex w : adj_[keep[i]])
            if (index[w] > i)
                sub.emplace_back(i, index[w]);
    return Graph(static_cast<int>(keep.size()), sub);
}

// ---------------------------------------------------------------------

ParseError::ParseError(Kind kind, int line, const string & what) :
    std::runtime_error("line " + std::to_string(line) + ": " + what),
    kind_(kind),
    line_(line)
{
}

namespace {
    auto trim(string_view s) -> string_view
    {
        auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
        while (! s.empty() && ws(s.front()))
            s.remove_prefix(1);
        while (! s.empty() && ws(s.back()))
            s.remove_suffix(1);
        return s;
    }

    // Exactly two non-negative integers separated by whitespace.
    auto parse_pair(string_view s, long & a, long & b) -> bool
    {
        auto read = [&](long & out) {
            while (! s.empty() && (s.front() == ' ' || s.front() == '\t'))
                s.remove_prefix(1);
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
            if (ec != std::errc{} || ptr == s.data() || out < 0)
                return false;
            s.remove_prefix(ptr - s.data());
            return true;
        };
        if (! read(a))
            return false;
        if (s.empty() || (s.front() != ' ' && s.front() != '\t'))
            return false;
        if (! read(b))
            return false;
        return trim(s).empty();
    }
}

auto parse_edge_list(string_view text) -> Graph
{
    using Kind = ParseError::Kind;

    long n = -1, m = -1;
    vector<Edge> edges;
    vector<std::pair<Edge, int>> seen;
    int line_no = 0;

    while (! text.empty()) {
        auto eol = text.find('\n');
        auto raw = text.substr(0, eol);
        text = eol == string_view::npos ? string_view{} : text.substr(eol + 1);
        ++line_no;

        auto line = trim(raw);
        if (line.empty() || line.front() == '#')
            continue;

        long a, b;
        if (! parse_pair(line, a, b))
            throw ParseError(n < 0 ? Kind::header : Kind::malformed, line_no, "expected two non-negative integers, got '" + string(line) + "'");

        if (n < 0) {
            n = a;
            m = b;
            if (n > std::numeric_limits<int>::max() / 2)
                throw ParseError(Kind::header, line_no, "vertex count too large");
            if (m > n * (n - 1) / 2)
                throw ParseError(Kind::header, line_no, "edge count exceeds n(n-1)/2");
            continue;
        }

        if (a == b)
            throw ParseError(Kind::loop, line_no, "loop at vertex " + std::to_string(a));
        if (a >= n || b >= n)
            throw ParseError(Kind::vertex_range, line_no, "vertex index >= n = " + std::to_string(n));
        if (static_cast<long>(edges.size()) == m)
            throw ParseError(Kind::edge_count, line_no, "more than m = " + std::to_string(m) + " edge lines");
        auto u = static_cast<Vertex>(std::min(a, b)), v = static_cast<Vertex>(std::max(a, b));
        edges.emplace_back(u, v);
        seen.push_back({{u, v}, line_no});
    }

    if (n < 0)
        throw ParseError(Kind::header, line_no, "missing header line 'n m'");
    if (static_cast<long>(edges.size()) != m)
        throw ParseError(Kind::edge_count, line_no, "expected " + std::to_string(m) + " edge lines, found " + std::to_string(edges.size()));

    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 1; i < seen.size(); ++i)
        if (seen[i].first == seen[i - 1].first)
            throw ParseError(Kind::duplicate_edge, std::max(seen[i].second, seen[i - 1].second),
                "duplicate edge " + std::to_string(seen[i].first.first) + " " + std::to_string(seen[i].first.second));

    return Graph(static_cast<int>(n), edges);
}

auto read_edge_list_file(const string & path) -> Graph
{
    std::ifstream in(path);
    if (! in)
        throw std::runtime_error("cannot read " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_edge_list(buffer.str());
}

auto to_edge_list(const Graph & g) -> string
{
    std::ostringstream out;
    out << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (auto [u, v] : g.edges())
        out << u << ' ' << v << '\n';
    return out.str();
}

// ---------------------------------------------------------------------

auto FamilySpec::path(int n) -> FamilySpec { return {.family = Family::path, .n = n}; }
auto FamilySpec::cycle(int n) -> FamilySpec { return {.family = Family::cycle, .n = n}; }
auto FamilySpec::complete(int n) -> FamilySpec { return {.family = Family::complete, .n = n}; }
auto FamilySpec::complete_bipartite(int m, int n) -> FamilySpec { return {.family = Family::complete_bipartite, .n = n, .m = m}; }
auto FamilySpec::random_tree(int n, std::uint64_t seed) -> FamilySpec { return {.family = Family::random_tree, .n = n, .seed = seed}; }
auto FamilySpec::maximal_outerplanar(int n, std::uint64_t seed) -> FamilySpec
{
    return {.family = Family::maximal_outerplanar, .n = n, .seed = seed};
}
auto FamilySpec::gnp(int n, double p, std::uint64_t seed) -> FamilySpec { return {.family = Family::gnp, .n = n, .p = p, .seed = seed}; }
auto FamilySpec::one_subdivision_of(FamilySpec base) -> FamilySpec
{
    return {.family = Family::one_subdivision_of, .base = std::make_shared<const FamilySpec>(std::move(base))};
}

namespace {
    constexpr std::pair<Family, string_view> family_names[] = {
        {Family::path, "path"},
        {Family::cycle, "cycle"},
        {Family::complete, "complete"},
        {Family::complete_bipartite, "complete-bipartite"},
        {Family::random_tree, "random-tree"},
        {Family::maximal_outerplanar, "maximal-outerplanar"},
        {Family::gnp, "gnp"},
        {Family::one_subdivision_of, "one-subdivision-of"},
    };

    auto require(bool ok, const string & what) -> void
    {
        if (! ok)
            throw std::invalid_argument(what);
    }

    auto generate_outerplanar(int n, Rng & rng) -> vector<Edge>
    {
        vector<Edge> edges;
        for (int i = 0; i + 1 < n; ++i)
            edges.emplace_back(i, i + 1);
        edges.emplace_back(0, n - 1);

        // Polygon pieces are runs lo..hi of the outer cycle closed by the
        // edge lo-hi; split each at a seeded apex until only triangles remain.
        vector<std::pair<int, int>> pending{{0, n - 1}};
        while (! pending.empty()) {
            auto [lo, hi] = pending.back();
            pending.pop_back();
            if (hi - lo < 2)
                continue;
            int apex = lo + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo - 1)));
            if (apex - lo >= 2)
                edges.emplace_back(lo, apex);
            if (hi - apex >= 2)
                edges.emplace_back(apex, hi);
            pending.emplace_back(apex, hi);
            pending.emplace_back(lo, apex);
        }
        return edges;
    }
}

auto family_name(Family f) -> string_view
{
    for (auto [fam, name] : family_names)
        if (fam == f)
            return name;
    return "?";
}

auto parse_family(string_view name) -> std::optional<Family>
{
    for (auto [fam, n] : family_names)
        if (n == name)
            return fam;
    return std::nullopt;
}

auto generate(const FamilySpec & spec) -> Graph
{
    const int n = spec.n;
    vector<Edge> edges;

    switch (spec.family) {
    case Family::path:
        require(n >= 1, "path needs n >= 1");
        for (int i = 0; i + 1 < n; ++i)
            edges.emplace_back(i, i + 1);
        return Graph(n, edges);

    case Family::cycle:
        require(n >= 3, "cycle needs n >= 3");
        for (int i = 0; i + 1 < n; ++i)
            edges.emplace_back(i, i + 1);
        edges.emplace_back(0, n - 1);
        return Graph(n, edges);

    case Family::complete:
        require(n >= 1, "complete needs n >= 1");
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                edges.emplace_back(u, v);
        return Graph(n, edges);

    case Family::complete_bipartite:
        // sides 0..m-1 and m..m+n-1
        require(spec.m >= 1 && n >= 1, "complete-bipartite needs m, n >= 1");
        for (int u = 0; u < spec.m; ++u)
            for (int v = 0; v < n; ++v)
                edges.emplace_back(u, spec.m + v);
        return Graph(spec.m + n, edges);

    case Family::random_tree: {
        require(n >= 1, "random-tree needs n >= 1");
        Rng rng(spec.seed);
        for (int v = 1; v < n; ++v)
            edges.emplace_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(v))), v);
        return Graph(n, edges);
    }

    case Family::maximal_outerplanar: {
        require(n >= 3, "maximal-outerplanar needs n >= 3");
        Rng rng(spec.seed);
        edges = generate_outerplanar(n, rng);
        return Graph(n, edges);
    }

    case Family::gnp: {
        require(n >= 0, "gnp needs n >= 0");
        require(spec.p >= 0.0 && spec.p <= 1.0, "gnp needs 0 <= p <= 1");
        Rng rng(spec.seed);
        const auto threshold = Rng::bernoulli_threshold(spec.p);
        const bool always = spec.p >= 1.0;
        if (spec.p > 0.0)
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (rng.coin(threshold, always))
                        edges.emplace_back(u, v);
        return Graph(n, edges);
    }

    case Family::one_subdivision_of:
        require(spec.base != nullptr, "one-subdivision-of needs a base family");
        return one_subdivision(generate(*spec.base));
    }
    throw std::invalid_argument("unknown family");
}

auto one_subdivision(const Graph & h) -> Graph
{
    const int n = h.num_vertices();
    auto base = h.edges();
    vector<Edge> edges;
    edges.reserve(2 * base.size());
    for (int i = 0; i < static_cast<int>(base.size()); ++i) {
        edges.emplace_back(base[i].first, n + i);
        edges.emplace_back(base[i].second, n + i);
    }
    return Graph(n + static_cast<int>(base.size()), edges);
}

// ---------------------------------------------------------------------

auto max_common_neighbors(const Graph & g) -> CommonNeighbors
{
    const int n = g.num_vertices();
    CommonNeighbors best;
    // Count paths u - w - v through every middle vertex w.
    vector<int> count(n, 0);
    vector<Vertex> touched;
    for (Vertex u = 0; u < n; ++u) {
        touched.clear();
        for (Vertex w : g.neighbors(u))
            for (Vertex v : g.neighbors(w))
                if (v > u) {
                    if (count[v]++ == 0)
                        touched.push_back(v);
                }
        std::sort(touched.begin(), touched.end());
        for (Vertex v : touched) {
            if (count[v] > best.s) {
                best.s = count[v];
                best.pair = Edge{u, v};
            }
            count[v] = 0;
        }
    }
    return best;
}

auto is_maximal_outerplanar(const Graph & g) -> OuterplanarResult
{
    using Reason = OuterplanarNo::Reason;
    const int n = g.num_vertices();
    if (n < 3)
        return OuterplanarNo{Reason::too_few_vertices, "n = " + std::to_string(n) + " < 3"};
    if (g.num_edges() != 2L * n - 3)
        return OuterplanarNo{Reason::wrong_edge_count, "m = " + std::to_string(g.num_edges()) + " != 2n-3 = " + std::to_string(2 * n - 3)};

    // A successful peel shows g is a 2-tree; a 2-tree is maximal outerplanar
    // iff no edge lies in three triangles (no K_{1,1,3}).
    for (auto [u, v] : g.edges()) {
        int common = 0;
        auto a = g.neighbors(u), b = g.neighbors(v);
        for (auto i = a.begin(), j = b.begin(); i != a.end() && j != b.end();) {
            if (*i < *j)
                ++i;
            else if (*j < *i)
                ++j;
            else {
                ++common, ++i, ++j;
            }
        }
        if (common > 2)
            return OuterplanarNo{Reason::peeling_stuck, "edge " + std::to_string(u) + "-" + std::to_string(v) + " lies in " + std::to_string(common) + " triangles"};
    }

    vector<int> deg(n);
    vector<char> alive(n, 1);
    std::priority_queue<Vertex, vector<Vertex>, std::greater<>> candidates;
    for (Vertex v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        if (deg[v] == 2)
            candidates.push(v);
    }

    OuterplanarYes yes;
    int remaining = n;
    while (remaining > 3) {
        if (candidates.empty())
            return OuterplanarNo{Reason::peeling_stuck, "no ear with " + std::to_string(remaining) + " vertices left"};
        Vertex v = candidates.top();
        candidates.pop();
        if (! alive[v] || deg[v] != 2)
            continue;
        Vertex a = -1, b = -1;
        for (Vertex w : g.neighbors(v))
            if (alive[w])
                (a < 0 ? a : b) = w;
        if (! g.adjacent(a, b))
            continue;
        alive[v] = 0;
        --remaining;
        yes.ears.push_back(v);
        for (Vertex w : {a, b})
            if (--deg[w] == 2)
                candidates.push(w);
    }

    vector<Vertex> rest;
    for (Vertex v = 0; v < n; ++v)
        if (alive[v])
            rest.push_back(v);
    if (! (g.adjacent(rest[0], rest[1]) && g.adjacent(rest[1], rest[2]) && g.adjacent(rest[0], rest[2])))
        return OuterplanarNo{Reason::peeling_stuck, "final three vertices do not form a triangle"};
    return yes;
}

}
