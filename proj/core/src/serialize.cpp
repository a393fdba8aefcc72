#include <hatdeg/serialize.hpp>

#include <limits>

namespace hatdeg {

auto bigint_to_json(const BigInt & x) -> Json
{
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(x);
    return x.str();
}

auto bigint_from_json(const Json & j) -> BigInt
{
    if (j.is_number_integer())
        return BigInt(j.get<std::int64_t>());
    if (j.is_string()) {
        const auto & s = j.get_ref<const std::string &>();
        auto digits = s.substr(! s.empty() && s[0] == '-' ? 1 : 0);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("not an integer: \"" + s + "\"");
        return BigInt(s);
    }
    throw std::invalid_argument("expected an integer, got " + j.dump());
}

auto rational_to_json(const Rational & x) -> Json
{
    return {{"num", boost::multiprecision::numerator(x).str()}, {"den", boost::multiprecision::denominator(x).str()}};
}

auto rational_from_json(const Json & j) -> Rational
{
    BigInt den = bigint_from_json(j.at("den"));
    if (den == 0)
        throw std::invalid_argument("zero denominator");
    return Rational(bigint_from_json(j.at("num")), den);
}

auto budget_to_json(const GuessBudget & b) -> Json
{
    Json j = Json::object();
    for (const auto & [v, g] : b)
        j[std::to_string(v)] = bigint_to_json(g);
    return j;
}

auto budget_from_json(const Json & j) -> GuessBudget
{
    GuessBudget b;
    for (const auto & [key, value] : j.items())
        b.emplace(std::stoi(key), bigint_from_json(value));
    return b;
}

// --- elimination ---------------------------------------------------------

void to_json(Json & j, const EliminationOrder & o)
{
    Json steps = Json::array();
    for (const auto & s : o.steps)
        steps.push_back({{"v", s.v}, {"neighbors", s.neighbors}, {"neighbor_degrees", s.neighbor_degrees}});
    j = {{"d", o.d}, {"steps", std::move(steps)}};
}

void from_json(const Json & j, EliminationOrder & o)
{
    o.d = j.at("d").get<int>();
    o.steps.clear();
    for (const auto & s : j.at("steps"))
        o.steps.push_back({s.at("v").get<Vertex>(), s.at("neighbors").get<std::vector<Vertex>>(), s.at("neighbor_degrees").get<std::vector<int>>()});
}

void to_json(Json & j, const StuckSubgraph & s) { j = {{"d", s.d}, {"stuck", s.vertices}}; }

void to_json(Json & j, const StrongDegeneracy & s) { j = {{"d", s.d}, {"order", s.order}}; }

void to_json(Json & j, const ObstructionWitness & w)
{
    if (auto * b = std::get_if<BipartiteWitness>(&w)) {
        j = {{"kind", "bipartite"}, {"left", b->left}, {"right", b->right}, {"common", b->common}, {"s", b->common.size()}};
        return;
    }
    const auto & s = std::get<SubdivisionWitness>(w);
    Json edges = Json::array();
    for (auto [u, v] : s.edges)
        edges.push_back({u, v});
    j = {{"kind", "subdivision"}, {"min_degree", s.min_degree}, {"branch", s.branch}, {"edges", std::move(edges)}, {"middles", s.middles}};
}

void from_json(const Json & j, ObstructionWitness & w)
{
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "bipartite") {
        w = BipartiteWitness{j.at("left").get<Vertex>(), j.at("right").get<Vertex>(), j.at("common").get<std::vector<Vertex>>()};
        return;
    }
    if (kind != "subdivision")
        throw std::invalid_argument("unknown witness kind " + kind);
    SubdivisionWitness s;
    s.min_degree = j.at("min_degree").get<int>();
    s.branch = j.at("branch").get<std::vector<Vertex>>();
    for (const auto & e : j.at("edges"))
        s.edges.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
    s.middles = j.at("middles").get<std::vector<Vertex>>();
    w = std::move(s);
}

// --- certifier -----------------------------------------------------------

void to_json(Json & j, const ReductionCertificate & c)
{
    Json steps = Json::array();
    for (const auto & s : c.steps)
        steps.push_back({{"v", s.v}, {"neighbors", s.neighbors}, {"g", budget_to_json(s.g)}, {"g_next", budget_to_json(s.g_next)}, {"lhs", rational_to_json(s.lhs)}});
    j = {{"q", bigint_to_json(c.q)}, {"bound", bigint_to_json(c.bound())}, {"budget", budget_to_json(c.budget)}, {"steps", std::move(steps)}};
    if (c.base)
        j["base"] = {{"vertices", c.base->vertices}, {"g", budget_to_json(c.base->g)}, {"lhs", rational_to_json(c.base->lhs)}};
}

void from_json(const Json & j, ReductionCertificate & c)
{
    c.q = bigint_from_json(j.at("q"));
    c.budget = j.contains("budget") ? budget_from_json(j.at("budget")) : GuessBudget{};
    c.steps.clear();
    for (const auto & s : j.at("steps"))
        c.steps.push_back({s.at("v").get<Vertex>(), s.at("neighbors").get<std::vector<Vertex>>(), budget_from_json(s.at("g")), budget_from_json(s.at("g_next")),
            rational_from_json(s.at("lhs"))});
    c.base.reset();
    if (j.contains("base")) {
        const auto & b = j.at("base");
        c.base = CertificateBase{b.at("vertices").get<std::vector<Vertex>>(), budget_from_json(b.at("g")), rational_from_json(b.at("lhs"))};
    }
}

void to_json(Json & j, const CertificationFailure & f)
{
    j = {{"stage", f.stage}, {"best_lhs", rational_to_json(f.best_lhs)}, {"message", f.message}};
    j["vertex"] = f.vertex ? Json(*f.vertex) : Json(nullptr);
}

// --- exact game ----------------------------------------------------------

void to_json(Json & j, const StrategyTable & s) { j = {{"q", s.q}, {"guesses", s.guesses}}; }

void from_json(const Json & j, StrategyTable & s)
{
    s.q = j.at("q").get<int>();
    s.guesses = j.at("guesses").get<std::vector<std::vector<std::vector<Colour>>>>();
}

void to_json(Json & j, const SearchStats & s) { j = {{"nodes", s.nodes}, {"propagations", s.propagations}, {"seconds", s.seconds}}; }

void to_json(Json & j, const GameOutcome & o)
{
    j = {{"winnable", o.winnable}, {"stats", o.stats}};
    if (o.strategy)
        j["strategy"] = *o.strategy;
}

// --- density -------------------------------------------------------------

namespace {
    auto edges_to_json(const std::vector<Edge> & edges) -> Json
    {
        Json r = Json::array();
        for (auto [u, v] : edges)
            r.push_back({u, v});
        return r;
    }

    auto edges_from_json(const Json & j) -> std::vector<Edge>
    {
        std::vector<Edge> r;
        for (const auto & e : j)
            r.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
        return r;
    }
}

void to_json(Json & j, const TopologicalModel & m)
{
    j = {{"branch", m.branch}, {"direct", edges_to_json(m.direct)}, {"subdivided", edges_to_json(m.subdivided)}, {"middles", m.middles}};
}

void from_json(const Json & j, TopologicalModel & m)
{
    m.branch = j.at("branch").get<std::vector<Vertex>>();
    m.direct = edges_from_json(j.at("direct"));
    m.subdivided = edges_from_json(j.at("subdivided"));
    m.middles = j.at("middles").get<std::vector<Vertex>>();
}

void to_json(Json & j, const ContractionModel & m) { j = {{"sets", m.sets}, {"centres", m.centres}, {"minor_edges", edges_to_json(m.minor_edges)}}; }

void from_json(const Json & j, ContractionModel & m)
{
    m.sets = j.at("sets").get<std::vector<std::vector<Vertex>>>();
    m.centres = j.at("centres").get<std::vector<Vertex>>();
    m.minor_edges = edges_from_json(j.at("minor_edges"));
}

void to_json(Json & j, const Density & d)
{
    j = {{"value", rational_to_json(d.value)}};
    if (d.topological)
        j["topological"] = *d.topological;
    else if (d.contraction)
        j["contraction"] = *d.contraction;
    else
        j["subgraph"] = d.subgraph;
}

void from_json(const Json & j, Density & d)
{
    d.value = rational_from_json(j.at("value"));
    d.subgraph = j.contains("subgraph") ? j.at("subgraph").get<std::vector<Vertex>>() : std::vector<Vertex>{};
    d.topological.reset();
    d.contraction.reset();
    if (j.contains("topological"))
        d.topological = j.at("topological").get<TopologicalModel>();
    if (j.contains("contraction"))
        d.contraction = j.at("contraction").get<ContractionModel>();
}

}
