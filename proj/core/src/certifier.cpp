#include <hatdeg/certifier.hpp>

#include <algorithm>

using std::vector;

namespace hatdeg {

auto theorem_bound(int d) -> BigInt
{
    BigInt r = 1;
    for (int i = 0; i < d; ++i)
        r *= 2 * d;
    return r;
}

auto BudgetRule::theorem(int d) -> BudgetRule
{
    if (d < 1)
        throw std::invalid_argument("theorem rule needs d >= 1");
    BudgetRule r;
    r.kind_ = Kind::theorem;
    r.d_ = d;
    return r;
}

auto BudgetRule::outerplanar() -> BudgetRule
{
    BudgetRule r;
    r.kind_ = Kind::outerplanar;
    r.base_size_ = 3;
    return r;
}

auto BudgetRule::constant(BigInt k) -> BudgetRule
{
    if (k < 1)
        throw std::invalid_argument("budgets must be >= 1");
    BudgetRule r;
    r.kind_ = Kind::constant;
    r.fallback_ = std::move(k);
    return r;
}

auto BudgetRule::table(vector<BigInt> by_degree, std::optional<BigInt> fallback) -> BudgetRule
{
    for (const auto & b : by_degree)
        if (b < 1)
            throw std::invalid_argument("budgets must be >= 1");
    if (fallback && *fallback < 1)
        throw std::invalid_argument("budgets must be >= 1");
    BudgetRule r;
    r.kind_ = Kind::table;
    r.table_ = std::move(by_degree);
    r.fallback_ = std::move(fallback);
    return r;
}

auto BudgetRule::budget_for_degree(int degree) const -> BigInt
{
    switch (kind_) {
    case Kind::theorem:
        if (degree > d_)
            return 1;
        return boost::multiprecision::pow(BigInt(2 * d_), static_cast<unsigned>(d_ - degree));
    case Kind::outerplanar:
        // degrees below 2 only occur off the maximal-outerplanar path
        return degree <= 2 ? 4 : degree == 3 ? 2 : 1;
    case Kind::constant:
        return *fallback_;
    case Kind::table:
        if (degree < static_cast<int>(table_.size()))
            return table_[degree];
        if (fallback_)
            return *fallback_;
        throw CertificateError("budget table has no entry for degree " + std::to_string(degree));
    }
    return 1;
}

auto BudgetRule::name() const -> std::string
{
    switch (kind_) {
    case Kind::theorem: return "theorem(" + std::to_string(d_) + ")";
    case Kind::outerplanar: return "outerplanar";
    case Kind::constant: return "constant(" + fallback_->str() + ")";
    case Kind::table: return "table";
    }
    return "?";
}

auto budgets_from_rule(const Graph & g, std::span<const char> alive, const BudgetRule & rule) -> GuessBudget
{
    GuessBudget result;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (! alive[v])
            continue;
        int deg = 0;
        for (Vertex w : g.neighbors(v))
            deg += alive[w] ? 1 : 0;
        result.emplace(v, rule.budget_for_degree(deg));
    }
    return result;
}

namespace {
    auto step_lhs(const BigInt & g_v, const BigInt & q, std::span<const BigInt> g_w, std::span<const BigInt> g_next_w) -> Rational
    {
        Rational lhs(g_v, q);
        for (std::size_t i = 0; i < g_w.size(); ++i)
            lhs += Rational(g_w[i], g_next_w[i] + 1);
        return lhs;
    }

    auto lookup(const GuessBudget & b, Vertex v, const char * which) -> const BigInt &
    {
        auto it = b.find(v);
        if (it == b.end())
            throw CertificateError(std::string(which) + " has no budget for vertex " + std::to_string(v));
        if (it->second < 1)
            throw CertificateError(std::string(which) + " budget of vertex " + std::to_string(v) + " is not positive");
        return it->second;
    }

    // Residual graph with degrees and per-vertex rule budgets.
    struct Residual {
        const Graph & g;
        const BudgetRule & rule;
        vector<char> alive;
        vector<int> deg;
        vector<BigInt> budget;
        int remaining;

        Residual(const Graph & graph, const BudgetRule & r) :
            g(graph), rule(r), alive(graph.num_vertices(), 1), deg(graph.num_vertices()), budget(graph.num_vertices()), remaining(graph.num_vertices())
        {
            for (Vertex v = 0; v < g.num_vertices(); ++v) {
                deg[v] = g.degree(v);
                budget[v] = rule.budget_for_degree(deg[v]);
            }
        }

        auto live_neighbors(Vertex v) const -> vector<Vertex>
        {
            vector<Vertex> r;
            for (Vertex w : g.neighbors(v))
                if (alive[w])
                    r.push_back(w);
            return r;
        }

        auto make_step(Vertex v, const BigInt & q) const -> CertificateStep
        {
            CertificateStep s{.v = v, .neighbors = live_neighbors(v)};
            s.g.emplace(v, budget[v]);
            vector<BigInt> before, after;
            for (Vertex w : s.neighbors) {
                before.push_back(budget[w]);
                after.push_back(rule.budget_for_degree(deg[w] - 1));
                s.g.emplace(w, before.back());
                s.g_next.emplace(w, after.back());
            }
            s.lhs = step_lhs(budget[v], q, before, after);
            return s;
        }

        auto apply(const CertificateStep & s) -> void
        {
            alive[s.v] = 0;
            --remaining;
            for (const auto & [w, b] : s.g_next) {
                --deg[w];
                budget[w] = b;
            }
        }

        auto make_base(const BigInt & q) const -> CertificateBase
        {
            CertificateBase base;
            base.lhs = 0;
            for (Vertex v = 0; v < g.num_vertices(); ++v)
                if (alive[v]) {
                    base.vertices.push_back(v);
                    base.g.emplace(v, budget[v]);
                    base.lhs += Rational(budget[v], q);
                }
            return base;
        }
    };
}

auto ReductionCertificate::worst_lhs() const -> Rational
{
    Rational worst = 0;
    for (const auto & s : steps)
        worst = std::max(worst, s.lhs);
    if (base)
        worst = std::max(worst, base->lhs);
    return worst;
}

auto check_reduction_step(const Graph & g, std::span<const char> alive, Vertex v, const GuessBudget & budget,
    const GuessBudget & budget_next, const BigInt & q) -> StepReport
{
    if (q < 1)
        throw CertificateError("q must be positive");
    if (v < 0 || v >= g.num_vertices() || ! alive[v])
        throw CertificateError("vertex " + std::to_string(v) + " is not in the residual graph");

    vector<char> near(g.num_vertices(), 0);
    near[v] = 1;
    for (Vertex w : g.neighbors(v))
        near[w] = 1;

    for (Vertex x = 0; x < g.num_vertices(); ++x) {
        if (! alive[x])
            continue;
        const auto & gx = lookup(budget, x, "g");
        if (x == v)
            continue;
        const auto & nx = lookup(budget_next, x, "g'");
        if (! near[x] && nx != gx)
            throw CertificateError("g' differs from g at vertex " + std::to_string(x) + " outside N(v)");
    }

    vector<BigInt> before, after;
    for (Vertex w : g.neighbors(v))
        if (alive[w]) {
            before.push_back(budget.at(w));
            after.push_back(budget_next.at(w));
        }
    StepReport r;
    r.lhs = step_lhs(budget.at(v), q, before, after);
    r.pass = r.lhs < 1;
    return r;
}

auto certify(const Graph & g, const BudgetRule & rule, const BigInt & q, std::span<const Vertex> order) -> CertificationResult
{
    const int n = g.num_vertices();
    if (q < 1)
        throw CertificateError("q must be positive");
    if (! order.empty()) {
        vector<Vertex> sorted(order.begin(), order.end());
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < static_cast<int>(sorted.size()); ++i)
            if (sorted[i] != i || static_cast<int>(sorted.size()) != n)
                throw CertificateError("order is not a permutation of the vertices");
    }

    Residual res(g, rule);
    ReductionCertificate cert{.q = q};
    for (Vertex v = 0; v < n; ++v)
        cert.budget.emplace(v, res.budget[v]);

    const bool given = ! order.empty();
    for (int stage = 0; res.remaining > 0; ++stage) {
        if (rule.base_size() > 0 && res.remaining <= rule.base_size()) {
            auto base = res.make_base(q);
            if (base.lhs >= 1)
                return CertificationFailure{stage, std::nullopt, base.lhs, "union bound on the final " + std::to_string(res.remaining) + " vertices is not < 1"};
            cert.base = std::move(base);
            break;
        }

        if (given) {
            auto step = res.make_step(order[stage], q);
            if (step.lhs >= 1)
                return CertificationFailure{stage, step.v, step.lhs, "step at vertex " + std::to_string(step.v) + " has LHS >= 1"};
            res.apply(step);
            cert.steps.push_back(std::move(step));
            continue;
        }

        std::optional<CertificateStep> chosen;
        std::optional<Rational> best;
        for (Vertex v = 0; v < n && ! chosen; ++v) {
            if (! res.alive[v])
                continue;
            auto step = res.make_step(v, q);
            if (! best || step.lhs < *best)
                best = step.lhs;
            if (step.lhs < 1)
                chosen = std::move(step);
        }
        if (! chosen)
            return CertificationFailure{stage, std::nullopt, *best, "no vertex gives a passing step with " + std::to_string(res.remaining) + " vertices left"};
        res.apply(*chosen);
        cert.steps.push_back(std::move(*chosen));
    }
    return cert;
}

auto certify_theorem_bound(const Graph & g) -> ReductionCertificate
{
    auto sd = strong_degeneracy(g);
    auto order = sd.order.vertices();
    auto r = certify(g, BudgetRule::theorem(sd.d), theorem_bound(sd.d) + 1, order);
    if (auto * f = std::get_if<CertificationFailure>(&r))
        throw std::logic_error("theorem chain failed at d = " + std::to_string(sd.d) + ": " + f->message);
    return std::get<ReductionCertificate>(std::move(r));
}

auto certify_outerplanar(const Graph & g) -> ReductionCertificate
{
    auto recognised = is_maximal_outerplanar(g);
    if (auto * no = std::get_if<OuterplanarNo>(&recognised))
        throw CertificateError("not maximal outerplanar: " + no->detail);

    const auto rule = BudgetRule::outerplanar();
    const BigInt q = 41;
    Residual res(g, rule);
    ReductionCertificate cert{.q = q};
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        cert.budget.emplace(v, res.budget[v]);

    while (res.remaining > 3) {
        std::optional<CertificateStep> chosen;
        for (Vertex v = 0; v < g.num_vertices() && ! chosen; ++v) {
            if (! res.alive[v] || res.deg[v] != 2)
                continue;
            auto step = res.make_step(v, q);
            if (step.lhs < 1)
                chosen = std::move(step);
        }
        if (! chosen)
            throw std::logic_error("no ear gives a passing step with " + std::to_string(res.remaining) + " vertices left");
        res.apply(*chosen);
        cert.steps.push_back(std::move(*chosen));
    }

    auto base = res.make_base(q);
    if (base.lhs >= 1)
        throw std::logic_error("union bound on the final triangle failed");
    cert.base = std::move(base);
    return cert;
}

}
