#include "cli.hpp"

#include <hatdeg/certifier.hpp>
#include <hatdeg/density.hpp>
#include <hatdeg/elimination.hpp>
#include <hatdeg/exact_game.hpp>
#include <hatdeg/graph.hpp>
#include <hatdeg/serialize.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace hatdeg::cli {

namespace {
    // Bad input that should map to the usage exit code.
    class UsageError : public std::runtime_error {
      public:
        using std::runtime_error::runtime_error;
    };

    auto read_file(const std::string & path) -> std::string
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw UsageError("cannot read " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    auto load_graph(const std::string & path) -> Graph
    {
        try {
            return parse_edge_list(read_file(path));
        }
        catch (const ParseError & e) {
            throw UsageError(path + ": " + e.what());
        }
    }

    auto join(const std::vector<Vertex> & xs) -> std::string
    {
        std::string r;
        for (std::size_t i = 0; i < xs.size(); ++i)
            r += (i ? " " : "") + std::to_string(xs[i]);
        return r;
    }

    auto show(const Rational & r) -> std::string
    {
        auto den = boost::multiprecision::denominator(r);
        if (den == 1)
            return boost::multiprecision::numerator(r).str();
        return boost::multiprecision::numerator(r).str() + "/" + den.str();
    }

    auto read_ints(const std::string & text) -> std::vector<long long>
    {
        std::string spaced = text;
        std::replace(spaced.begin(), spaced.end(), ',', ' ');
        std::istringstream in(spaced);
        std::vector<long long> r;
        std::string tok;
        while (in >> tok) {
            std::size_t used = 0;
            long long x = 0;
            try {
                x = std::stoll(tok, &used);
            }
            catch (const std::exception &) {
                used = 0;
            }
            if (used != tok.size())
                throw UsageError("not an integer: " + tok);
            r.push_back(x);
        }
        return r;
    }

    // --budgets: "1,2,1", "all:K" or a file of integers.
    auto parse_budgets(const std::string & spec, int n) -> std::vector<int>
    {
        if (spec.empty())
            return unit_budgets(n);
        std::vector<long long> raw;
        if (spec.rfind("all:", 0) == 0) {
            auto k = read_ints(spec.substr(4));
            if (k.size() != 1)
                throw UsageError("--budgets all:K needs one integer");
            raw.assign(n, k[0]);
        }
        else if (spec.find_first_not_of("0123456789, ") == std::string::npos)
            raw = read_ints(spec);
        else
            raw = read_ints(read_file(spec));
        if (static_cast<int>(raw.size()) != n)
            throw UsageError("need " + std::to_string(n) + " budgets, got " + std::to_string(raw.size()));
        std::vector<int> b;
        for (auto x : raw) {
            if (x < 1 || x > 1'000'000)
                throw UsageError("budgets must be positive");
            b.push_back(static_cast<int>(x));
        }
        return b;
    }

    void print_json(std::ostream & out, const Json & j) { out << j.dump(2) << '\n'; }

    // ------------------------------------------------------------------

    struct GenArgs {
        std::string family, base;
        int n = 0, m = 0;
        double p = 0;
        std::optional<std::uint64_t> seed;
        std::string out;
    };

    auto build_spec(const std::string & name, const GenArgs & a) -> FamilySpec
    {
        auto family = parse_family(name);
        if (! family)
            throw UsageError("unknown family " + name);
        auto need_seed = [&] {
            if (! a.seed)
                throw UsageError("family " + name + " is random and needs --seed");
            return *a.seed;
        };
        switch (*family) {
        case Family::path: return FamilySpec::path(a.n);
        case Family::cycle: return FamilySpec::cycle(a.n);
        case Family::complete: return FamilySpec::complete(a.n);
        case Family::complete_bipartite: return FamilySpec::complete_bipartite(a.m, a.n);
        case Family::random_tree: return FamilySpec::random_tree(a.n, need_seed());
        case Family::maximal_outerplanar: return FamilySpec::maximal_outerplanar(a.n, need_seed());
        case Family::gnp: return FamilySpec::gnp(a.n, a.p, need_seed());
        case Family::one_subdivision_of:
            if (a.base.empty() || a.base == name)
                throw UsageError("one-subdivision-of needs --base FAMILY");
            return FamilySpec::one_subdivision_of(build_spec(a.base, a));
        }
        throw UsageError("unknown family " + name);
    }

    auto cmd_gen(const GenArgs & a, std::ostream & out) -> int
    {
        Graph g;
        try {
            g = generate(build_spec(a.family, a));
        }
        catch (const std::invalid_argument & e) {
            throw UsageError(e.what());
        }
        auto text = to_edge_list(g);
        if (a.out.empty())
            out << text;
        else {
            std::ofstream f(a.out);
            if (! f)
                throw UsageError("cannot write " + a.out);
            f << text;
        }
        return ok;
    }

    auto cmd_strongdeg(const std::string & in, bool json, std::ostream & out) -> int
    {
        auto g = load_graph(in);
        auto sd = strong_degeneracy(g);
        if (json)
            print_json(out, sd);
        else
            out << "strong degeneracy: " << sd.d << "\norder: " << join(sd.order.vertices()) << '\n';
        return ok;
    }

    auto cmd_degeneracy(const std::string & in, bool json, std::ostream & out) -> int
    {
        auto g = load_graph(in);
        int d = degeneracy(g);
        if (json)
            print_json(out, {{"degeneracy", d}});
        else
            out << "degeneracy: " << d << '\n';
        return ok;
    }

    struct CertifyArgs {
        std::string in, schedule = "theorem", q, order = "auto", out;
        int d = 0;
        bool json = false;
    };

    auto schedule_from_file(const std::string & path) -> BudgetRule
    {
        Json j;
        try {
            j = Json::parse(read_file(path));
            if (j.contains("constant"))
                return BudgetRule::constant(bigint_from_json(j.at("constant")));
            std::vector<BigInt> table;
            for (const auto & x : j.at("by_degree"))
                table.push_back(bigint_from_json(x));
            std::optional<BigInt> fallback;
            if (j.contains("fallback"))
                fallback = bigint_from_json(j.at("fallback"));
            return BudgetRule::table(std::move(table), std::move(fallback));
        }
        catch (const UsageError &) {
            throw;
        }
        catch (const std::exception & e) {
            throw UsageError("bad schedule file " + path + ": " + e.what());
        }
    }

    auto cmd_certify(const CertifyArgs & a, std::ostream & out) -> int
    {
        auto g = load_graph(a.in);
        std::optional<BigInt> q;
        if (! a.q.empty()) {
            try {
                q = BigInt(a.q);
            }
            catch (const std::exception &) {
                throw UsageError("--q must be an integer");
            }
            if (*q < 1)
                throw UsageError("--q must be positive");
        }

        std::vector<Vertex> order;
        if (a.order != "auto") {
            for (auto v : read_ints(read_file(a.order.rfind("file:", 0) == 0 ? a.order.substr(5) : a.order)))
                order.push_back(static_cast<Vertex>(v));
            if (static_cast<int>(order.size()) != g.num_vertices())
                throw UsageError("order file must list every vertex once");
        }

        CertificationResult result;
        std::string schedule_name;
        try {
            if (a.schedule == "theorem") {
                int d = a.d > 0 ? a.d : strong_degeneracy(g).d;
                schedule_name = BudgetRule::theorem(d).name();
                if (! q && a.d == 0 && order.empty())
                    result = certify_theorem_bound(g);
                else {
                    if (order.empty() && a.order == "auto" && ! q) {
                        auto sd = strong_elimination(g, d);
                        if (auto * o = std::get_if<EliminationOrder>(&sd))
                            order = o->vertices();
                    }
                    result = certify(g, BudgetRule::theorem(d), q ? *q : theorem_bound(d) + 1, order);
                }
            }
            else if (a.schedule == "outerplanar") {
                schedule_name = "outerplanar";
                if (! q && order.empty())
                    result = certify_outerplanar(g);
                else
                    result = certify(g, BudgetRule::outerplanar(), q ? *q : BigInt(41), order);
            }
            else if (a.schedule.rfind("file:", 0) == 0) {
                if (! q)
                    throw UsageError("--q is required with a schedule file");
                auto rule = schedule_from_file(a.schedule.substr(5));
                schedule_name = rule.name();
                result = certify(g, rule, *q, order);
            }
            else
                throw UsageError("--schedule must be theorem, outerplanar or file:PATH");
        }
        catch (const CertificateError & e) {
            throw UsageError(e.what());
        }

        if (auto * f = std::get_if<CertificationFailure>(&result)) {
            if (a.json)
                print_json(out, {{"certified", false}, {"schedule", schedule_name}, {"failure", *f}});
            else
                out << "certification failed at stage " << f->stage << ": " << f->message << "\nbest lhs: " << show(f->best_lhs) << '\n';
            return failure;
        }
        const auto & cert = std::get<ReductionCertificate>(result);
        Json j = cert;
        if (! a.out.empty()) {
            std::ofstream f(a.out);
            if (! f)
                throw UsageError("cannot write " + a.out);
            f << j.dump(2) << '\n';
        }
        if (a.json)
            print_json(out, j);
        else
            out << "schedule: " << schedule_name << "\nq: " << cert.q << "\nbound: " << cert.bound() << "\nsteps: " << cert.steps.size()
                << (cert.base ? " + base of " + std::to_string(cert.base->vertices.size()) : std::string()) << "\nworst lhs: " << show(cert.worst_lhs()) << '\n';
        return ok;
    }

    auto cmd_check_certificate(const std::string & in, const std::string & cert_path, bool json, std::ostream & out) -> int
    {
        auto g = load_graph(in);
        auto text = read_file(cert_path);
        try {
            auto checked = check_certificate(g, text);
            if (json)
                print_json(out, {{"valid", true}, {"bound", bigint_to_json(checked.bound)}, {"budget", budget_to_json(checked.budget)}});
            else
                out << "certificate valid\nbound: " << checked.bound << '\n';
            return ok;
        }
        catch (const CertificateError & e) {
            if (json)
                print_json(out, {{"valid", false}, {"reason", e.what()}});
            else
                out << e.what() << '\n';
            return failure;
        }
    }

    struct ExactArgs {
        std::string in, budgets, strategy_out;
        int qmax = 0, threads = 1;
        std::int64_t guard = 100000;
        bool json = false;
    };

    auto cmd_exact(const ExactArgs & a, std::ostream & out) -> int
    {
        auto g = load_graph(a.in);
        auto budgets = parse_budgets(a.budgets, g.num_vertices());
        SolverOptions options{.threads = a.threads, .scale_guard = a.guard};

        int value = 0;
        std::optional<StrategyTable> witness;
        SearchStats stats;
        bool capped = true;
        for (int q = 1; q <= a.qmax; ++q) {
            auto r = decide_winnable(g, budgets, q, options);
            stats.nodes += r.stats.nodes;
            stats.propagations += r.stats.propagations;
            stats.seconds += r.stats.seconds;
            if (! r.winnable) {
                capped = false;
                break;
            }
            value = q;
            witness = std::move(r.strategy);
        }

        if (! a.strategy_out.empty() && witness) {
            std::ofstream f(a.strategy_out);
            if (! f)
                throw UsageError("cannot write " + a.strategy_out);
            f << Json(*witness).dump() << '\n';
        }
        if (a.json) {
            Json j{{"value", value}, {"at_least", capped}, {"q_max", a.qmax}, {"stats", stats}};
            if (witness)
                j["strategy"] = *witness;
            print_json(out, j);
        }
        else
            out << "HG " << (capped ? ">= " : "= ") << value << "\nnodes: " << stats.nodes << "\nseconds: " << std::fixed << std::setprecision(3) << stats.seconds
                << '\n';
        return ok;
    }

    auto cmd_verify_strategy(const std::string & in, const std::string & strategy, const std::string & budget_spec, bool json, std::ostream & out) -> int
    {
        auto g = load_graph(in);
        StrategyTable table;
        try {
            table = Json::parse(read_file(strategy)).get<StrategyTable>();
        }
        catch (const UsageError &) {
            throw;
        }
        catch (const std::exception & e) {
            throw UsageError("bad strategy file: " + std::string(e.what()));
        }
        auto budgets = parse_budgets(budget_spec, g.num_vertices());
        VerifyResult r;
        try {
            r = verify_strategy(g, budgets, table.q, table);
        }
        catch (const MalformedStrategy & e) {
            throw UsageError(std::string("malformed strategy: ") + e.what());
        }
        if (std::holds_alternative<Winning>(r)) {
            if (json)
                print_json(out, {{"winning", true}});
            else
                out << "winning\n";
            return ok;
        }
        const auto & mean = std::get<MeanColouring>(r).colours;
        if (json)
            print_json(out, {{"winning", false}, {"mean_colouring", mean}});
        else
            out << "mean colouring: " << join(mean) << '\n';
        return failure;
    }

    auto cmd_density(const std::string & in, const std::string & depth, int threads, int guard, bool json, std::ostream & out) -> int
    {
        auto g = load_graph(in);
        DensityOptions options{.threads = threads, .scale_guard = guard};
        Density d;
        if (depth == "0")
            d = max_subgraph_density(g);
        else if (depth == "half" || depth == "1/2")
            d = topgrad_half(g, options);
        else if (depth == "1")
            d = grad_one(g, options);
        else
            throw UsageError("--depth must be 0, half or 1");
        if (json) {
            print_json(out, d);
            return ok;
        }
        out << "density: " << show(d.value) << '\n';
        if (d.topological) {
            out << "branch: " << join(d.topological->branch) << "\ndirect edges: " << d.topological->direct.size() << "\nsubdivided edges: " << d.topological->subdivided.size()
                << '\n';
            for (std::size_t i = 0; i < d.topological->subdivided.size(); ++i)
                out << "  " << d.topological->subdivided[i].first << " -" << d.topological->middles[i] << "- " << d.topological->subdivided[i].second << '\n';
        }
        else if (d.contraction) {
            for (std::size_t i = 0; i < d.contraction->sets.size(); ++i)
                out << "set " << i << " (centre " << d.contraction->centres[i] << "): " << join(d.contraction->sets[i]) << '\n';
            out << "minor edges: " << d.contraction->minor_edges.size() << '\n';
        }
        else
            out << "subgraph: " << join(d.subgraph) << '\n';
        return ok;
    }

    struct BoundsArgs {
        std::string prop, t0, th, g1, in;
        int s = 0, t = 0;
        double c = 0;
        bool minor_free = false, subdivision_free = false, json = false;
    };

    auto cmd_bounds(const BoundsArgs & a, std::ostream & out) -> int
    {
        if (a.s < 2)
            throw UsageError("--s must be >= 2");
        auto rational = [](const std::string & text, const char * flag) {
            try {
                return parse_rational(text);
            }
            catch (const std::exception &) {
                throw UsageError(std::string(flag) + " must be a rational like 3/2");
            }
        };

        Json j{{"s", a.s}};
        std::string line;
        if (a.minor_free || a.subdivision_free) {
            if (a.t < 2 || ! (a.c > 0))
                throw UsageError("--t >= 2 and --C > 0 are required");
            long long d = a.minor_free ? strongdeg_bound_minor_free(a.s, a.t, a.c) : strongdeg_bound_subdivision_free(a.s, a.t, a.c);
            j.update({{"class", a.minor_free ? "no K_t minor" : "no K_t subdivision"}, {"t", a.t}, {"C", a.c}, {"d", d},
                {"note", "the density constant C is supplied by the caller; the result is only as good as C"}});
            line = "d = " + std::to_string(d) + "  (depends on the supplied constant C = " + std::to_string(a.c) + ")";
        }
        else if (a.prop == "31") {
            Rational t0, th;
            if (! a.in.empty()) {
                auto g = load_graph(a.in);
                t0 = max_subgraph_density(g).value;
                th = topgrad_half(g).value;
            }
            else {
                if (a.t0.empty() || a.th.empty())
                    throw UsageError("--prop 31 needs --t0 and --th, or --in");
                t0 = rational(a.t0, "--t0");
                th = rational(a.th, "--th");
            }
            if (th < t0)
                throw UsageError("--th must be >= --t0");
            auto d = strongdeg_bound_from_topgrads(a.s, t0, th);
            j.update({{"prop", "31"}, {"t0", rational_to_json(t0)}, {"th", rational_to_json(th)}, {"d", bigint_to_json(d)}});
            line = "t0 = " + show(t0) + ", th = " + show(th) + "\nd = " + d.str();
        }
        else if (a.prop == "32") {
            Rational g1;
            if (! a.in.empty())
                g1 = grad_one(load_graph(a.in)).value;
            else {
                if (a.g1.empty())
                    throw UsageError("--prop 32 needs --g1, or --in");
                g1 = rational(a.g1, "--g1");
            }
            if (g1 < 0)
                throw UsageError("--g1 must be >= 0");
            auto d = strongdeg_bound_from_grad1(a.s, g1);
            j.update({{"prop", "32"}, {"g1", rational_to_json(g1)}, {"d", bigint_to_json(d)}});
            line = "g1 = " + show(g1) + "\nd = " + d.str();
        }
        else
            throw UsageError("choose --prop 31, --prop 32, --minor-free or --subdivision-free");

        if (a.json)
            print_json(out, j);
        else
            out << line << '\n';
        return ok;
    }

    auto cmd_obstruction(const std::string & in, int d, bool json, std::ostream & out) -> int
    {
        if (d < 1)
            throw UsageError("--d must be >= 1");
        auto g = load_graph(in);
        auto w = find_obstruction(g, d);
        if (! w) {
            if (json)
                print_json(out, {{"d", d}, {"strongly_degenerate", true}});
            else
                out << "strongly " << d << "-degenerate: no obstruction\n";
            return ok;
        }
        if (json) {
            print_json(out, {{"d", d}, {"strongly_degenerate", false}, {"witness", *w}});
            return ok;
        }
        if (auto * b = std::get_if<BipartiteWitness>(&*w))
            out << "K_{2," << b->common.size() << "}: centres " << b->left << " " << b->right << "; common " << join(b->common) << '\n';
        else {
            const auto & s = std::get<SubdivisionWitness>(*w);
            out << "1-subdivision of a graph with minimum degree " << s.min_degree << " on " << s.branch.size() << " branch vertices\nbranch: " << join(s.branch) << '\n';
            for (std::size_t i = 0; i < s.edges.size(); ++i) {
                out << "  " << s.edges[i].first;
                if (s.middles[i] >= 0)
                    out << " -" << s.middles[i] << "- ";
                else
                    out << " -- ";
                out << s.edges[i].second << '\n';
            }
        }
        return ok;
    }

    struct ExperimentArgs {
        int n = 0, trials = 0;
        std::string c;
        std::optional<std::uint64_t> seed;
        std::string csv;
        bool json = false;
    };

    auto cmd_experiment(const ExperimentArgs & a, std::ostream & out) -> int
    {
        if (! a.seed)
            throw UsageError("experiment-random needs --seed");
        if (a.n < 5 || a.trials < 1)
            throw UsageError("need --n >= 5 and --trials >= 1");
        double c = 0;
        try {
            c = static_cast<double>(parse_rational(a.c));
        }
        catch (const std::exception &) {
            throw UsageError("--C must be a non-negative number");
        }
        if (c < 0 || c > a.n)
            throw UsageError("--C must lie in [0, n]");
        auto report = random_experiment(a.n, c, a.trials, *a.seed);

        if (! a.csv.empty()) {
            auto text = experiment_csv(report);
            if (a.csv == "-")
                out << text;
            else {
                std::ofstream f(a.csv);
                if (! f)
                    throw UsageError("cannot write " + a.csv);
                f << text;
            }
            if (a.csv == "-")
                return ok;
        }
        if (a.json) {
            Json rows = Json::array();
            for (const auto & r : report.rows)
                rows.push_back({{"seed", r.seed}, {"n", r.n}, {"m", r.m}, {"max_common_neighbors", r.max_common}, {"k23_free", r.k23_free},
                    {"strong_degeneracy", r.strong_degeneracy}, {"hg_bound", bigint_to_json(r.hg_bound)}});
            print_json(out, {{"config", {{"n", report.n}, {"C", report.c}, {"p", report.c / report.n}, {"trials", report.trials}, {"seed", report.seed}}},
                                {"rows", rows},
                                {"aggregates",
                                    {{"k23_free_fraction", report.free_fraction}, {"markov_bound", report.markov_bound}, {"min_d", report.min_d}, {"max_d", report.max_d},
                                        {"median_d", report.median_d}}}});
            return ok;
        }
        out << "G(n, C/n) with n = " << report.n << ", C = " << report.c << ", " << report.trials << " trials from seed " << report.seed << "\n";
        out << std::left << std::setw(22) << "seed" << std::setw(10) << "m" << std::setw(8) << "s" << std::setw(10) << "K23-free" << std::setw(6) << "d"
            << "bound\n";
        for (const auto & r : report.rows)
            out << std::setw(22) << r.seed << std::setw(10) << r.m << std::setw(8) << r.max_common << std::setw(10) << (r.k23_free ? "yes" : "no") << std::setw(6)
                << r.strong_degeneracy << r.hg_bound << '\n';
        out << "K23-free fraction: " << report.free_fraction << "\nMarkov bound C^6/n: " << report.markov_bound << "\nstrong degeneracy min/median/max: " << report.min_d
            << " / " << report.median_d << " / " << report.max_d << '\n';
        return ok;
    }
}

auto parse_rational(const std::string & text) -> Rational
{
    auto slash = text.find('/');
    auto integer = [](const std::string & s) {
        if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos || s.find('-', 1) != std::string::npos || s == "-")
            throw std::invalid_argument("not a number: " + s);
        return BigInt(s);
    };
    if (slash != std::string::npos) {
        BigInt den = integer(text.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("zero denominator");
        return Rational(integer(text.substr(0, slash)), den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos)
        return Rational(integer(text));
    auto frac = text.substr(dot + 1);
    auto whole = text.substr(0, dot);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("not a number: " + text);
    bool negative = ! whole.empty() && whole[0] == '-';
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    BigInt w = whole.empty() || whole == "-" ? BigInt(0) : integer(whole);
    Rational r = Rational(boost::multiprecision::abs(w)) + Rational(BigInt(frac), scale);
    return negative ? Rational(-r) : r;
}

auto random_experiment(int n, double c, int trials, std::uint64_t seed) -> ExperimentReport
{
    if (n < 5 || trials < 1 || c < 0 || c > n)
        throw std::invalid_argument("need n >= 5, trials >= 1 and 0 <= C <= n");
    ExperimentReport report{.n = n, .c = c, .trials = trials, .seed = seed};
    std::vector<int> ds;
    int free_count = 0;
    for (int i = 0; i < trials; ++i) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        auto g = generate(FamilySpec::gnp(n, c / n, s));
        auto common = max_common_neighbors(g);
        auto sd = strong_degeneracy(g);
        ExperimentRow row{.seed = s, .n = n, .m = g.num_edges(), .max_common = common.s, .k23_free = common.s < 3, .strong_degeneracy = sd.d,
            .hg_bound = theorem_bound(sd.d)};
        free_count += row.k23_free ? 1 : 0;
        ds.push_back(sd.d);
        report.rows.push_back(std::move(row));
    }
    std::sort(ds.begin(), ds.end());
    report.free_fraction = static_cast<double>(free_count) / trials;
    report.markov_bound = std::pow(c, 6) / n;
    report.min_d = ds.front();
    report.max_d = ds.back();
    report.median_d = ds.size() % 2 ? ds[ds.size() / 2] : (ds[ds.size() / 2 - 1] + ds[ds.size() / 2]) / 2.0;
    return report;
}

auto experiment_csv(const ExperimentReport & r) -> std::string
{
    std::ostringstream out;
    out << "seed,n,m,max_common_neighbors,k23_free,strong_degeneracy,hg_bound\n";
    for (const auto & row : r.rows)
        out << row.seed << ',' << row.n << ',' << row.m << ',' << row.max_common << ',' << (row.k23_free ? 1 : 0) << ',' << row.strong_degeneracy << ','
            << row.hg_bound << '\n';
    return out.str();
}

auto run_command(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int
{
    CLI::App app{"Strong degeneracy, hat-guessing certificates, exact games and shallow-minor densities"};
    app.name("hatdeg");
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "Emit JSON instead of text");

    GenArgs gen;
    auto * c_gen = app.add_subcommand("gen", "Generate a graph family as an edge list");
    c_gen->add_option("--family", gen.family, "path, cycle, complete, complete-bipartite, random-tree, maximal-outerplanar, gnp, one-subdivision-of")->required();
    c_gen->add_option("--n", gen.n, "Vertex count (second side for complete-bipartite)")->required();
    c_gen->add_option("--m", gen.m, "First side for complete-bipartite");
    c_gen->add_option("--p", gen.p, "Edge probability for gnp");
    c_gen->add_option("--seed", gen.seed, "Seed (required for random families)");
    c_gen->add_option("--base", gen.base, "Base family for one-subdivision-of");
    c_gen->add_option("--out", gen.out, "Write to a file instead of stdout");

    std::string in;
    auto * c_sd = app.add_subcommand("strongdeg", "Strong degeneracy with an elimination order");
    c_sd->add_option("--in", in, "Edge-list file")->required();
    auto * c_deg = app.add_subcommand("degeneracy", "Ordinary degeneracy");
    c_deg->add_option("--in", in, "Edge-list file")->required();

    CertifyArgs cert;
    auto * c_cert = app.add_subcommand("certify", "Certify HG_g(G) <= q - 1 along a reduction chain");
    c_cert->add_option("--in", cert.in, "Edge-list file")->required();
    c_cert->add_option("--schedule", cert.schedule, "theorem | outerplanar | file:PATH");
    c_cert->add_option("--q", cert.q, "Number of colours (default: the schedule's own)");
    c_cert->add_option("--order", cert.order, "auto | file:PATH");
    c_cert->add_option("--d", cert.d, "Parameter of the theorem schedule (default: strong degeneracy)");
    c_cert->add_option("--out", cert.out, "Also write the certificate JSON to a file");

    std::string cert_path;
    auto * c_check = app.add_subcommand("check-certificate", "Re-validate a certificate independently");
    c_check->add_option("--in", in, "Edge-list file")->required();
    c_check->add_option("--cert", cert_path, "Certificate JSON")->required();

    ExactArgs exact;
    auto * c_exact = app.add_subcommand("exact", "Exact hat-guessing number on a tiny graph");
    c_exact->add_option("--in", exact.in, "Edge-list file")->required();
    c_exact->add_option("--qmax", exact.qmax, "Largest q to try")->required()->check(CLI::PositiveNumber);
    c_exact->add_option("--budgets", exact.budgets, "Guess budgets: \"1,2,1\", all:K or a file (default all 1)");
    c_exact->add_option("--threads", exact.threads, "Worker threads")->check(CLI::Range(1, 256));
    c_exact->add_option("--guard", exact.guard, "Limit for q^n and table cells")->check(CLI::PositiveNumber);
    c_exact->add_option("--strategy-out", exact.strategy_out, "Write the winning table at the reported value");

    std::string strategy, vbudgets;
    auto * c_verify = app.add_subcommand("verify-strategy", "Check a strategy table against every colouring");
    c_verify->add_option("--in", in, "Edge-list file")->required();
    c_verify->add_option("--strategy", strategy, "Strategy JSON")->required();
    c_verify->add_option("--budgets", vbudgets, "Guess budgets (default all 1)");

    std::string depth = "0";
    int dthreads = 1, dguard = 0;
    auto * c_density = app.add_subcommand("density", "Densest subgraph, depth-1/2 top-grad or depth-1 grad");
    c_density->add_option("--in", in, "Edge-list file")->required();
    c_density->add_option("--depth", depth, "0 | half | 1");
    c_density->add_option("--threads", dthreads, "Worker threads")->check(CLI::Range(1, 256));
    c_density->add_option("--guard", dguard, "Vertex limit for the brute-force depths");

    BoundsArgs bounds;
    auto * c_bounds = app.add_subcommand("bounds", "Strong-degeneracy bounds from densities");
    c_bounds->add_option("--prop", bounds.prop, "31 (top-grads) or 32 (depth-1 grad)");
    c_bounds->add_option("--s", bounds.s, "The graph is K_{2,s}-free")->required();
    c_bounds->add_option("--t0", bounds.t0, "Maximum subgraph density");
    c_bounds->add_option("--th", bounds.th, "Depth-1/2 top-grad");
    c_bounds->add_option("--g1", bounds.g1, "Depth-1 grad");
    c_bounds->add_option("--in", bounds.in, "Compute the densities from this graph");
    c_bounds->add_flag("--minor-free", bounds.minor_free, "Graphs with no K_t minor");
    c_bounds->add_flag("--subdivision-free", bounds.subdivision_free, "Graphs with no K_t subdivision");
    c_bounds->add_option("--t", bounds.t, "Forbidden clique size");
    c_bounds->add_option("--C", bounds.c, "Density constant (not known explicitly; supply your own)");

    int od = 0;
    auto * c_obs = app.add_subcommand("obstruction", "Witness that a graph is not strongly d-degenerate");
    c_obs->add_option("--in", in, "Edge-list file")->required();
    c_obs->add_option("--d", od, "d")->required();

    ExperimentArgs exp;
    auto * c_exp = app.add_subcommand("experiment-random", "K_{2,3}-freeness and strong degeneracy of G(n, C/n)");
    c_exp->add_option("--n", exp.n, "Vertices")->required();
    c_exp->add_option("--C", exp.c, "Average degree constant")->required();
    c_exp->add_option("--trials", exp.trials, "Trials")->required();
    c_exp->add_option("--seed", exp.seed, "Seed of the first trial");
    c_exp->add_option("--csv", exp.csv, "Write rows as CSV to a file, or - for stdout");

    for (auto * sub : app.get_subcommands({}))
        sub->add_flag("--json", json, "Emit JSON instead of text");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    }
    catch (const CLI::ParseError & e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        if (*c_gen)
            return cmd_gen(gen, out);
        if (*c_sd)
            return cmd_strongdeg(in, json, out);
        if (*c_deg)
            return cmd_degeneracy(in, json, out);
        if (*c_cert) {
            cert.json = json;
            return cmd_certify(cert, out);
        }
        if (*c_check)
            return cmd_check_certificate(in, cert_path, json, out);
        if (*c_exact) {
            exact.json = json;
            return cmd_exact(exact, out);
        }
        if (*c_verify)
            return cmd_verify_strategy(in, strategy, vbudgets, json, out);
        if (*c_density)
            return cmd_density(in, depth, dthreads, dguard, json, out);
        if (*c_bounds) {
            bounds.json = json;
            return cmd_bounds(bounds, out);
        }
        if (*c_obs)
            return cmd_obstruction(in, od, json, out);
        if (*c_exp) {
            exp.json = json;
            return cmd_experiment(exp, out);
        }
    }
    catch (const UsageError & e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }
    catch (const ScaleGuardExceeded & e) {
        err << "error: " << e.what() << '\n';
        return failure;
    }
    catch (const std::exception & e) {
        err << "error: " << e.what() << '\n';
        return failure;
    }
    return usage;
}

}
