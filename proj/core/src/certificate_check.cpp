// Independent re-check of a serialised reduction certificate. Reads only the
// recorded numbers and the graph; fractions are compared by integer
// cross-multiplication, never through a rational type.

#include <hatdeg/certifier.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <limits>

namespace hatdeg {

namespace {
    using nlohmann::json;

    [[noreturn]] void fail(const std::string & why) { throw CertificateError("certificate rejected: " + why); }

    auto integer(const json & j, const std::string & what) -> BigInt
    {
        if (j.is_number_integer())
            return BigInt(j.get<std::int64_t>());
        if (j.is_string()) {
            const auto & s = j.get_ref<const std::string &>();
            const auto body = s.substr(! s.empty() && s[0] == '-' ? 1 : 0);
            if (! body.empty() && body.find_first_not_of("0123456789") == std::string::npos)
                return BigInt(s);
        }
        fail(what + " is not an integer");
    }

    auto vertex(const json & j, int n, const std::string & what) -> Vertex
    {
        if (! j.is_number_integer())
            fail(what + " is not a vertex id");
        auto v = j.get<std::int64_t>();
        if (v < 0 || v >= n)
            fail(what + " = " + std::to_string(v) + " is out of range");
        return static_cast<Vertex>(v);
    }

    auto vertex_map(const json & j, int n, const std::string & what) -> std::map<Vertex, BigInt>
    {
        if (! j.is_object())
            fail(what + " is not an object");
        std::map<Vertex, BigInt> r;
        for (const auto & [key, value] : j.items()) {
            std::size_t used = 0;
            long v = -1;
            try {
                v = std::stol(key, &used);
            }
            catch (const std::exception &) {
            }
            if (used != key.size() || v < 0 || v >= n)
                fail(what + " has a bad key \"" + key + "\"");
            BigInt x = integer(value, what + "[" + key + "]");
            if (x < 1)
                fail(what + "[" + key + "] is not positive");
            r.emplace(static_cast<Vertex>(v), x);
        }
        return r;
    }

    struct Fraction {
        BigInt num = 0, den = 1;
        void add(const BigInt & a, const BigInt & b)
        {
            num = num * b + a * den;
            den *= b;
        }
    };

    void expect_lhs(const json & recorded, const Fraction & f, const std::string & where)
    {
        if (! recorded.is_object() || ! recorded.contains("num") || ! recorded.contains("den"))
            fail(where + ": lhs missing");
        BigInt rn = integer(recorded["num"], where + " lhs.num");
        BigInt rd = integer(recorded["den"], where + " lhs.den");
        if (rd <= 0)
            fail(where + ": lhs denominator must be positive");
        if (rn * f.den != f.num * rd)
            fail(where + ": recorded lhs does not match the recomputed value");
        if (f.num >= f.den)
            fail(where + ": lhs is not < 1");
    }
}

auto check_certificate(const Graph & g, const std::string & certificate_json) -> CheckedCertificate
{
    json cert;
    try {
        cert = json::parse(certificate_json);
    }
    catch (const json::parse_error & e) {
        fail(std::string("not JSON: ") + e.what());
    }
    if (! cert.is_object() || ! cert.contains("q") || ! cert.contains("steps") || ! cert["steps"].is_array())
        fail("missing q or steps");

    const int n = g.num_vertices();
    const BigInt q = integer(cert["q"], "q");
    if (q < 1)
        fail("q must be positive");
    if (cert.contains("bound") && integer(cert["bound"], "bound") != q - 1)
        fail("bound is not q - 1");

    // Current budget of each live vertex; unset until first mentioned.
    std::vector<std::optional<BigInt>> current(n);
    std::vector<char> alive(n, 1);
    int remaining = n;

    std::map<Vertex, BigInt> declared;
    if (cert.contains("budget")) {
        declared = vertex_map(cert["budget"], n, "budget");
        if (static_cast<int>(declared.size()) != n)
            fail("budget does not cover every vertex");
        for (const auto & [v, x] : declared)
            current[v] = x;
    }
    std::vector<std::optional<BigInt>> initial = current;

    auto agree = [&](Vertex x, const BigInt & value, const std::string & where) {
        if (! current[x]) {
            current[x] = value;
            initial[x] = value;
        }
        else if (*current[x] != value)
            fail(where + ": g(" + std::to_string(x) + ") disagrees with the running budget");
    };

    int index = 0;
    for (const auto & step : cert["steps"]) {
        const std::string where = "step " + std::to_string(index++);
        if (! step.is_object() || ! step.contains("v") || ! step.contains("neighbors") || ! step.contains("g") || ! step.contains("g_next"))
            fail(where + ": incomplete");
        const Vertex v = vertex(step["v"], n, where + " v");
        if (! alive[v])
            fail(where + ": vertex " + std::to_string(v) + " was already removed");

        std::vector<Vertex> expected;
        for (Vertex w : g.neighbors(v))
            if (alive[w])
                expected.push_back(w);
        std::vector<Vertex> listed;
        for (const auto & w : step["neighbors"])
            listed.push_back(vertex(w, n, where + " neighbour"));
        std::sort(listed.begin(), listed.end());
        if (listed != expected)
            fail(where + ": neighbour list is not the residual neighbourhood of " + std::to_string(v));

        auto gv = vertex_map(step["g"], n, where + " g");
        auto gn = vertex_map(step["g_next"], n, where + " g_next");
        if (gv.size() != expected.size() + 1 || ! gv.contains(v))
            fail(where + ": g must list v and its neighbours");
        if (gn.size() != expected.size())
            fail(where + ": g_next must list exactly the neighbours");
        for (Vertex w : expected)
            if (! gv.contains(w) || ! gn.contains(w))
                fail(where + ": budget missing for neighbour " + std::to_string(w));

        Fraction lhs;
        lhs.add(gv[v], q);
        agree(v, gv[v], where);
        for (Vertex w : expected) {
            agree(w, gv[w], where);
            lhs.add(gv[w], gn[w] + 1);
        }
        expect_lhs(step["lhs"], lhs, where);

        alive[v] = 0;
        current[v].reset();
        --remaining;
        for (Vertex w : expected)
            current[w] = gn[w];
    }

    if (cert.contains("base") && ! cert["base"].is_null()) {
        const auto & base = cert["base"];
        if (! base.is_object() || ! base.contains("vertices") || ! base.contains("g"))
            fail("base: incomplete");
        std::vector<Vertex> listed;
        for (const auto & w : base["vertices"])
            listed.push_back(vertex(w, n, "base vertex"));
        std::sort(listed.begin(), listed.end());
        std::vector<Vertex> left;
        for (Vertex x = 0; x < n; ++x)
            if (alive[x])
                left.push_back(x);
        if (listed != left)
            fail("base: vertices are not the residual graph");
        auto gb = vertex_map(base["g"], n, "base g");
        if (gb.size() != left.size())
            fail("base: g must list exactly the residual vertices");
        Fraction lhs;
        for (Vertex x : left) {
            if (! gb.contains(x))
                fail("base: budget missing for " + std::to_string(x));
            agree(x, gb[x], "base");
            lhs.add(gb[x], q);
        }
        expect_lhs(base["lhs"], lhs, "base");
        remaining = 0;
    }

    if (remaining != 0)
        fail(std::to_string(remaining) + " vertices are never removed");

    CheckedCertificate result{q - 1, {}};
    for (Vertex x = 0; x < n; ++x)
        result.budget.emplace(x, *initial[x]);
    return result;
}

}
