#pragma once

#include <hatdeg/elimination.hpp>
#include <hatdeg/graph.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace hatdeg {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Guesses allowed per vertex in the multi-guess game.
using GuessBudget = std::map<Vertex, BigInt>;

/// (2d)^d
auto theorem_bound(int d) -> BigInt;

/// Assigns budgets to a residual graph from current degrees.
class BudgetRule {
  public:
    enum class Kind { theorem, outerplanar, constant, table };

    /// g(v) = (2d)^(d - deg v) if deg v <= d, else 1.
    static auto theorem(int d) -> BudgetRule;
    /// g(v) = 4, 2, 1 for deg v = 2, 3, >= 4. Residual triangles are closed
    /// by the union bound rather than further reduction.
    static auto outerplanar() -> BudgetRule;
    static auto constant(BigInt k) -> BudgetRule;
    /// by_degree[k] for deg v = k; degrees past the end use fallback
    /// (throws if there is none).
    static auto table(std::vector<BigInt> by_degree, std::optional<BigInt> fallback) -> BudgetRule;

    [[nodiscard]] auto kind() const -> Kind { return kind_; }
    [[nodiscard]] auto parameter() const -> int { return d_; }
    [[nodiscard]] auto budget_for_degree(int degree) const -> BigInt;

    /// Residual vertex count at which the chain stops and the remaining
    /// vertices are closed with a union bound; 0 for none.
    [[nodiscard]] auto base_size() const -> int { return base_size_; }

    [[nodiscard]] auto name() const -> std::string;

  private:
    Kind kind_ = Kind::constant;
    int d_ = 0;
    int base_size_ = 0;
    std::vector<BigInt> table_;
    std::optional<BigInt> fallback_;
};

/// Budgets of every vertex of `alive` under `rule`, using degrees inside the
/// residual graph induced by `alive`.
auto budgets_from_rule(const Graph & g, std::span<const char> alive, const BudgetRule & rule) -> GuessBudget;

class CertificateError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct StepReport {
    Rational lhs;
    bool pass = false;
};

/// Evaluates g(v)/q + sum over residual neighbours w of g(w)/(g'(w)+1)
/// exactly and passes iff it is < 1. `alive` marks the residual graph
/// containing v. Throws CertificateError when a budget is missing or zero,
/// or g_next differs from g outside the closed neighbourhood of v.
auto check_reduction_step(const Graph & g, std::span<const char> alive, Vertex v, const GuessBudget & budget,
    const GuessBudget & budget_next, const BigInt & q) -> StepReport;

struct CertificateStep {
    Vertex v = 0;
    std::vector<Vertex> neighbors;
    GuessBudget g;        // v and its neighbours, before removal
    GuessBudget g_next;   // neighbours, after removal
    Rational lhs;
};

/// Remaining vertices closed by a uniform-random-colouring union bound:
/// sum of g(v)/q < 1.
struct CertificateBase {
    std::vector<Vertex> vertices;
    GuessBudget g;
    Rational lhs;
};

/// A reduction chain proving HG_g(G) <= q - 1 for the budget g.
struct ReductionCertificate {
    BigInt q;
    GuessBudget budget;   // g on the whole input graph
    std::vector<CertificateStep> steps;
    std::optional<CertificateBase> base;

    [[nodiscard]] auto bound() const -> BigInt { return q - 1; }
    /// Largest step (or base) LHS.
    [[nodiscard]] auto worst_lhs() const -> Rational;
};

struct CertificationFailure {
    int stage = 0;                   // number of vertices already removed
    std::optional<Vertex> vertex;    // the failing vertex (given order), or none for auto
    Rational best_lhs;               // smallest LHS seen at the failing stage
    std::string message;
};

using CertificationResult = std::variant<ReductionCertificate, CertificationFailure>;

/// Walks `order` (a permutation of V(g)), or when empty searches each stage
/// for the lowest-index vertex whose step passes. Budgets are recomputed
/// from the rule on every residual graph.
auto certify(const Graph & g, const BudgetRule & rule, const BigInt & q, std::span<const Vertex> order = {}) -> CertificationResult;

/// d = strong degeneracy, theorem(d) budgets along the d-removable order,
/// q = (2d)^d + 1. Throws std::logic_error if any step fails.
auto certify_theorem_bound(const Graph & g) -> ReductionCertificate;

/// q = 41 with the outerplanar rule, removing ears whose step passes.
/// Throws CertificateError if g is not maximal outerplanar.
auto certify_outerplanar(const Graph & g) -> ReductionCertificate;

struct CheckedCertificate {
    BigInt bound;
    GuessBudget budget;   // the budget the certificate speaks about
};

/// Independent re-validation of a serialised certificate against the graph.
/// Uses only the recorded numbers, never a budget rule. Throws
/// CertificateError describing the first defect.
auto check_certificate(const Graph & g, const std::string & certificate_json) -> CheckedCertificate;

}
