#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hpg/expr.hpp"
#include "hpg/ramify.hpp"
#include "hpg/twoterm.hpp"

namespace hpg {

// A factor P(x) + Q(x) xi raised to a rational power; Q empty for plain
// factors. Used by the closed-form (Darboux-style) entries.
struct CurveFactor {
    Poly p, q;
    Rat exponent;
};

struct CatalogEntry {
    std::string id;
    std::string klass;
    int degree = 0;
    NumberFieldPtr nf;                 // base number field (Q by default)
    std::vector<std::string> symbols;  // free parameters; the first stays formal
    std::map<std::string, std::vector<Rat>> samples;
    std::array<Expr, 3> below{};  // local exponent differences at 0, 1, inf
    std::array<Expr, 3> above{};  // optional
    std::optional<BranchingPattern> pattern;
    std::string ramify_skip;  // nonempty: reason to skip the ramification check
    std::optional<RatFunc> phi;
    Expr theta;                    // radical expression (two-term entries)
    std::array<Expr, 3> tilde{};   // 2F1 parameters upstairs
    std::array<Expr, 3> params{};  // 2F1 parameters downstairs
    Expr rhs;                      // closed form for evaluation entries
    // genus-1 closed forms: x = t^2 with xi^2 = U(x)
    bool subst_t2 = false;
    std::optional<Poly> xi_square;
    FE phi_const, rhs_const;
    std::vector<CurveFactor> phi_factors, rhs_factors;
    std::vector<std::vector<std::string>> compositions;  // chains, outer first
    std::optional<bool> coxeter;
    int line = 0;

    bool is_evaluation() const { return rhs != nullptr || !rhs_factors.empty(); }
    bool has_identity() const { return tilde[0] != nullptr || is_evaluation(); }
    FieldPtr base_field() const;
    FieldPtr working_field() const;  // with the formal parameter when present
};

std::vector<CatalogEntry> load_catalog(const std::string& path);
std::vector<CatalogEntry> parse_catalog(const std::string& text, const std::string& name);

struct CheckResult {
    std::string name;
    bool pass = false;
    bool skipped = false;
    std::string detail;
};

struct Certificate {
    std::string id;
    int order = 0;
    std::vector<CheckResult> checks;
    bool pass() const {
        for (auto& c : checks)
            if (!c.pass && !c.skipped) return false;
        return true;
    }
};

// Series certification of the entry's identity (two-term or closed-form),
// formal in the first symbol and sampled over the rest, companion included.
Certificate verify_identity(const CatalogEntry& e, int order);

// Branching-pattern, Hurwitz-count and exponent-transfer certification.
Certificate verify_ramification(const CatalogEntry& e);

// Composition chains re-compose to phi up to Moebius changes of frame.
Certificate verify_composition(const CatalogEntry& e, const std::vector<CatalogEntry>& all);

struct VerifyOptions {
    int order = 24;
    int jobs = 1;
    std::string klass;  // filter
    std::string id;     // filter
    bool identities = true;
    bool ramification = true;
    bool compositions = true;
    std::map<std::string, std::vector<Rat>> sample_overrides;
};

struct VerifySummary {
    std::vector<Certificate> certificates;  // ordered by entry id
    int checked = 0, failed = 0, skipped = 0;
};

VerifySummary verify_all(const std::vector<CatalogEntry>& entries, const VerifyOptions& opt);

// Default rational sample pool used when an entry's declared samples hit a
// degeneration (non-positive-integer lower parameter and similar).
const std::vector<Rat>& sample_pool();

}  // namespace hpg
