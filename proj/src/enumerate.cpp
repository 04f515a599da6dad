#include "hpg/enumerate.hpp"

#include <algorithm>
#include <map>

namespace hpg {

namespace {

std::vector<std::vector<int>> partitions_of(int n) {
    static std::map<int, std::vector<std::vector<int>>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    // descending partitions
    auto rec = [&](auto&& self, int rest, int maxpart) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    cache[n] = out;
    return out;
}

struct FiberChoice {
    std::vector<int> parts;
    int sing;                        // number of singular values contributed
    std::vector<AffineForm> values;  // the singular values
};

// Partition of d over a point with difference `led`; parts whose transformed
// value equals 1 are non-singular.
std::vector<FiberChoice> fiber_choices(int d, const AffineForm& led) {
    std::vector<FiberChoice> out;
    for (auto& parts : partitions_of(d)) {
        FiberChoice fc{parts, 0, {}};
        for (int m : parts) {
            AffineForm v = led * Rat(m);
            if (!v.is_one()) {
                ++fc.sing;
                fc.values.push_back(v);
            }
        }
        out.push_back(std::move(fc));
    }
    return out;
}

std::vector<AffineForm> sorted_values(std::vector<AffineForm> v) {
    std::sort(v.begin(), v.end());
    return v;
}

struct FactRow {
    std::vector<int> ks;            // sorted restricted denominators
    std::vector<AffineForm> above;  // sorted singular values
    long degree;
    Candidate::Status status;
    const char* note;
};

AffineForm P(long num, long den = 1) { return AffineForm(Rat(0), rat(num, den)); }
AffineForm C(long num, long den = 1) { return AffineForm(rat(num, den)); }

const std::vector<FactRow>& facts() {
    static const std::vector<FactRow> rows = {
        // one-free-parameter table
        {{2, 3}, {C(1, 2), P(1), P(2)}, 3, Candidate::Status::CoveringKnown, "indecomposable"},
        {{2, 3}, {C(1, 3), P(1), P(3)}, 4, Candidate::Status::CoveringKnown, "indecomposable"},
        {{2, 3}, {C(1, 3), P(2), P(2)}, 4, Candidate::Status::NoCovering, ""},
        {{2, 3}, {P(1), P(1), P(4)}, 6, Candidate::Status::CoveringKnown, "2x3"},
        {{2, 3}, {P(2), P(2), P(2)}, 6, Candidate::Status::CoveringKnown, "2x3 or 3x2"},
        {{2, 3}, {P(1), P(2), P(3)}, 6, Candidate::Status::NoCovering, ""},
        {{2, 4}, {P(1), P(1), P(2)}, 4, Candidate::Status::CoveringKnown, "2x2"},
        {{3, 3}, {P(1), P(1), P(1)}, 3, Candidate::Status::CoveringKnown, "indecomposable"},
        // hyperbolic table
        {{2, 3, 7}, {C(1, 3), C(1, 3), C(1, 7)}, 8, Candidate::Status::CoveringKnown,
         "indecomposable; coxeter=no"},
        {{2, 3, 7}, {C(1, 2), C(1, 7), C(1, 7)}, 9, Candidate::Status::CoveringKnown,
         "indecomposable; coxeter=no"},
        {{2, 3, 7}, {C(1, 3), C(1, 7), C(2, 7)}, 10, Candidate::Status::CoveringKnown,
         "indecomposable; coxeter=yes"},
        {{2, 3, 7}, {C(1, 7), C(1, 7), C(3, 7)}, 12, Candidate::Status::NoCovering, ""},
        {{2, 3, 7}, {C(1, 7), C(2, 7), C(2, 7)}, 12, Candidate::Status::NoCovering, ""},
        {{2, 3, 7}, {C(1, 3), C(1, 7), C(1, 7)}, 16, Candidate::Status::NoCovering, ""},
        {{2, 3, 7}, {C(1, 7), C(1, 7), C(2, 7)}, 18, Candidate::Status::CoveringKnown,
         "2x9; coxeter=no"},
        {{2, 3, 7}, {C(1, 7), C(1, 7), C(1, 7)}, 24, Candidate::Status::CoveringKnown,
         "3x8; coxeter=yes"},
        {{2, 3, 8}, {C(1, 3), C(1, 8), C(1, 8)}, 10, Candidate::Status::CoveringKnown,
         "indecomposable; coxeter=no"},
        {{2, 3, 8}, {C(1, 4), C(1, 8), C(1, 8)}, 12, Candidate::Status::CoveringKnown,
         "2x2x3; coxeter=yes"},
        {{2, 3, 9}, {C(1, 9), C(1, 9), C(1, 9)}, 12, Candidate::Status::CoveringKnown,
         "3x4; coxeter=no"},
        {{2, 4, 5}, {C(1, 4), C(1, 4), C(1, 5)}, 6, Candidate::Status::CoveringKnown,
         "indecomposable; coxeter=no"},
        {{2, 4, 5}, {C(1, 5), C(1, 5), C(1, 5)}, 8, Candidate::Status::NoCovering, ""},
    };
    return rows;
}

void attach_status(Candidate& c, const std::vector<int>& sorted_ks) {
    auto key = sorted_values({c.above[0], c.above[1], c.above[2]});
    for (auto& row : facts()) {
        if (row.ks != sorted_ks || row.degree != c.degree) continue;
        if (sorted_values(row.above) != key) continue;
        c.status = row.status;
        c.note = row.note;
        return;
    }
}

}  // namespace

std::vector<long> admissible_degrees(const RestrictionQuery& q) {
    std::vector<long> out;
    if (q.ks.empty()) return {1};
    long kmax = *std::max_element(q.ks.begin(), q.ks.end());
    for (long d = kmax; d <= q.degree_bound; ++d) {
        long s = d;
        for (int k : q.ks) s -= d / k;
        if (s <= 1) out.push_back(d);
    }
    return out;
}

std::vector<Candidate> enumerate_candidates(const RestrictionQuery& q) {
    size_t n_restricted = q.ks.size();
    if (n_restricted < 2)
        fail(ErrorKind::NotImplemented,
             "pattern enumeration supports 2 or 3 restricted exponent differences");
    std::vector<int> ks = q.ks;
    std::vector<int> sorted_ks = ks;
    std::sort(sorted_ks.begin(), sorted_ks.end());

    ExponentTriple below;
    for (size_t i = 0; i < 3; ++i)
        below[i] = i < n_restricted ? AffineForm(Rat(1, ks[i])) : AffineForm(Rat(0), Rat(1));

    std::vector<Candidate> out;
    for (long d : admissible_degrees(q)) {
        auto f0 = fiber_choices((int)d, below[0]);
        auto f1 = fiber_choices((int)d, below[1]);
        auto f2 = fiber_choices((int)d, below[2]);
        // group by (above multiset, pattern) then by (above) for output
        std::map<std::string, Candidate> found;
        for (auto& a : f0) {
            for (auto& b : f1) {
                int parts2 = (int)(d + 2 - a.parts.size() - b.parts.size());
                int sing2 = 3 - a.sing - b.sing;
                if (sing2 < 0 || parts2 < 1) continue;
                for (auto& c : f2) {
                    if ((int)c.parts.size() != parts2 || c.sing != sing2) continue;
                    std::vector<AffineForm> above;
                    for (auto& v : a.values) above.push_back(v);
                    for (auto& v : b.values) above.push_back(v);
                    for (auto& v : c.values) above.push_back(v);
                    if (above.size() != 3) continue;
                    above = sorted_values(above);
                    BranchingPattern pat;
                    pat.degree = (int)d;
                    pat.fibers = {a.parts, b.parts, c.parts};
                    // set semantics under permutation of equal k_j
                    for (size_t i = 0; i + 1 < n_restricted; ++i)
                        for (size_t j = i + 1; j < n_restricted; ++j)
                            if (ks[i] == ks[j] && pat.fibers[i] < pat.fibers[j])
                                std::swap(pat.fibers[i], pat.fibers[j]);
                    std::string key = triple_str({above[0], above[1], above[2]}) + "|" + pat.str();
                    if (found.count(key)) continue;
                    Candidate cand;
                    cand.below = below;
                    cand.above = {above[0], above[1], above[2]};
                    cand.degree = d;
                    cand.patterns = {pat};
                    attach_status(cand, sorted_ks);
                    found[key] = cand;
                }
            }
        }
        for (auto& [key, cand] : found) out.push_back(cand);
    }
    // merge candidates sharing (above, degree) into one row with all patterns
    std::vector<Candidate> merged;
    for (auto& c : out) {
        bool joined = false;
        for (auto& m : merged) {
            if (m.degree == c.degree &&
                sorted_values({m.above[0], m.above[1], m.above[2]}) ==
                    sorted_values({c.above[0], c.above[1], c.above[2]})) {
                m.patterns.push_back(c.patterns[0]);
                joined = true;
                break;
            }
        }
        if (!joined) merged.push_back(c);
    }
    // the recorded degenerate candidate outside the d+2 bookkeeping
    if (sorted_ks == std::vector<int>{2, 2, 2} && q.degree_bound >= 10)
        merged.push_back(trivial_monodromy_exception());
    return merged;
}

std::vector<HyperbolicTuple> hyperbolic_bounds() {
    std::vector<HyperbolicTuple> out;
    for (int k1 = 2; k1 <= 6; ++k1)
        for (int k2 = k1; k2 <= 36; ++k2) {
            Rat s12 = Rat(1, k1) + Rat(1, k2);
            if (s12 < Rat(2, 3) || s12 >= 1) continue;
            for (int k3 = k2; k3 <= 64; ++k3) {
                if (Rat(1, k1) + Rat(1, k2) + Rat(1, k3) >= 1) continue;
                // (1 - 1/k1 - 1/k2) k3^2 - 2 k3 + 3 <= 0
                if ((1 - s12) * k3 * k3 - 2 * k3 + 3 > 0) continue;
                Rat deficit = 1 - Rat(1, k1) - Rat(1, k2) - Rat(1, k3);
                for (long d = k3; d * deficit <= 1 - Rat(3, k3); ++d) {
                    long floors = d - d / k1 - d / k2 - d / k3;
                    if (floors != 1) continue;
                    out.push_back({k1, k2, k3, d});
                }
            }
        }
    return out;
}

const std::vector<ParamFamilyRow>& elliptic_family_rows() {
    auto T = [](long a, long b, long c, long d, long e, long f) {
        return ExponentTriple{AffineForm(rat(a, b)), AffineForm(rat(c, d)), AffineForm(rat(e, f))};
    };
    auto mk = [&](ExponentTriple below, ExponentTriple above, const char* deg, const char* pat) {
        return ParamFamilyRow{below, above, AffineForm::parse(deg, "n"), ParamPattern::parse(pat)};
    };
    static const std::vector<ParamFamilyRow> rows = {
        mk(T(1, 2, 1, 4, 1, 4), T(1, 2, 1, 4, 1, 4), "4n", "2n*2=n*4=(n-1)*4+2+1+1"),
        mk(T(1, 2, 1, 4, 1, 4), T(1, 2, 1, 4, 1, 4), "4n+1", "2n*2+1=n*4+1=n*4+1"),
        mk(T(1, 2, 1, 4, 1, 4), T(1, 2, 1, 4, 1, 4), "4n+2", "(2n+1)*2=n*4+2=n*4+1+1"),
        mk(T(1, 2, 1, 3, 1, 6), T(1, 2, 1, 3, 1, 6), "6n", "3n*2=2n*3=(n-1)*6+3+2+1"),
        mk(T(1, 2, 1, 3, 1, 6), T(1, 2, 1, 3, 1, 6), "6n+1", "3n*2+1=2n*3+1=n*6+1"),
        mk(T(1, 2, 1, 3, 1, 6), T(1, 2, 1, 3, 1, 6), "6n+3", "(3n+1)*2+1=(2n+1)*3=n*6+2+1"),
        mk(T(1, 2, 1, 3, 1, 6), T(1, 2, 1, 3, 1, 6), "6n+4", "(3n+2)*2=(2n+1)*3+1=n*6+3+1"),
        mk(T(1, 2, 1, 3, 1, 6), T(1, 3, 1, 3, 1, 3), "6n", "3n*2=2n*3=(n-1)*6+2+2+2"),
        mk(T(1, 2, 1, 3, 1, 6), T(1, 3, 1, 3, 1, 3), "6n", "3n*2=(2n-1)*3+1+1+1=n*6"),
        mk(T(1, 2, 1, 3, 1, 6), T(1, 3, 1, 3, 1, 3), "6n+2", "(3n+1)*2=2n*3+1+1=n*6+2"),
        mk(T(1, 2, 1, 3, 1, 6), T(1, 3, 1, 3, 1, 3), "6n+4", "(3n+2)*2=(2n+1)*3+1=n*6+2+2"),
        mk(T(1, 2, 1, 3, 1, 6), T(2, 3, 1, 6, 1, 6), "6n", "3n*2=2n*3=(n-1)*6+4+1+1"),
        mk(T(1, 2, 1, 3, 1, 6), T(2, 3, 1, 6, 1, 6), "6n+2", "(3n+1)*2=2n*3+2=n*6+1+1"),
        mk(T(1, 3, 1, 3, 1, 3), T(1, 3, 1, 3, 1, 3), "3n", "n*3=n*3=(n-1)*3+1+1+1"),
        mk(T(1, 3, 1, 3, 1, 3), T(1, 3, 1, 3, 1, 3), "3n+1", "n*3+1=n*3+1=n*3+1"),
    };
    return rows;
}

Candidate trivial_monodromy_exception() {
    Candidate c;
    c.below = {AffineForm(Rat(1, 2)), AffineForm(Rat(1, 2)), AffineForm(Rat(1, 2))};
    c.above = {AffineForm(Rat(2)), AffineForm(Rat(2)), AffineForm(Rat(2))};
    c.degree = 10;
    BranchingPattern pat;
    pat.degree = 10;
    pat.fibers = {std::vector<int>(5, 2), std::vector<int>(5, 2), std::vector<int>(5, 2)};
    c.patterns = {pat};
    c.status = Candidate::Status::NoCovering;
    c.note = "recorded; unverified-by-solver; all singularities would sit outside the marked fibers";
    return c;
}

std::string status_str(Candidate::Status s) {
    switch (s) {
        case Candidate::Status::CoveringKnown: return "covering-known";
        case Candidate::Status::NoCovering: return "no-covering";
        default: return "undecided";
    }
}

}  // namespace hpg
