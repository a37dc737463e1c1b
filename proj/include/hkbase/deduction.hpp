#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hkbase/configuration.hpp"
#include "hkbase/errors.hpp"
#include "hkbase/lattice.hpp"
#include "hkbase/rr.hpp"

namespace hkbase {

/// The fixed part is a single reduced prime divisor of square qB <= 0.
struct PrimeFixed {
    std::int64_t qB = 0;
    bool operator==(const PrimeFixed&) const = default;
};

/// The fixed part is a reduced chain M - B_1 - ... - B_{k+1}; `order` lists
/// the input component indices in chain order.
struct Chain {
    int k = 0;
    std::int64_t d = 0;
    std::int64_t q_last = 0;
    std::vector<std::size_t> order;

    bool operator==(const Chain& other) const { return k == other.k && d == other.d && q_last == other.q_last; }
};

struct Contradiction {
    Violation violation;
    bool operator==(const Contradiction&) const = default;
};

using ClassificationResult = std::variant<PrimeFixed, Chain, Contradiction>;

inline bool is_contradiction(const ClassificationResult& r) { return std::holds_alternative<Contradiction>(r); }
std::string class_tag(const ClassificationResult& r);

/// One line of a machine-checkable certificate: rule identifier and outcome.
struct CertificateEntry {
    std::string rule;
    std::string outcome;
    bool operator==(const CertificateEntry&) const = default;
};
using Certificate = std::vector<CertificateEntry>;

/// Gram of M, B_1, ..., B_{k+1} for the chain with q(B_j) = d (j <= k),
/// q(B_{k+1}) = q_last and neighbouring pairings -d/2.
GramLattice chain_gram(int k, std::int64_t d, std::int64_t q_last, ParityMode mode = ParityMode::even);

/// q_last values admitted by chain_gram for (d, mode) that also satisfy
/// Markman divisibility against -d/2, in increasing order.
std::vector<std::int64_t> admissible_q_last(std::int64_t d, ParityMode mode = ParityMode::even);

/// q_last is in admissible_q_last(d) and chain_gram(k, d, q_last) embeds in a
/// hyperbolic lattice. Some parameter triples give a degenerate or
/// two-positive form, e.g. (k=2, d=-8, q_last=-2) has signature (1,1,2).
bool chain_admissible(int k, std::int64_t d, std::int64_t q_last, ParityMode mode = ParityMode::even);

/// Reduced chain configuration with primitive mobile part.
Configuration chain_configuration(int k, std::int64_t d, std::int64_t q_last, int n = 2,
                                  ParityMode mode = ParityMode::even);

// Individual rules. `sub` is a vector of sub-multiplicities 0 <= sub[j] <= b_j
// describing B' = sum sub[j] B_j <= B.

/// Setup: q(A) > 0, A and M in the BK shadow, M and A in the same positive
/// cone, effective classes meeting properly, hyperbolic Gram, Markman
/// divisibility for every negative component.
std::optional<Violation> check_setup(const Configuration& c);

/// M + B' in the BK shadow with positive square forces B' = B.
std::optional<Violation> rule_lemma1(const Configuration& c, const std::vector<std::int64_t>& sub);

/// Non-primitive mobile part forces a prime fixed part.
std::optional<Violation> rule_notprimitive(const Configuration& c);

/// Primitive M: a nonzero B' < B in the BK shadow cannot be isotropic.
std::optional<Violation> rule_lemma2(const Configuration& c, const std::vector<std::int64_t>& sub);

/// A nonzero B' <= B has h0 = 1, so it cannot be a big BK class.
std::optional<Violation> rule_fixed_positive(const Configuration& c, const std::vector<std::int64_t>& sub);

/// For negative B_i, B_j with q(B_i, B_j) = -q(B_i)/2: q(B_i) = q(B_j) or
/// -q(B_j) <= -q(B_i)/2, and -q(B_j) divides -q(B_i). Not applicable
/// (nullopt) when the hypotheses fail.
std::optional<Violation> rule_technical(const Configuration& c, std::size_t i, std::size_t j);

enum class KeyCase { mobile_plus_component, doubled_mobile };
using KeyOutcome = std::variant<KeyCase, Violation>;

/// For q(M, B_j) > 0: either M + B_j is in the BK shadow, or 2M + B_j is,
/// q(M,B_j) = -q(B_j)/2, q(2M+B_j) = -q(B_j) and q(A) < -q(B_j).
/// Throws PreconditionError when q(M, B_j) <= 0.
KeyOutcome rule_key(const Configuration& c, std::size_t j);

/// Ample A pairs positively with every nonzero effective combination of
/// components. Never fires when the configuration is not flagged ample.
std::optional<Violation> rule_ample(const Configuration& c);

/// Calls `fn(sub)` for every sub-multiplicity vector 0 <= sub <= b in
/// lexicographic order.
template <typename Fn>
void for_each_sub_multiplicity(const std::vector<std::int64_t>& bound, Fn&& fn)
{
    const std::size_t n = bound.size();
    std::vector<std::int64_t> sub(n, 0);
    while (true) {
        fn(static_cast<const std::vector<std::int64_t>&>(sub));
        std::size_t i = 0;
        for (; i < n; ++i) {
            auto& digit = sub[n - 1 - i];
            if (digit < bound[n - 1 - i]) {
                ++digit;
                break;
            }
            digit = 0;
        }
        if (i == n) {
            return;
        }
    }
}

/// Runs the two-case deduction. For m_primitive = unknown both branches are
/// evaluated; the result is the first admissible one (primitive branch
/// first), or the primitive branch's contradiction when neither is.
ClassificationResult classify(const Configuration& c, Certificate* trace = nullptr);

struct BranchResult {
    Primitivity primitivity;
    ClassificationResult result;
};

/// Classification under each primitivity hypothesis the configuration allows.
std::vector<BranchResult> classify_branches(const Configuration& c);

struct MobilitySubset {
    std::vector<std::int64_t> removed; // B' as a 0/1 vector over components
    Rational q_mobile;                 // q(M')
    Rational q_mobile_with_2m_b;       // q(M', 2M + B)
    Rational twice_q_mobile_m;         // 2 q(M', M)
    Rational twice_q_2m_b_m;           // 2 q(2M + B, M)
    Rational twice_q_b_m;              // 2 q(B, M)
    bool in_bk_shadow = false;
    bool inequalities_hold = false;
    // For B' != 0: the subset is ruled out, either because M' leaves the BK
    // shadow or because q(M') > 0 contradicts the lemma1 rule (q(M') = 0).
    bool excluded = false;
    bool pass = false;
};

struct MobilityReport {
    bool all_pass = false;
    std::vector<MobilitySubset> subsets;
};

/// For every reduced B' <= B with M' = 2M + B + (B - B'): B' = 0 must give a
/// BK-shadow M' with q(M') >= q(M', 2M+B) >= 2q(M', M) >= 2q(2M+B, M) = 2q(B, M) > 0,
/// and every B' != 0 must be excluded, so |2A| has no fixed divisor. Throws PreconditionError when classify rejects c.
MobilityReport check_2A_mobility(const Configuration& c);

/// Fourfold endgame: q(L) = q(B_1) = 0 and q(L, B_1) > 0 make L + B_1 a big BK
/// class of square 2q(L, B_1); the result is true when its h0 exceeds
/// h0(P^2, O(1)) = 3, i.e. the isotropic fixed component is impossible.
bool hk4_negative_square_step(const Rational& qL_B1, const RRPolynomial& p);

} // namespace hkbase
