#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hkbase/configuration.hpp"
#include "hkbase/deduction.hpp"
#include "hkbase/rr.hpp"

namespace hkbase {

struct SearchBounds {
    int max_components = 3;
    std::int64_t entry_bound = 6;
    std::int64_t square_min = -8;
    std::int64_t max_multiplicity = 2;
    int n = 2;
    ParityMode parity_mode = ParityMode::even;
    std::optional<RRPolynomial> rr;
    Primitivity m_primitive = Primitivity::yes;
    /// Maximum number of complete candidates examined before BudgetExceeded.
    std::uint64_t budget = 200'000'000;
    /// Worker threads; 0 means one per available core.
    unsigned threads = 0;
    /// Skip subtrees that a filter rule rejects regardless of the remaining
    /// entries. Disabling it is only useful to test that the pruning is exact.
    bool prune = true;
};

/// Throws InputError when the bounds do not describe a finite search space.
void validate_bounds(const SearchBounds& b);

struct SurvivorRecord {
    Configuration configuration;
    ClassificationResult classification;
    Certificate certificate;
};

struct EnumerationReport {
    std::vector<SurvivorRecord> survivors;     // canonical order, never Contradiction
    std::vector<SurvivorRecord> counterexamples;
    std::size_t survivor_count = 0;            // survivors + counterexamples
    std::size_t chain_count = 0;
    std::size_t prime_count = 0;
    std::uint64_t candidates = 0;              // complete candidates examined
    std::map<std::string, std::uint64_t> rejections;
    /// Candidates with some b_j >= 2, keyed by the rule classify rejects them with.
    std::map<std::string, std::uint64_t> multiplicity_deaths;
    std::uint64_t multiplicity_survivors = 0;
    std::string rule_set;                      // "lemmas" or "lemmas+rr"
    bool hypothetical = false;                 // general parity mode
};

/// Exhaustive search over canonical configurations within the bounds. Every
/// candidate passing the lemma-level filters is classified and compared
/// against the two admissible shapes; mismatches become counterexamples.
EnumerationReport enumerate(const SearchBounds& bounds);

/// Same search, reduced to the verification summary.
struct VerificationSummary {
    std::size_t survivor_count = 0;
    std::size_t chain_count = 0;
    std::size_t prime_count = 0;
    std::vector<SurvivorRecord> counterexamples;
};
VerificationSummary verify_classification(const SearchBounds& bounds);

/// First lemma-level rule the configuration violates, if any.
std::optional<Violation> first_filter_violation(const Configuration& c);

/// Shape test independent of classify: a single reduced prime of square <= 0,
/// or a Gram equal to chain_gram(k, d, q_last) under some renumbering of the
/// components with all multiplicities 1.
std::optional<ClassificationResult> match_two_case_shape(const Configuration& c);

/// Lexicographically minimal (Gram, multiplicities) under permutations of the
/// components, M kept first.
Configuration canonical_form(const Configuration& c);

/// Sort key of a canonical configuration: rank, flattened Gram, multiplicities.
std::vector<Rational> canonical_key(const Configuration& c);

} // namespace hkbase
