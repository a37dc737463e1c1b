#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hkbase/deduction.hpp"
#include "hkbase/lattice.hpp"

namespace hkbase {

struct FixtureCheck {
    std::string description;
    std::string expected;
    std::string computed;
    bool pass = false;
};

struct FixtureResult {
    std::string name;
    std::vector<FixtureCheck> checks;
    std::optional<GramLattice> gram;
    std::optional<Configuration> configuration;

    bool all_pass() const;
    const FixtureCheck* find(const std::string& description) const;
};

/// Elliptic K3 with section B: A = dL + B on the lattice [[0,1],[1,-2]].
/// d = 1 is reported as the expected BK failure.
FixtureResult mayer_fixture(std::int64_t d);

/// Lagrangian P^g-fibration with M = dF and fixed prime B, q(F, B) = qFB.
FixtureResult beauville_mukai_fixture(int g, std::int64_t d, std::int64_t qFB = 1);

/// Fourfold endgame: an isotropic fixed B_1 with q(L, B_1) = qLB > 0 is impossible.
FixtureResult hk4_fixture(std::int64_t qLB);

/// The chain configuration chain_gram(k, d, q_last) and its exact invariants.
FixtureResult chain_fixture(int k, std::int64_t d, std::int64_t q_last);

/// "PrimeFixed{qB=-2}", "Chain{k=1,d=-4,q_last=-2}" or "Contradiction{rule}".
std::string describe(const ClassificationResult& r);

} // namespace hkbase
