#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hkbase/lattice.hpp"
#include "hkbase/rr.hpp"

namespace hkbase {

enum class Primitivity { yes, no, unknown };

std::string to_string(Primitivity p);

/// Candidate decomposition A = M + sum b_j B_j. The Gram is taken over the
/// ordered basis (M, B_1, ..., B_{k+1}); component j (0-based) is basis
/// vector j+1.
class Configuration {
public:
    /// Throws InputError on structural problems: rank mismatch, empty fixed
    /// part, non-positive multiplicities, or an RR polynomial of another n.
    Configuration(int n, GramLattice gram, std::vector<std::int64_t> multiplicities,
                  Primitivity m_primitive = Primitivity::yes, bool a_ample = false,
                  std::optional<RRPolynomial> rr = std::nullopt, std::vector<std::string> labels = {});

    int n() const noexcept { return n_; }
    const GramLattice& gram() const noexcept { return gram_; }
    const std::vector<std::int64_t>& multiplicities() const noexcept { return mults_; }
    Primitivity m_primitive() const noexcept { return m_primitive_; }
    bool a_ample() const noexcept { return a_ample_; }
    const std::optional<RRPolynomial>& rr() const noexcept { return rr_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    /// Number of fixed components, k+1.
    std::size_t component_count() const noexcept { return mults_.size(); }

    std::vector<std::int64_t> mobile() const;
    std::vector<std::int64_t> component(std::size_t j) const;
    std::vector<std::int64_t> ample() const;
    std::vector<std::int64_t> fixed_part() const;
    /// mobile_coeff·M + sum sub[j]·B_j.
    std::vector<std::int64_t> combination(std::int64_t mobile_coeff, const std::vector<std::int64_t>& sub) const;

    Rational pair(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) const
    {
        return pairing(gram_, x, y);
    }
    Rational sq(const std::vector<std::int64_t>& x) const { return square(gram_, x); }
    Rational component_square(std::size_t j) const { return gram_.at(j + 1, j + 1); }

    Configuration with_primitivity(Primitivity p) const;
    Configuration with_ample(bool ample) const;

private:
    int n_;
    GramLattice gram_;
    std::vector<std::int64_t> mults_;
    Primitivity m_primitive_;
    bool a_ample_;
    std::optional<RRPolynomial> rr_;
    std::vector<std::string> labels_;
};

/// Numerical shadow of the birational Kähler cone: x pairs nonnegatively with
/// every component of negative square (those are uniruled).
bool bk_shadow_member(const Configuration& c, const std::vector<std::int64_t>& x);
bool bk_shadow_member(const Configuration& c, const DivisorClass& x);

} // namespace hkbase
