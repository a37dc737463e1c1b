#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hkbase/errors.hpp"
#include "hkbase/rational.hpp"

namespace hkbase {

enum class ParityMode { even, general };

/// Symmetric pairing table of the Beauville-Bogomolov form on a finite set of
/// classes. Entries have denominator dividing 2; in even mode the table is
/// integral with even diagonal.
class GramLattice {
public:
    GramLattice() = default;

    /// Row-major entries. Throws InputError when the table is not square,
    /// not symmetric, or violates the parity mode.
    GramLattice(std::size_t rank, std::vector<Rational> entries, ParityMode mode = ParityMode::even);

    static GramLattice from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows,
                                 ParityMode mode = ParityMode::even);
    static GramLattice from_rows(const std::vector<std::vector<Rational>>& rows,
                                 ParityMode mode = ParityMode::even);

    std::size_t rank() const noexcept { return rank_; }
    ParityMode mode() const noexcept { return mode_; }
    const Rational& at(std::size_t i, std::size_t j) const { return entries_[i * rank_ + j]; }
    const std::vector<Rational>& entries() const noexcept { return entries_; }

    /// Gram of the classes given by the rows of `basis` (integer coordinates).
    GramLattice transformed(const std::vector<std::vector<std::int64_t>>& basis) const;

    bool operator==(const GramLattice&) const = default;

private:
    std::size_t rank_ = 0;
    std::vector<Rational> entries_;
    ParityMode mode_ = ParityMode::even;
};

enum class DivisorKind { mobile, prime, generic };

struct DivisorClass {
    std::vector<std::int64_t> coords;
    std::string label;
    DivisorKind kind = DivisorKind::generic;

    static DivisorClass zero(std::size_t rank) { return {std::vector<std::int64_t>(rank, 0), "0", DivisorKind::generic}; }
    static DivisorClass basis(std::size_t rank, std::size_t index, std::string label = {},
                              DivisorKind kind = DivisorKind::generic);

    bool is_zero() const noexcept;
};

struct Signature {
    std::size_t n_plus = 0;
    std::size_t n_zero = 0;
    std::size_t n_minus = 0;

    std::size_t rank() const noexcept { return n_plus + n_zero + n_minus; }
    bool operator==(const Signature&) const = default;
};

Rational pairing(const GramLattice& lattice, const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y);
Rational pairing(const GramLattice& lattice, const DivisorClass& x, const DivisorClass& y);
Rational square(const GramLattice& lattice, const std::vector<std::int64_t>& x);
Rational square(const GramLattice& lattice, const DivisorClass& x);

/// Exact inertia by symmetric congruence reduction over the rationals.
Signature signature(const GramLattice& lattice);

/// Whether the classes can sit injectively inside a hyperbolic lattice of
/// signature (1, m): either one positive direction and no kernel, or a
/// negative semidefinite form with at most one isotropic kernel direction.
bool lorentzian_embeddable(const Signature& sig);
bool lorentzian_embeddable(const GramLattice& lattice);

/// For two isotropic, mutually orthogonal classes: the rational λ with
/// y = λ·x when they are dependent, nullopt when they are independent (such a
/// pair cannot live in a hyperbolic Picard lattice). Throws InputError when
/// the classes are not isotropic and orthogonal.
std::optional<Rational> colinearity_witness(const GramLattice& lattice, const DivisorClass& x,
                                            const DivisorClass& y);

/// Markman divisibility: for a prime E with q(E) = qE < 0, -qE must divide
/// 2·q(E, D). Returns m = 2·q(E,D)/(-qE), or the violation.
std::variant<std::int64_t, Violation> divisibility_multiplier(std::int64_t qE, const Rational& qED);

} // namespace hkbase
