#include "hkbase/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace hkbase {

namespace {

void check_length(const GramLattice& lattice, std::size_t n)
{
    if (n != lattice.rank()) {
        std::ostringstream msg;
        msg << "class of length " << n << " does not match lattice rank " << lattice.rank();
        throw InputError(msg.str());
    }
}

} // namespace

GramLattice::GramLattice(std::size_t rank, std::vector<Rational> entries, ParityMode mode)
    : rank_(rank), entries_(std::move(entries)), mode_(mode)
{
    if (rank_ == 0) {
        throw InputError("Gram table must have positive rank");
    }
    if (entries_.size() != rank_ * rank_) {
        throw InputError("Gram table is not square");
    }
    for (std::size_t i = 0; i < rank_; ++i) {
        for (std::size_t j = 0; j < rank_; ++j) {
            const auto& v = at(i, j);
            if (v != at(j, i)) {
                std::ostringstream msg;
                msg << "Gram table is not symmetric at (" << i << "," << j << ")";
                throw InputError(msg.str());
            }
            if (2 % v.denominator() != 0) {
                throw InputError("Gram entry " + to_string(v) + " has denominator not dividing 2");
            }
            if (i == j && !is_integer(v)) {
                throw InputError("Gram diagonal entry " + to_string(v) + " is not an integer");
            }
            if (mode_ == ParityMode::even) {
                if (!is_integer(v)) {
                    throw InputError("even lattice requires integral pairings, got " + to_string(v));
                }
                if (i == j && v.numerator() % 2 != 0) {
                    throw InputError("even lattice requires even squares, got " + to_string(v));
                }
            }
        }
    }
}

GramLattice GramLattice::from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows, ParityMode mode)
{
    std::vector<Rational> entries;
    for (const auto& row : rows) {
        if (row.size() != rows.size()) {
            throw InputError("Gram table is not square");
        }
        for (auto v : row) {
            entries.emplace_back(v);
        }
    }
    return GramLattice(rows.size(), std::move(entries), mode);
}

GramLattice GramLattice::from_rows(const std::vector<std::vector<Rational>>& rows, ParityMode mode)
{
    std::vector<Rational> entries;
    for (const auto& row : rows) {
        if (row.size() != rows.size()) {
            throw InputError("Gram table is not square");
        }
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return GramLattice(rows.size(), std::move(entries), mode);
}

GramLattice GramLattice::transformed(const std::vector<std::vector<std::int64_t>>& basis) const
{
    std::vector<Rational> out;
    out.reserve(basis.size() * basis.size());
    for (const auto& x : basis) {
        for (const auto& y : basis) {
            out.push_back(pairing(*this, x, y));
        }
    }
    return GramLattice(basis.size(), std::move(out), mode_);
}

DivisorClass DivisorClass::basis(std::size_t rank, std::size_t index, std::string label, DivisorKind kind)
{
    DivisorClass c{std::vector<std::int64_t>(rank, 0), std::move(label), kind};
    c.coords.at(index) = 1;
    return c;
}

bool DivisorClass::is_zero() const noexcept
{
    return std::all_of(coords.begin(), coords.end(), [](auto v) { return v == 0; });
}

Rational pairing(const GramLattice& lattice, const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y)
{
    check_length(lattice, x.size());
    check_length(lattice, y.size());
    Rational sum(0);
    const auto n = lattice.rank();
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0) {
            continue;
        }
        Rational row(0);
        for (std::size_t j = 0; j < n; ++j) {
            if (y[j] != 0) {
                row += lattice.at(i, j) * y[j];
            }
        }
        sum += row * x[i];
    }
    return sum;
}

Rational pairing(const GramLattice& lattice, const DivisorClass& x, const DivisorClass& y)
{
    return pairing(lattice, x.coords, y.coords);
}

Rational square(const GramLattice& lattice, const std::vector<std::int64_t>& x)
{
    return pairing(lattice, x, x);
}

Rational square(const GramLattice& lattice, const DivisorClass& x)
{
    return pairing(lattice, x.coords, x.coords);
}

Signature signature(const GramLattice& lattice)
{
    const auto n = lattice.rank();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = lattice.at(i, j);
        }
    }

    Signature sig;
    // Active block is a[k..n)[k..n). Each pass removes one row/column by congruence.
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = n;
        for (std::size_t i = k; i < n; ++i) {
            if (a[i][i] != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot == n) {
            // Zero diagonal: a nonzero off-diagonal a[k][j] lets row/col k += row/col j
            // produce diagonal 2·a[k][j] (a[j][j] is zero as well).
            std::size_t partner = n;
            for (std::size_t i = k; i < n && partner == n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    if (a[i][j] != 0) {
                        pivot = i;
                        partner = j;
                        break;
                    }
                }
            }
            if (partner == n) {
                sig.n_zero += n - k;
                return sig;
            }
            for (std::size_t t = k; t < n; ++t) {
                a[pivot][t] += a[partner][t];
            }
            for (std::size_t t = k; t < n; ++t) {
                a[t][pivot] += a[t][partner];
            }
        }
        std::swap(a[k], a[pivot]);
        for (auto& row : a) {
            std::swap(row[k], row[pivot]);
        }

        const Rational p = a[k][k];
        if (p > 0) {
            ++sig.n_plus;
        } else {
            ++sig.n_minus;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) {
                continue;
            }
            const Rational f = a[i][k] / p;
            for (std::size_t j = k; j < n; ++j) {
                a[i][j] -= f * a[k][j];
            }
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            a[k][i] = 0;
            a[i][k] = 0;
        }
        // Rows below were reduced; restore symmetry of the trailing block.
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                a[j][i] = a[i][j];
            }
        }
    }
    return sig;
}

bool lorentzian_embeddable(const Signature& sig)
{
    return (sig.n_plus == 1 && sig.n_zero == 0) || (sig.n_plus == 0 && sig.n_zero <= 1);
}

bool lorentzian_embeddable(const GramLattice& lattice)
{
    return lorentzian_embeddable(signature(lattice));
}

std::optional<Rational> colinearity_witness(const GramLattice& lattice, const DivisorClass& x, const DivisorClass& y)
{
    if (square(lattice, x) != 0 || square(lattice, y) != 0 || pairing(lattice, x, y) != 0) {
        throw InputError("colinearity_witness needs two isotropic, mutually orthogonal classes");
    }
    std::optional<Rational> lambda;
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        const auto xi = x.coords[i];
        const auto yi = y.coords[i];
        if (xi == 0) {
            if (yi != 0) {
                return std::nullopt;
            }
            continue;
        }
        const Rational ratio(yi, xi);
        if (lambda && *lambda != ratio) {
            return std::nullopt;
        }
        lambda = ratio;
    }
    return lambda;
}

std::variant<std::int64_t, Violation> divisibility_multiplier(std::int64_t qE, const Rational& qED)
{
    if (qE >= 0) {
        throw PreconditionError("divisibility_multiplier needs q(E) < 0");
    }
    const Rational m = qED * 2 / (-qE);
    if (!is_integer(m)) {
        std::ostringstream msg;
        msg << "Markman divisibility: -q(E) = " << -qE << " does not divide 2q(E,D) = " << to_string(qED * 2);
        return Violation{"markman-divisibility", msg.str(), {}};
    }
    return m.numerator();
}

} // namespace hkbase
