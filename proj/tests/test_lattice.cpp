#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hkbase/deduction.hpp"
#include "hkbase/lattice.hpp"
#include "oracles.hpp"

using namespace hkbase;

namespace {

oracle::Matrix doubled(const GramLattice& g)
{
    oracle::Matrix m(g.rank(), std::vector<long long>(g.rank()));
    for (std::size_t i = 0; i < g.rank(); ++i) {
        for (std::size_t j = 0; j < g.rank(); ++j) {
            const auto v = g.at(i, j) * 2;
            REQUIRE(is_integer(v));
            m[i][j] = v.numerator();
        }
    }
    return m;
}

Signature oracle_signature(const GramLattice& g)
{
    const auto in = oracle::inertia(doubled(g));
    return {static_cast<std::size_t>(in.plus), static_cast<std::size_t>(in.zero), static_cast<std::size_t>(in.minus)};
}

} // namespace

TEST_CASE("construction validates symmetry and parity")
{
    CHECK_THROWS_AS(GramLattice::from_rows({{0, 2}, {1, -2}}), InputError);
    CHECK_THROWS_AS(GramLattice::from_rows({{1, 0}, {0, -2}}), InputError);
    CHECK_NOTHROW(GramLattice::from_rows({{1, 0}, {0, -2}}, ParityMode::general));
    CHECK_THROWS_AS(GramLattice(2, {Rational(0), Rational(1, 3), Rational(1, 3), Rational(0)}, ParityMode::general),
                    InputError);
    CHECK_THROWS_AS(GramLattice(2, {Rational(1, 2), Rational(0), Rational(0), Rational(0)}, ParityMode::general),
                    InputError);
    CHECK_NOTHROW(GramLattice(2, {Rational(0), Rational(1, 2), Rational(1, 2), Rational(-2)}, ParityMode::general));
    CHECK_THROWS_AS(GramLattice(2, {Rational(0)}), InputError);
}

TEST_CASE("pairing and square")
{
    const auto iso = GramLattice::from_rows({{0}});
    CHECK(square(iso, {1}) == 0);

    const auto chain = chain_gram(1, -4, -2);
    CHECK(pairing(chain, {1, 0, 0}, {0, 1, 0}) == 2);
    CHECK(square(chain, {1, 1, 1}) == 2);
    CHECK(square(chain, {0, 0, 0}) == 0);

    const auto bm = GramLattice::from_rows({{0, 1}, {1, -2}});
    CHECK(pairing(bm, {2, 1}, {0, 1}) == 0);
    for (std::int64_t d = 1; d <= 12; ++d) {
        CHECK(square(bm, {d, 1}) == 2 * d - 2);
    }
    CHECK(pairing(bm, DivisorClass::basis(2, 0, "F"), DivisorClass::basis(2, 1, "B")) == 1);
    CHECK_THROWS_AS(pairing(bm, {1, 0, 0}, {0, 1}), InputError);
}

TEST_CASE("signature examples")
{
    CHECK(signature(GramLattice::from_rows({{2, 0}, {0, -2}})) == Signature{1, 0, 1});
    CHECK(signature(GramLattice::from_rows({{0, 2}, {2, -4}})) == Signature{1, 0, 1});
    CHECK(signature(chain_gram(1, -4, -2)) == Signature{1, 0, 2});
    CHECK(signature(GramLattice::from_rows({{0, 0}, {0, 0}})) == Signature{0, 2, 0});
    CHECK(signature(GramLattice::from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}, ParityMode::general))
          == Signature{1, 1, 1});
}

TEST_CASE("signature agrees with the characteristic polynomial on random forms")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> entry(-5, 5);
    std::uniform_int_distribution<int> size(1, 5);
    for (int trial = 0; trial < 3000; ++trial) {
        const auto r = static_cast<std::size_t>(size(rng));
        std::vector<Rational> e(r * r);
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = i; j < r; ++j) {
                // Mix half-integers into the general-mode forms.
                const Rational v = (i == j) ? Rational(entry(rng)) : Rational(entry(rng), (trial % 3 == 0) ? 2 : 1);
                e[i * r + j] = e[j * r + i] = v;
            }
        }
        const GramLattice g(r, e, ParityMode::general);
        CHECK(signature(g) == oracle_signature(g));
    }
}

TEST_CASE("lorentzian embeddability")
{
    CHECK_FALSE(lorentzian_embeddable(GramLattice::from_rows({{2, 0}, {0, 0}})));
    CHECK_FALSE(lorentzian_embeddable(GramLattice::from_rows({{0, 0}, {0, 0}})));
    CHECK(lorentzian_embeddable(GramLattice::from_rows({{0, 2}, {2, -4}})));
    CHECK(lorentzian_embeddable(GramLattice::from_rows({{0}})));
    CHECK(lorentzian_embeddable(GramLattice::from_rows({{-2, 0}, {0, 0}})));
    CHECK_FALSE(lorentzian_embeddable(GramLattice::from_rows({{2, 0}, {0, 2}})));
    CHECK(lorentzian_embeddable(Signature{1, 0, 5}));
    CHECK_FALSE(lorentzian_embeddable(Signature{0, 2, 1}));
}

TEST_CASE("embeddability agrees with the search oracle on rank-2 forms")
{
    const oracle::EmbeddingSearch search(2);
    oracle::EmbeddingSearch::Tally tally;
    for (int a = -4; a <= 4; a += 2) {
        for (int b = -4; b <= 4; ++b) {
            for (int c = -4; c <= 4; c += 2) {
                const auto verdict = search.decide_full({{a, b}, {b, c}}, tally);
                REQUIRE(verdict != oracle::Verdict::unresolved);
                CHECK(lorentzian_embeddable(GramLattice::from_rows({{a, b}, {b, c}}))
                      == (verdict == oracle::Verdict::embeds));
            }
        }
    }
    CHECK(tally.unresolved == 0);
}

TEST_CASE("colinearity witness")
{
    const auto g = GramLattice::from_rows({{0, 0}, {0, -2}});
    const auto x = DivisorClass{{1, 0}, "x", DivisorKind::generic};
    CHECK(colinearity_witness(g, x, DivisorClass{{3, 0}, "y", DivisorKind::generic}) == Rational(3));
    CHECK(colinearity_witness(g, DivisorClass{{2, 0}, "x", DivisorKind::generic}, x) == Rational(1, 2));
    const auto zero = GramLattice::from_rows({{0, 0}, {0, 0}});
    CHECK_FALSE(colinearity_witness(zero, x, DivisorClass{{0, 1}, "y", DivisorKind::generic}).has_value());
    CHECK_THROWS_AS(colinearity_witness(g, x, DivisorClass{{0, 1}, "y", DivisorKind::generic}), InputError);
}

TEST_CASE("Markman divisibility multiplier")
{
    CHECK(std::get<std::int64_t>(divisibility_multiplier(-2, Rational(3))) == 3);
    CHECK(std::get<std::int64_t>(divisibility_multiplier(-4, Rational(2))) == 1);
    const auto v = divisibility_multiplier(-4, Rational(3));
    REQUIRE(std::holds_alternative<Violation>(v));
    CHECK(std::get<Violation>(v).rule == "markman-divisibility");
    CHECK(std::get<std::int64_t>(divisibility_multiplier(-6, Rational(-3))) == -1);
    CHECK_THROWS_AS(divisibility_multiplier(0, Rational(1)), PreconditionError);
}

TEST_CASE("transformed Gram")
{
    const auto g = GramLattice::from_rows({{0, 1}, {1, -2}});
    const auto t = g.transformed({{1, 0}, {2, 1}});
    CHECK(t == GramLattice::from_rows({{0, 1}, {1, 2}}));
}
