#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hkbase/errors.hpp"
#include "hkbase/rational.hpp"

using hkbase::Rational;

TEST_CASE("rendering and parsing")
{
    CHECK(hkbase::to_string(Rational(3)) == "3");
    CHECK(hkbase::to_string(Rational(-3, 2)) == "-3/2");
    CHECK(hkbase::to_string(Rational(4, -8)) == "-1/2");
    CHECK(hkbase::parse_rational("-7") == Rational(-7));
    CHECK(hkbase::parse_rational("6/4") == Rational(3, 2));
    CHECK(hkbase::parse_rational("+5") == Rational(5));
    for (const char* bad : {"", "1/0", "x", "1/", "/2", "1.5", "2/-"}) {
        CHECK_THROWS_AS(hkbase::parse_rational(bad), hkbase::InputError);
    }
}

TEST_CASE("mixed integer comparison terminates and is exact")
{
    CHECK(Rational(4, 2) == 2);
    CHECK(2 == Rational(4, 2));
    CHECK(Rational(1, 2) != 0);
    CHECK(std::int64_t{-3} == Rational(-6, 2));
    CHECK(Rational(5, 3) != std::int64_t{1});
    CHECK(hkbase::is_integer(Rational(8, 4)));
    CHECK_FALSE(hkbase::is_integer(Rational(1, 3)));
}

TEST_CASE("round trip on random values")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> num(-1000, 1000);
    std::uniform_int_distribution<std::int64_t> den(1, 60);
    for (int i = 0; i < 500; ++i) {
        const Rational r(num(rng), den(rng));
        CHECK(hkbase::parse_rational(hkbase::to_string(r)) == r);
    }
}
