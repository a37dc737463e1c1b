#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace hkbase {

/// Exact rational used for every pairing, square and polynomial value.
using Rational = boost::rational<std::int64_t>;

/// Canonical rendering: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& r);

/// Parses "p", "-p" or "p/q". Throws InputError on malformed text.
Rational parse_rational(std::string_view text);

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

} // namespace hkbase

// Boost's mixed rational/integer equality recurses under C++20 rewritten
// comparisons. Exact non-template overloads next to the type win overload
// resolution wherever argument-dependent lookup applies.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, std::int64_t b)
{
    return a.denominator() == 1 && a.numerator() == b;
}
inline bool operator==(std::int64_t a, const rational<std::int64_t>& b) { return b == a; }
inline bool operator!=(const rational<std::int64_t>& a, std::int64_t b) { return !(a == b); }
inline bool operator!=(std::int64_t a, const rational<std::int64_t>& b) { return !(b == a); }
inline bool operator==(const rational<std::int64_t>& a, int b) { return a == static_cast<std::int64_t>(b); }
inline bool operator==(int a, const rational<std::int64_t>& b) { return b == static_cast<std::int64_t>(a); }
inline bool operator!=(const rational<std::int64_t>& a, int b) { return !(a == static_cast<std::int64_t>(b)); }
inline bool operator!=(int a, const rational<std::int64_t>& b) { return !(b == static_cast<std::int64_t>(a)); }
} // namespace boost

