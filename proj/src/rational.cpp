#include "hkbase/rational.hpp"

#include <charconv>

#include "hkbase/errors.hpp"

namespace hkbase {

std::string to_string(const Rational& r)
{
    if (r.denominator() == 1) {
        return std::to_string(r.numerator());
    }
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole)
{
    std::int64_t value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && text.front() == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last) {
        throw InputError("not a rational number: '" + std::string(whole) + "'");
    }
    return value;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_int(text, text));
    }
    const auto num = parse_int(text.substr(0, slash), text);
    const auto den = parse_int(text.substr(slash + 1), text);
    if (den == 0) {
        throw InputError("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(num, den);
}

} // namespace hkbase
