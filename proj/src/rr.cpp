#include "hkbase/rr.hpp"

#include <algorithm>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hkbase/errors.hpp"

namespace hkbase {

RRPolynomial k3_preset()
{
    return RRPolynomial{1, {Rational(2), Rational(1, 2)}, "k3"};
}

RRPolynomial k3n_preset(int n)
{
    if (n < 1) {
        throw InputError("k3n preset needs n >= 1");
    }
    // binomial(x + n + 1, n) = prod_{i=1..n} (x + 1 + i) / i with x = q/2.
    std::vector<Rational> poly{Rational(1)};
    for (int i = 1; i <= n; ++i) {
        const Rational c0(1 + i, i);
        const Rational c1(1, 2 * i);
        std::vector<Rational> next(poly.size() + 1, Rational(0));
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k] += poly[k] * c0;
            next[k + 1] += poly[k] * c1;
        }
        poly = std::move(next);
    }
    return RRPolynomial{n, std::move(poly), "k3n"};
}

RRPolynomial preset(const std::string& name, int n)
{
    if (name == "k3") {
        return k3_preset();
    }
    if (name == "k3n") {
        return k3n_preset(n);
    }
    throw InputError("unknown Riemann-Roch preset '" + name + "' (expected k3 or k3n)");
}

namespace {

using Wide = boost::multiprecision::cpp_rational;

Wide widen(const Rational& r) { return Wide(r.numerator()) / r.denominator(); }

// Horner intermediates outgrow 64 bits long before the value does.
Wide eval_wide(const RRPolynomial& p, const Rational& q)
{
    const Wide x = widen(q);
    Wide acc = 0;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
        acc = acc * x + widen(*it);
    }
    return acc;
}

} // namespace

int compare_eval(const RRPolynomial& p, const Rational& a, const Rational& b)
{
    const auto pa = eval_wide(p, a);
    const auto pb = eval_wide(p, b);
    return pa < pb ? -1 : (pb < pa ? 1 : 0);
}

Rational eval(const RRPolynomial& p, const Rational& q)
{
    const Wide acc = eval_wide(p, q);
    const auto num = boost::multiprecision::numerator(acc);
    const auto den = boost::multiprecision::denominator(acc);
    const boost::multiprecision::cpp_int lo = std::numeric_limits<std::int64_t>::min();
    const boost::multiprecision::cpp_int hi = std::numeric_limits<std::int64_t>::max();
    if (num < lo || num > hi || den > hi) {
        throw ArithmeticOverflow("P(" + to_string(q) + ") does not fit 64-bit rationals");
    }
    return Rational(num.convert_to<std::int64_t>(), den.convert_to<std::int64_t>());
}

RRValidation validate(const RRPolynomial& p)
{
    RRValidation out;
    auto fail = [&](std::string msg) {
        out.valid = false;
        out.violations.push_back(std::move(msg));
    };
    if (p.n < 1) {
        fail("n must be positive");
    }
    if (p.coeffs.size() != static_cast<std::size_t>(p.n) + 1) {
        std::ostringstream msg;
        msg << "degree: expected " << p.n + 1 << " coefficients, got " << p.coeffs.size();
        fail(msg.str());
    }
    if (!p.coeffs.empty() && p.coeffs[0] != Rational(p.n + 1)) {
        fail("c_0 = " + to_string(p.coeffs[0]) + " differs from n+1 = " + std::to_string(p.n + 1));
    }
    for (std::size_t i = 1; i < p.coeffs.size(); ++i) {
        if (p.coeffs[i] <= 0) {
            fail("c_" + std::to_string(i) + " = " + to_string(p.coeffs[i]) + " is not strictly positive");
        }
    }
    return out;
}

std::int64_t h0_big_bk(const RRPolynomial& p, const Rational& q)
{
    if (q <= 0) {
        throw PreconditionError("h0_big_bk needs q(D) > 0, got " + to_string(q));
    }
    const Rational value = eval(p, q);
    if (!is_integer(value)) {
        throw InconsistentInput("P(" + to_string(q) + ") = " + to_string(value) + " is not an integer");
    }
    if (value <= p.n + 1) {
        throw InconsistentInput("P(" + to_string(q) + ") = " + to_string(value) + " does not exceed n+1");
    }
    return value.numerator();
}

bool h0_equal_iff_q_equal(const RRPolynomial& p, const Rational& q1, const Rational& q2)
{
    if (q1 <= 0 || q2 <= 0) {
        throw PreconditionError("h0_equal_iff_q_equal needs positive squares");
    }
    const bool same_h0 = compare_eval(p, q1, q2) == 0;
    if (same_h0 != (q1 == q2)) {
        throw InconsistentInput("polynomial is not strictly increasing on the given squares");
    }
    return same_h0;
}

std::int64_t hopf_lower_bound(std::int64_t h0M)
{
    if (h0M < 2) {
        throw PreconditionError("hopf_lower_bound needs h0(M) >= 2");
    }
    return 2 * h0M - 1;
}

std::int64_t binomial(std::int64_t n, std::int64_t k)
{
    if (n < 0 || k < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    std::int64_t result = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        // result * (n - k + i) / i is exact; cancel the gcds first so only a
        // genuinely unrepresentable result overflows.
        const std::int64_t g = std::gcd(result, i);
        const std::int64_t factor = (n - k + i) / (i / g);
        std::int64_t next = 0;
        if (__builtin_mul_overflow(result / g, factor, &next)) {
            throw InputError("binomial coefficient overflows 64 bits");
        }
        result = next;
    }
    return result;
}

std::int64_t lagrangian_h0(int g, std::int64_t d)
{
    if (g < 1 || d < 0) {
        throw PreconditionError("lagrangian_h0 needs g >= 1 and d >= 0");
    }
    return binomial(d + g, g);
}

} // namespace hkbase
