#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hkbase/rational.hpp"

namespace hkbase {

/// Riemann-Roch polynomial P of a hyperkähler 2n-fold: χ(O(D)) = P(q(D)).
/// coeffs[i] multiplies q^i.
struct RRPolynomial {
    int n = 1;
    std::vector<Rational> coeffs;
    std::string name;

    bool operator==(const RRPolynomial& other) const { return n == other.n && coeffs == other.coeffs; }
};

struct RRValidation {
    bool valid = true;
    std::vector<std::string> violations;
};

/// P(q) = q/2 + 2.
RRPolynomial k3_preset();

/// P(q) = binomial(q/2 + n + 1, n), expanded in q.
RRPolynomial k3n_preset(int n);

/// Looks up "k3" or "k3n" (with `n`). Throws InputError for unknown names.
RRPolynomial preset(const std::string& name, int n);

/// Exact value; throws ArithmeticOverflow when it does not fit 64 bits.
Rational eval(const RRPolynomial& p, const Rational& q);

/// Sign of P(a) - P(b), exact at any size.
int compare_eval(const RRPolynomial& p, const Rational& a, const Rational& b);

/// Constant term n+1, strictly positive higher coefficients, degree n.
RRValidation validate(const RRPolynomial& p);

/// h0 of a class in the birational Kähler cone with square q > 0, i.e. P(q).
/// Throws PreconditionError for q <= 0 and InconsistentInput when P(q) is not
/// an integer exceeding n+1.
std::int64_t h0_big_bk(const RRPolynomial& p, const Rational& q);

/// h0(D1) == h0(D2) for big BK classes; asserts agreement with q1 == q2.
bool h0_equal_iff_q_equal(const RRPolynomial& p, const Rational& q1, const Rational& q2);

/// Smallest h0(2M) allowed by the Hopf inequality h0(2M) > 2h0(M) - 2.
std::int64_t hopf_lower_bound(std::int64_t h0M);

/// h0(P^g, O(d)) = binomial(d+g, g).
std::int64_t lagrangian_h0(int g, std::int64_t d);

/// Exact binomial coefficient; throws InputError on int64 overflow.
std::int64_t binomial(std::int64_t n, std::int64_t k);

} // namespace hkbase
