#include "hkbase/deduction.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

namespace hkbase {

namespace {

std::string component_name(const Configuration& c, std::size_t j)
{
    return c.labels().at(j + 1);
}

Rational half(std::int64_t v)
{
    return Rational(v, 2);
}

bool is_zero_vector(const std::vector<std::int64_t>& v)
{
    return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
}

void check_sub(const Configuration& c, const std::vector<std::int64_t>& sub)
{
    if (sub.size() != c.component_count()) {
        throw InputError("sub-multiplicity vector has wrong length");
    }
    for (std::size_t j = 0; j < sub.size(); ++j) {
        if (sub[j] < 0 || sub[j] > c.multiplicities()[j]) {
            throw InputError("sub-multiplicity out of range for component " + std::to_string(j + 1));
        }
    }
}

Violation violation(std::string rule, std::string detail, std::vector<long long> witness = {})
{
    return Violation{std::move(rule), std::move(detail), std::move(witness)};
}

std::vector<long long> as_witness(const std::vector<std::int64_t>& v)
{
    return {v.begin(), v.end()};
}

std::string describe(const std::vector<std::int64_t>& sub)
{
    std::ostringstream out;
    out << "(";
    for (std::size_t j = 0; j < sub.size(); ++j) {
        out << (j ? "," : "") << sub[j];
    }
    out << ")";
    return out.str();
}

} // namespace

std::string class_tag(const ClassificationResult& r)
{
    if (std::holds_alternative<PrimeFixed>(r)) {
        return "PrimeFixed";
    }
    if (std::holds_alternative<Chain>(r)) {
        return "Chain";
    }
    return "Contradiction";
}

GramLattice chain_gram(int k, std::int64_t d, std::int64_t q_last, ParityMode mode)
{
    if (k < 1) {
        throw InputError("chain needs k >= 1");
    }
    if (d >= -1) {
        throw InputError("chain needs d < -1");
    }
    if (q_last > -1 || 2 * q_last < d) {
        throw InputError("chain needs -1 >= q_last >= d/2");
    }
    if (mode == ParityMode::even && (d % 2 != 0 || q_last % 2 != 0)) {
        throw InputError("even lattice needs even d and q_last (got d = " + std::to_string(d)
                         + ", q_last = " + std::to_string(q_last) + ")");
    }
    const std::size_t rank = static_cast<std::size_t>(k) + 2;
    std::vector<Rational> e(rank * rank, Rational(0));
    auto set = [&](std::size_t i, std::size_t j, const Rational& v) {
        e[i * rank + j] = v;
        e[j * rank + i] = v;
    };
    const Rational link = half(-d);
    set(0, 1, link);
    for (std::size_t j = 1; j <= static_cast<std::size_t>(k); ++j) {
        set(j, j, Rational(d));
        set(j, j + 1, link);
    }
    set(rank - 1, rank - 1, Rational(q_last));
    return GramLattice(rank, std::move(e), mode);
}

std::vector<std::int64_t> admissible_q_last(std::int64_t d, ParityMode mode)
{
    std::vector<std::int64_t> out;
    for (std::int64_t q = -1; 2 * q >= d; --q) {
        if (mode == ParityMode::even && q % 2 != 0) {
            continue;
        }
        // q(B_k, B_{k+1}) = -d/2 must be a multiple of -q_last/2.
        if (d % q != 0) {
            continue;
        }
        out.push_back(q);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

bool chain_admissible(int k, std::int64_t d, std::int64_t q_last, ParityMode mode)
{
    if (k < 1 || d >= -1) {
        return false;
    }
    const auto qs = admissible_q_last(d, mode);
    if (std::find(qs.begin(), qs.end(), q_last) == qs.end()) {
        return false;
    }
    return lorentzian_embeddable(chain_gram(k, d, q_last, mode));
}

Configuration chain_configuration(int k, std::int64_t d, std::int64_t q_last, int n, ParityMode mode)
{
    return Configuration(n, chain_gram(k, d, q_last, mode), std::vector<std::int64_t>(static_cast<std::size_t>(k) + 1, 1),
                         Primitivity::yes, false);
}

std::optional<Violation> check_setup(const Configuration& c)
{
    const auto a = c.ample();
    const auto m = c.mobile();
    if (!bk_shadow_member(c, a)) {
        for (std::size_t j = 0; j < c.component_count(); ++j) {
            const auto p = c.pair(a, c.component(j));
            if (c.component_square(j) < 0 && p < 0) {
                return violation("setup-bk-ample",
                                 "A is not in the BK shadow: q(A, " + component_name(c, j) + ") = " + to_string(p),
                                 {static_cast<long long>(j)});
            }
        }
    }
    if (!bk_shadow_member(c, m)) {
        return violation("setup-bk-mobile", "M is not in the BK shadow");
    }
    const auto qa = c.sq(a);
    if (qa <= 0) {
        return violation("setup-positive", "q(A) = " + to_string(qa) + " is not positive");
    }
    const auto sig = signature(c.gram());
    if (!lorentzian_embeddable(sig)) {
        std::ostringstream msg;
        msg << "signature (" << sig.n_plus << "," << sig.n_zero << "," << sig.n_minus
            << ") does not embed in a hyperbolic lattice";
        return violation("index-theorem", msg.str());
    }
    const auto qm = c.sq(m);
    const auto qam = c.pair(a, m);
    if (qm < 0 || qam <= 0) {
        return violation("positive-cone", "M must lie in the closed positive cone of A: q(M) = " + to_string(qm)
                                              + ", q(A, M) = " + to_string(qam));
    }
    const auto count = c.component_count();
    for (std::size_t j = 0; j < count; ++j) {
        if (c.pair(m, c.component(j)) < 0) {
            return violation("effective-intersection", "q(M, " + component_name(c, j) + ") < 0",
                             {static_cast<long long>(j)});
        }
        for (std::size_t i = j + 1; i < count; ++i) {
            if (c.gram().at(i + 1, j + 1) < 0) {
                return violation("effective-intersection",
                                 "distinct primes " + component_name(c, i) + ", " + component_name(c, j) + " pair negatively",
                                 {static_cast<long long>(i), static_cast<long long>(j)});
            }
        }
    }
    for (std::size_t j = 0; j < count; ++j) {
        const auto qj = c.component_square(j);
        if (qj >= 0) {
            continue;
        }
        for (std::size_t x = 0; x < c.gram().rank(); ++x) {
            const auto r = divisibility_multiplier(qj.numerator(), c.gram().at(j + 1, x));
            if (const auto* v = std::get_if<Violation>(&r)) {
                auto out = *v;
                out.detail = "E = " + component_name(c, j) + ", D = " + c.labels()[x] + ": " + out.detail;
                out.witness = {static_cast<long long>(j), static_cast<long long>(x)};
                return out;
            }
        }
    }
    return std::nullopt;
}

std::optional<Violation> rule_lemma1(const Configuration& c, const std::vector<std::int64_t>& sub)
{
    check_sub(c, sub);
    if (sub == c.multiplicities()) {
        return std::nullopt;
    }
    const auto x = c.combination(1, sub);
    const auto qx = c.sq(x);
    if (bk_shadow_member(c, x) && qx > 0) {
        std::string detail = "M + B' with B' = " + describe(sub) + " is a big BK class (square " + to_string(qx)
                             + ") but B' != B";
        if (is_zero_vector(sub)) {
            detail += "; requires q(M) = 0";
        }
        return violation("lemma1", detail, as_witness(sub));
    }
    return std::nullopt;
}

std::optional<Violation> rule_notprimitive(const Configuration& c)
{
    if (c.m_primitive() == Primitivity::no && c.component_count() > 1) {
        return violation("notprimitive",
                         "non-primitive mobile part with " + std::to_string(c.component_count()) + " fixed components");
    }
    return std::nullopt;
}

std::optional<Violation> rule_lemma2(const Configuration& c, const std::vector<std::int64_t>& sub)
{
    check_sub(c, sub);
    if (c.m_primitive() != Primitivity::yes || sub == c.multiplicities() || is_zero_vector(sub)) {
        return std::nullopt;
    }
    const auto x = c.combination(0, sub);
    if (bk_shadow_member(c, x) && c.sq(x) == 0) {
        return violation("lemma2", "B' = " + describe(sub) + " is an isotropic BK class strictly inside B",
                         as_witness(sub));
    }
    return std::nullopt;
}

std::optional<Violation> rule_fixed_positive(const Configuration& c, const std::vector<std::int64_t>& sub)
{
    check_sub(c, sub);
    if (is_zero_vector(sub)) {
        return std::nullopt;
    }
    const auto x = c.combination(0, sub);
    const auto qx = c.sq(x);
    if (qx > 0 && bk_shadow_member(c, x)) {
        return violation("fixed-positive",
                         "B' = " + describe(sub) + " has h0 = 1 but is a big BK class of square " + to_string(qx),
                         as_witness(sub));
    }
    return std::nullopt;
}

std::optional<Violation> rule_technical(const Configuration& c, std::size_t i, std::size_t j)
{
    if (i >= c.component_count() || j >= c.component_count() || i == j) {
        throw InputError("rule_technical needs two distinct component indices");
    }
    const auto qi = c.component_square(i);
    const auto qj = c.component_square(j);
    const auto pij = c.gram().at(i + 1, j + 1);
    if (qi >= 0 || qj >= 0 || pij != -qi / 2) {
        return std::nullopt;
    }
    const std::vector<long long> witness{static_cast<long long>(i), static_cast<long long>(j)};
    const auto names = component_name(c, i) + ", " + component_name(c, j);
    if (std::holds_alternative<Violation>(divisibility_multiplier(qj.numerator(), pij))) {
        return violation("technical-lemma", names + ": -q(B_{j+1}) = " + to_string(-qj) + " does not divide -q(B_j) = "
                                                + to_string(-qi), witness);
    }
    if (qi != qj && -qj > -qi / 2) {
        return violation("technical-lemma", names + ": neither q(B_j) = q(B_{j+1}) nor -q(B_{j+1}) <= -q(B_j)/2",
                         witness);
    }
    return std::nullopt;
}

KeyOutcome rule_key(const Configuration& c, std::size_t j)
{
    const auto m = c.mobile();
    const auto bj = c.component(j);
    const auto qmb = c.pair(m, bj);
    if (qmb <= 0) {
        throw PreconditionError("rule_key needs q(M, B_j) > 0");
    }
    const auto qb = c.component_square(j);
    if (qb >= 0) {
        return KeyCase::mobile_plus_component;
    }
    auto m_plus = m;
    m_plus[j + 1] = 1;
    if (bk_shadow_member(c, m_plus)) {
        return KeyCase::mobile_plus_component;
    }
    auto doubled = m;
    doubled[0] = 2;
    doubled[j + 1] = 1;
    const std::vector<long long> witness{static_cast<long long>(j)};
    const auto name = component_name(c, j);
    if (qmb != -qb / 2) {
        return violation("key-lemma", "q(M, " + name + ") = " + to_string(qmb) + " differs from -q(" + name + ")/2", witness);
    }
    if (c.sq(doubled) != -qb) {
        return violation("key-lemma", "q(2M + " + name + ") differs from -q(" + name + ")", witness);
    }
    if (!bk_shadow_member(c, doubled)) {
        return violation("key-lemma", "neither M + " + name + " nor 2M + " + name + " is in the BK shadow", witness);
    }
    const auto qa = c.sq(c.ample());
    if (qa >= -qb) {
        return violation("key-lemma", "q(A) = " + to_string(qa) + " is not below -q(" + name + ") = " + to_string(-qb),
                         witness);
    }
    return KeyCase::doubled_mobile;
}

std::optional<Violation> rule_ample(const Configuration& c)
{
    if (!c.a_ample()) {
        return std::nullopt;
    }
    const auto a = c.ample();
    std::optional<std::size_t> positive;
    std::optional<std::size_t> negative;
    for (std::size_t j = 0; j < c.component_count(); ++j) {
        const auto p = c.pair(a, c.component(j));
        if (p == 0) {
            return violation("ample-orthogonal", "ample A is orthogonal to " + component_name(c, j),
                             {static_cast<long long>(j)});
        }
        (p > 0 ? positive : negative) = j;
    }
    if (positive && negative) {
        return violation("ample-orthogonal", "a positive combination of " + component_name(c, *positive) + " and "
                                                 + component_name(c, *negative) + " is orthogonal to ample A",
                         {static_cast<long long>(*positive), static_cast<long long>(*negative)});
    }
    return std::nullopt;
}

namespace {

/// The stepwise deduction for one primitivity hypothesis, recording every
/// check in the trace.
class Deduction {
public:
    Deduction(const Configuration& c, Certificate* trace) : c_(c), trace_(trace) {}

    ClassificationResult run();

private:
    void pass(const std::string& rule)
    {
        if (trace_) {
            trace_->push_back({rule, "pass"});
        }
    }

    Contradiction fail(Violation v)
    {
        if (trace_) {
            trace_->push_back({v.rule, "fail: " + v.detail});
        }
        return Contradiction{std::move(v)};
    }

    Contradiction fail(std::string rule, std::string detail, std::vector<long long> witness = {})
    {
        return fail(violation(std::move(rule), std::move(detail), std::move(witness)));
    }

    std::optional<Contradiction> consistency();
    ClassificationResult prime_fixed();
    ClassificationResult chain();

    Rational q(std::size_t i, std::size_t j) const { return c_.gram().at(i + 1, j + 1); }
    Rational qm(std::size_t j) const { return c_.gram().at(0, j + 1); }

    const Configuration& c_;
    Certificate* trace_;
};

ClassificationResult Deduction::run()
{
    if (auto v = check_setup(c_)) {
        return fail(*v);
    }
    pass("setup");

    const std::vector<std::int64_t> none(c_.component_count(), 0);
    if (auto v = rule_lemma1(c_, none)) {
        return fail(*v);
    }
    pass("lemma1-isotropic-mobile");

    if (auto v = rule_notprimitive(c_)) {
        return fail(*v);
    }
    if (c_.m_primitive() == Primitivity::no) {
        pass("notprimitive");
    }

    // Components of nonnegative square are BK classes; they are excluded
    // unless the fixed part is that single reduced prime.
    const bool reduced_prime = c_.component_count() == 1 && c_.multiplicities()[0] == 1;
    for (std::size_t j = 0; j < c_.component_count(); ++j) {
        auto unit = none;
        unit[j] = 1;
        if (auto v = rule_fixed_positive(c_, unit)) {
            return fail(*v);
        }
        if (auto v = rule_lemma2(c_, unit)) {
            return fail(*v);
        }
    }
    pass("nonnegative-components");

    auto result = reduced_prime ? prime_fixed() : chain();
    if (is_contradiction(result)) {
        return result;
    }
    if (auto bad = consistency()) {
        return *bad;
    }

    const auto m = c_.mobile();
    const auto b = c_.fixed_part();
    if (c_.sq(m) != 0 || c_.sq(b) > 0 || c_.pair(m, b) <= 0) {
        return fail("final-sanity", "expected q(M) = 0, q(B) <= 0, q(M, B) > 0");
    }
    pass("final-sanity");
    return result;
}

ClassificationResult Deduction::prime_fixed()
{
    const auto qb = c_.component_square(0);
    if (qb > 0) {
        return fail("fixed-positive", "prime fixed part of positive square " + to_string(qb));
    }
    pass("prime-square");
    return PrimeFixed{qb.numerator()};
}

ClassificationResult Deduction::chain()
{
    const auto count = c_.component_count();
    const auto& mults = c_.multiplicities();

    // Step 1: B_1 pairs positively with M and has the smallest -q among those.
    std::optional<std::size_t> first;
    for (std::size_t j = 0; j < count; ++j) {
        if (qm(j) > 0 && (!first || -c_.component_square(j) < -c_.component_square(*first))) {
            first = j;
        }
    }
    if (!first) {
        return fail("step1-selection", "no component pairs positively with M");
    }
    const std::size_t b1 = *first;
    const auto d_rational = c_.component_square(b1);
    const std::vector<long long> w1{static_cast<long long>(b1)};

    auto m_plus = c_.mobile();
    m_plus[b1 + 1] = 1;
    if (bk_shadow_member(c_, m_plus)) {
        // q(M + B_1) >= q(M, B_1) > 0, so the lemma1 rule would force B = B_1.
        return fail(count == 1 ? "step1-multiplicity" : "step1-case1",
                    "M + " + c_.labels()[b1 + 1] + " is a big BK class but B is larger", w1);
    }
    if (qm(b1) != -d_rational / 2) {
        return fail("key-lemma", "q(M, B_1) = " + to_string(qm(b1)) + " differs from -q(B_1)/2", w1);
    }
    auto doubled = c_.mobile();
    doubled[0] = 2;
    doubled[b1 + 1] = 1;
    if (!bk_shadow_member(c_, doubled) || c_.sq(doubled) != -d_rational) {
        return fail("key-lemma", "2M + B_1 is not a BK class of square -q(B_1)", w1);
    }
    pass("step1-key-case2");

    for (std::size_t j = 0; j < count; ++j) {
        if (j != b1 && qm(j) != 0) {
            return fail("step1-mobile-pairing", "q(M, " + c_.labels()[j + 1] + ") must vanish",
                        {static_cast<long long>(j)});
        }
    }
    pass("step1-mobile-pairing");
    if (mults[b1] != 1) {
        return fail("step1-multiplicity", "b_1 = " + std::to_string(mults[b1]) + " but must be 1", w1);
    }
    pass("step1-multiplicity");
    const auto a = c_.ample();
    if (c_.pair(a, c_.component(b1)) != 0) {
        return fail("step1-orthogonality", "q(A, B_1) must vanish", w1);
    }
    pass("step1-orthogonality");
    const auto qa = c_.sq(a);
    if (qa >= -d_rational) {
        return fail("key-lemma", "q(A) = " + to_string(qa) + " is not below -q(B_1) = " + to_string(-d_rational), w1);
    }
    if (d_rational >= -1) {
        return fail("step1-square", "q(B_1) = " + to_string(d_rational) + " is not below -1", w1);
    }
    pass("step1-square");
    const std::int64_t d = d_rational.numerator();
    const Rational link = half(-d);

    // Steps 2 and 3: walk the chain, one successor per link.
    std::vector<std::size_t> order{b1};
    std::vector<std::size_t> remaining;
    for (std::size_t j = 0; j < count; ++j) {
        if (j != b1) {
            remaining.push_back(j);
        }
    }
    auto partial = c_.mobile();
    partial[b1 + 1] = 1;
    for (std::size_t l = 1; l < count; ++l) {
        const std::size_t cur = order.back();
        const std::vector<long long> wl{static_cast<long long>(cur)};
        const auto& name = c_.labels()[cur + 1];
        if (l >= 2) {
            const auto ql = c_.component_square(cur);
            if (2 * ql >= d) {
                return fail("step3-lemma1", "q(" + name + ") >= d/2 makes M + B_1 + ... + " + name
                                                + " a big BK class before the chain ends", wl);
            }
            if (ql != d) {
                return fail("step3-technical", "q(" + name + ") = " + to_string(ql) + " must equal d = " + std::to_string(d),
                            wl);
            }
            if (c_.pair(a, c_.component(cur)) != 0) {
                return fail("step3-orthogonality", "q(A, " + name + ") must vanish", wl);
            }
        }
        std::vector<std::size_t> successors;
        for (auto j : remaining) {
            if (q(j, cur) > 0) {
                successors.push_back(j);
            }
        }
        if (successors.empty()) {
            return fail("step3-successor", name + " has no successor in the chain", wl);
        }
        if (successors.size() > 1) {
            return fail("step3-unique-successor", name + " has several successors",
                        {static_cast<long long>(successors[0]), static_cast<long long>(successors[1])});
        }
        const auto next = successors.front();
        const std::vector<long long> wn{static_cast<long long>(next)};
        if (mults[next] != 1) {
            return fail("step3-multiplicity", "b = " + std::to_string(mults[next]) + " for successor "
                                                  + c_.labels()[next + 1] + " but must be 1", wn);
        }
        if (q(next, cur) != link) {
            return fail("step3-successor-pairing", "q(" + name + ", " + c_.labels()[next + 1] + ") must be -d/2", wn);
        }
        order.push_back(next);
        remaining.erase(std::find(remaining.begin(), remaining.end(), next));
        partial[next + 1] = 1;
    }
    pass("step3-chain");

    // Step 4: A in BK bounds the terminal square.
    const auto last = order.back();
    const auto q_last = c_.component_square(last);
    if (2 * q_last < d) {
        return fail("step4-terminal-bound", "q(B_{k+1}) = " + to_string(q_last) + " is below d/2",
                    {static_cast<long long>(last)});
    }
    if (q_last > -1) {
        return fail("step4-terminal-square", "q(B_{k+1}) = " + to_string(q_last) + " is not below 0",
                    {static_cast<long long>(last)});
    }
    pass("step4-terminal-bound");

    const int k = static_cast<int>(count) - 1;
    std::vector<std::vector<std::int64_t>> basis;
    basis.push_back(c_.mobile());
    for (auto j : order) {
        basis.push_back(c_.component(j));
    }
    if (c_.gram().transformed(basis) != chain_gram(k, d, q_last.numerator(), c_.gram().mode())) {
        return fail("chain-shape", "renumbered Gram differs from the chain Gram");
    }
    pass("chain-shape");
    return Chain{k, d, q_last.numerator(), order};
}

std::optional<Contradiction> Deduction::consistency()
{
    std::optional<Contradiction> bad;
    for_each_sub_multiplicity(c_.multiplicities(), [&](const std::vector<std::int64_t>& sub) {
        if (bad) {
            return;
        }
        for (auto* rule : {&rule_lemma1, &rule_lemma2, &rule_fixed_positive}) {
            if (auto v = (*rule)(c_, sub)) {
                bad = fail(*v);
                return;
            }
        }
    });
    if (bad) {
        return bad;
    }
    pass("lemma1");
    pass("lemma2");
    pass("fixed-positive");
    for (std::size_t i = 0; i < c_.component_count(); ++i) {
        for (std::size_t j = 0; j < c_.component_count(); ++j) {
            if (i == j) {
                continue;
            }
            if (auto v = rule_technical(c_, i, j)) {
                return fail(*v);
            }
        }
    }
    pass("technical-lemma");
    for (std::size_t j = 0; j < c_.component_count(); ++j) {
        if (qm(j) > 0) {
            const auto outcome = rule_key(c_, j);
            if (const auto* v = std::get_if<Violation>(&outcome)) {
                return fail(*v);
            }
        }
    }
    pass("key-lemma");
    if (c_.rr()) {
        try {
            (void)h0_big_bk(*c_.rr(), c_.sq(c_.ample()));
        } catch (const InconsistentInput& e) {
            return fail("rr-h0", e.what());
        }
        pass("rr-h0");
    }
    if (auto v = rule_ample(c_)) {
        return fail(*v);
    }
    if (c_.a_ample()) {
        pass("ample-orthogonal");
    }
    return std::nullopt;
}

} // namespace

std::vector<BranchResult> classify_branches(const Configuration& c)
{
    std::vector<BranchResult> out;
    if (c.m_primitive() == Primitivity::unknown) {
        for (auto p : {Primitivity::yes, Primitivity::no}) {
            out.push_back({p, Deduction(c.with_primitivity(p), nullptr).run()});
        }
    } else {
        out.push_back({c.m_primitive(), Deduction(c, nullptr).run()});
    }
    return out;
}

ClassificationResult classify(const Configuration& c, Certificate* trace)
{
    if (c.m_primitive() != Primitivity::unknown) {
        return Deduction(c, trace).run();
    }
    Certificate yes_trace;
    Certificate no_trace;
    auto yes = Deduction(c.with_primitivity(Primitivity::yes), &yes_trace).run();
    auto no = Deduction(c.with_primitivity(Primitivity::no), &no_trace).run();
    const bool use_no = is_contradiction(yes) && !is_contradiction(no);
    if (trace) {
        for (auto& e : use_no ? no_trace : yes_trace) {
            trace->push_back({(use_no ? "[no] " : "[yes] ") + e.rule, e.outcome});
        }
    }
    return use_no ? no : yes;
}

MobilityReport check_2A_mobility(const Configuration& c)
{
    if (is_contradiction(classify(c))) {
        throw PreconditionError("check_2A_mobility needs a configuration that classify accepts");
    }
    const auto count = c.component_count();
    const auto m = c.mobile();
    const auto b = c.fixed_part();
    auto two_m_b = b;
    two_m_b[0] = 2;

    MobilityReport report;
    report.all_pass = true;
    std::vector<std::int64_t> ones(count, 1);
    for_each_sub_multiplicity(ones, [&](const std::vector<std::int64_t>& removed) {
        MobilitySubset s;
        s.removed = removed;
        // M' = 2M + B + (B - B')
        auto mp = c.combination(2, c.multiplicities());
        for (std::size_t j = 0; j < count; ++j) {
            mp[j + 1] += c.multiplicities()[j] - removed[j];
        }
        s.q_mobile = c.sq(mp);
        s.q_mobile_with_2m_b = c.pair(mp, two_m_b);
        s.twice_q_mobile_m = 2 * c.pair(mp, m);
        s.twice_q_2m_b_m = 2 * c.pair(two_m_b, m);
        s.twice_q_b_m = 2 * c.pair(b, m);
        s.in_bk_shadow = bk_shadow_member(c, mp);
        s.inequalities_hold = s.q_mobile >= s.q_mobile_with_2m_b && s.q_mobile_with_2m_b >= s.twice_q_mobile_m
                              && s.twice_q_mobile_m >= s.twice_q_2m_b_m && s.twice_q_2m_b_m == s.twice_q_b_m
                              && s.twice_q_b_m > 0;
        const bool empty = std::all_of(removed.begin(), removed.end(), [](std::int64_t r) { return r == 0; });
        if (empty) {
            s.pass = s.in_bk_shadow && s.inequalities_hold;
        } else {
            s.excluded = !s.in_bk_shadow || (s.inequalities_hold && s.q_mobile > 0);
            s.pass = s.excluded;
        }
        report.all_pass = report.all_pass && s.pass;
        report.subsets.push_back(std::move(s));
    });
    return report;
}

bool hk4_negative_square_step(const Rational& qL_B1, const RRPolynomial& p)
{
    if (qL_B1 <= 0) {
        throw PreconditionError("hk4 step needs q(L, B_1) > 0");
    }
    if (p.n != 2) {
        throw InputError("hk4 step needs a fourfold Riemann-Roch polynomial (n = 2)");
    }
    return h0_big_bk(p, 2 * qL_B1) > 3;
}

} // namespace hkbase
