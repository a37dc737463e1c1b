#include "hkbase/fixtures.hpp"

#include <algorithm>
#include <sstream>
#include <type_traits>

#include "hkbase/errors.hpp"
#include "hkbase/rr.hpp"

namespace hkbase {

namespace {

template <typename T>
std::string str(const T& v)
{
    if constexpr (std::is_same_v<T, Rational>) {
        return to_string(v);
    } else if constexpr (std::is_same_v<T, bool>) {
        return v ? "true" : "false";
    } else if constexpr (std::is_same_v<T, std::string>) {
        return v;
    } else {
        return std::to_string(v);
    }
}

class Builder {
public:
    explicit Builder(std::string name) { result_.name = std::move(name); }

    template <typename E, typename C>
    void check(std::string description, const E& expected, const C& computed)
    {
        result_.checks.push_back({std::move(description), str(expected), str(computed), expected == computed});
    }

    FixtureResult& result() { return result_; }

private:
    FixtureResult result_;
};

std::string signature_text(const Signature& s)
{
    std::ostringstream out;
    out << "(" << s.n_plus << "," << s.n_zero << "," << s.n_minus << ")";
    return out.str();
}

// Configuration over (M = d·F, B) from a rank-2 lattice over (F, B).
Configuration fibration_configuration(const GramLattice& lattice, std::int64_t d, int n, RRPolynomial rr)
{
    const auto gram = lattice.transformed({{d, 0}, {0, 1}});
    return Configuration(n, gram, {1}, d >= 2 ? Primitivity::no : Primitivity::yes, false, std::move(rr),
                         {"M", "B"});
}

} // namespace

bool FixtureResult::all_pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

const FixtureCheck* FixtureResult::find(const std::string& description) const
{
    for (const auto& c : checks) {
        if (c.description == description) {
            return &c;
        }
    }
    return nullptr;
}

std::string describe(const ClassificationResult& r)
{
    std::ostringstream out;
    if (const auto* p = std::get_if<PrimeFixed>(&r)) {
        out << "PrimeFixed{qB=" << p->qB << "}";
    } else if (const auto* c = std::get_if<Chain>(&r)) {
        out << "Chain{k=" << c->k << ",d=" << c->d << ",q_last=" << c->q_last << "}";
    } else {
        out << "Contradiction{" << std::get<Contradiction>(r).violation.rule << "}";
    }
    return out.str();
}

FixtureResult mayer_fixture(std::int64_t d)
{
    if (d < 1) {
        throw InputError("mayer fixture needs d >= 1");
    }
    Builder b("mayer(d=" + std::to_string(d) + ")");
    const auto lattice = GramLattice::from_rows({{0, 1}, {1, -2}});
    const std::vector<std::int64_t> a{d, 1};
    const std::vector<std::int64_t> section{0, 1};
    const auto qa = square(lattice, a);
    b.check("q(A)", Rational(2 * d - 2), qa);
    b.check("q(A, B)", Rational(d - 2), pairing(lattice, a, section));
    b.check("P_K3(q(A))", Rational(d + 1), eval(k3_preset(), qa));
    b.check("h0(P^1, O(d))", d + 1, lagrangian_h0(1, d));

    const auto config = fibration_configuration(lattice, d, 1, k3_preset());
    b.check("A in BK shadow", d >= 2, bk_shadow_member(config, config.ample()));
    b.check("classify", std::string(d >= 2 ? "PrimeFixed{qB=-2}" : "Contradiction{setup-bk-ample}"),
            describe(classify(config)));
    if (d >= 2) {
        b.check("|2A| mobile", true, check_2A_mobility(config).all_pass);
    }
    b.result().gram = config.gram();
    b.result().configuration = config;
    return std::move(b.result());
}

FixtureResult beauville_mukai_fixture(int g, std::int64_t d, std::int64_t qFB)
{
    if (g < 2 || d < 1 || qFB < 1) {
        throw InputError("beauville-mukai fixture needs g >= 2, d >= 1, qFB >= 1");
    }
    Builder b("beauville-mukai(g=" + std::to_string(g) + ",d=" + std::to_string(d) + ",qFB=" + std::to_string(qFB) + ")");
    const auto lattice = GramLattice::from_rows({{0, qFB}, {qFB, -2}});
    const std::vector<std::int64_t> a{d, 1};
    const auto qa = square(lattice, a);
    const auto p = k3n_preset(g);
    const bool bk = d * qFB >= 2;
    b.check("q(B)", Rational(-2), square(lattice, {0, 1}));
    b.check("q(A)", Rational(2 * d * qFB - 2), qa);
    b.check("q(A, B)", Rational(d * qFB - 2), pairing(lattice, a, {0, 1}));
    // h0(A) = h0(dF): the sections of A all come from the base P^g. The
    // identity is specific to a section-like B with q(F, B) = 1.
    if (qFB == 1) {
        b.check("P(q(A)) = h0(P^g, O(d))", Rational(lagrangian_h0(g, d)), eval(p, qa));
    }

    const auto config = fibration_configuration(lattice, d, g, p);
    b.check("A in BK shadow", bk, bk_shadow_member(config, config.ample()));
    const auto classified = config.with_primitivity(d >= 2 ? Primitivity::no : Primitivity::yes).with_ample(false);
    b.check("classify", std::string(bk ? "PrimeFixed{qB=-2}" : "Contradiction{setup-bk-ample}"),
            describe(classify(classified)));
    if (bk) {
        b.check("|2A| mobile", true, check_2A_mobility(classified).all_pass);
    }
    b.result().gram = config.gram();
    b.result().configuration = config;
    return std::move(b.result());
}

FixtureResult hk4_fixture(std::int64_t qLB)
{
    if (qLB <= 0) {
        throw PreconditionError("hk4 fixture needs q(L, B_1) > 0");
    }
    Builder b("hk4(qLB=" + std::to_string(qLB) + ")");
    const auto lattice = GramLattice::from_rows({{0, qLB}, {qLB, 0}});
    const std::vector<std::int64_t> sum{1, 1};
    const auto q = square(lattice, sum);
    const auto p = k3n_preset(2);
    b.check("q(L + B_1)", Rational(2 * qLB), q);
    b.check("P(q(L + B_1))", Rational(binomial(qLB + 3, 2)), eval(p, q));
    b.check("h0(L) = h0(P^2, O(1))", std::int64_t{3}, lagrangian_h0(2, 1));
    b.check("contradiction", true, hk4_negative_square_step(Rational(qLB), p));
    b.result().gram = lattice;
    return std::move(b.result());
}

FixtureResult chain_fixture(int k, std::int64_t d, std::int64_t q_last)
{
    Builder b("chain(k=" + std::to_string(k) + ",d=" + std::to_string(d) + ",q_last=" + std::to_string(q_last) + ")");
    const auto config = chain_configuration(k, d, q_last);
    const auto a = config.ample();
    const auto qa = config.sq(a);
    std::ostringstream expected_chain;
    expected_chain << "Chain{k=" << k << ",d=" << d << ",q_last=" << q_last << "}";
    b.check("classify", expected_chain.str(), describe(classify(config)));
    b.check("signature", signature_text({1, 0, static_cast<std::size_t>(k) + 1}), signature_text(signature(config.gram())));
    b.check("q(A)", Rational(q_last - d), qa);
    b.check("0 < q(A) < -d", true, qa > 0 && qa < -d);
    for (int j = 0; j < k; ++j) {
        b.check("q(A, B" + std::to_string(j + 1) + ")", Rational(0), config.pair(a, config.component(static_cast<std::size_t>(j))));
    }
    b.check("q(A, B" + std::to_string(k + 1) + ")", Rational(-d, 2) + q_last,
            config.pair(a, config.component(static_cast<std::size_t>(k))));
    b.check("|2A| mobile", true, check_2A_mobility(config).all_pass);
    b.result().gram = config.gram();
    b.result().configuration = config;
    return std::move(b.result());
}

} // namespace hkbase
