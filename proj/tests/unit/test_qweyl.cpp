#include "qgv/qweyl.hpp"

#include <doctest.h>

#include <random>

using namespace qgv::sym;

namespace {

class RandomMono {
public:
    explicit RandomMono(std::uint64_t seed) : g_(seed) {}
    Rational r(int lo, int hi, int den) {
        std::uniform_int_distribution<int> d(lo, hi);
        return Rational(d(g_), den);
    }
    ExpMonomial operator()() {
        ExpMonomial m;
        for (auto& c : m.lin.c) c = r(-4, 4, 2);
        m.phase = PhaseScalar(r(0, 7, 4), r(-3, 3, 2), r(-2, 2, 3));
        return m;
    }

private:
    std::mt19937_64 g_;
};

// bare linear forms are read as exp(...)
ExpMonomial mono(const std::string& s) { return parse_monomial(s.find("exp(") == std::string::npos ? "exp(" + s + ")" : s); }

}  // namespace

TEST_CASE("phase scalars normalize the constant part") {
    const PhaseScalar p(Rational(5, 2), 1, 0);
    CHECK(p.c0 == Rational(1, 2));
    CHECK((PhaseScalar::minus_one() * PhaseScalar::minus_one()).is_one());
    CHECK((p * p.inverse()).is_one());
}

TEST_CASE("q^2 commutation of the two E1 terms") {
    const auto x = mono("pb*w - ib*dw"), y = mono("-pb*w - ib*dw");
    CHECK(commutation_phase(x, y) == PhaseScalar::q_power(2));
    CHECK(commutation_phase(x, x).is_one());
}

TEST_CASE("q U1^-1 U2 for E2 of the s1s2s1 representation") {
    const auto u1 = mono("pb*v - pb*w - ib*dv"), u2 = mono("pb*u - ib*du - ib*dv + ib*dw");
    const auto w = mono_mul(mono_mul(ExpMonomial(PhaseScalar::q_power(1), {}), mono_inverse(u1)), u2);
    CHECK(w == mono("pb*u - pb*v + pb*w - ib*du + ib*dw"));
}

TEST_CASE("inverse and adjoint") {
    CHECK(mono_inverse(mono("pb*u")) == mono("-pb*u"));
    const ExpMonomial half(PhaseScalar::q_power(Rational(1, 2)), LinForm::pos(U));
    CHECK(mono_inverse(half).phase == PhaseScalar::q_power(Rational(-1, 2)));
    RandomMono rnd(11);
    for (int k = 0; k < 20; ++k) {
        const auto m = rnd();
        CHECK(mono_inverse(mono_inverse(m)) == m);
        CHECK(mono_mul(m, mono_inverse(m)).is_scalar());
        CHECK(mono_mul(m, mono_inverse(m)).phase.is_one());
        CHECK(mono_adjoint(mono_adjoint(m)) == m);
    }
}

TEST_CASE("associativity and the commutation identity on random monomials") {
    RandomMono rnd(3);
    for (int k = 0; k < 100; ++k) {
        const auto a = rnd(), b = rnd(), c = rnd();
        CHECK(mono_mul(mono_mul(a, b), c) == mono_mul(a, mono_mul(b, c)));
        const auto ab = mono_mul(a, b), ba = mono_mul(b, a);
        CHECK(ab == ExpMonomial(commutation_phase(a, b) * ba.phase, ba.lin));
    }
}

TEST_CASE("conjugation by a quadratic exponential") {
    // e^{-w d_u} shifts u by -w
    const auto g = parse_quad("-1 : pb*w : ib*du");
    CHECK(g.conjugate(mono("pb*u")) == mono("pb*u - pb*w"));
    CHECK(QuadExp{}.conjugate(mono("pb*u - ib*dv")) == mono("pb*u - ib*dv"));
    // e^{-pi i w^2 / 2}: the momentum picks up the position, d_w -> d_w + w-term
    const auto h = parse_quad("-1/2 : pb*w : pb*w");
    const auto pushed = h.conjugate(mono("ib*dw"));
    CHECK(pushed.lin.d(W) == Rational(1));
    CHECK(pushed.lin.a(W) != Rational(0));
    CHECK(h.inverse().conjugate(pushed) == mono("ib*dw"));

    RandomMono rnd(5);
    for (int k = 0; k < 30; ++k) {
        const auto a = rnd(), b = rnd();
        CHECK(g.conjugate(mono_mul(a, b)) == mono_mul(g.conjugate(a), g.conjugate(b)));
        CHECK(h.conjugate(mono_mul(a, b)) == mono_mul(h.conjugate(a), h.conjugate(b)));
    }
}

TEST_CASE("coordinate transpositions") {
    const auto uv = parse_perm("uv"), vw = parse_perm("vw");
    CHECK(uv.apply(mono("pb*u")) == mono("pb*v"));
    CHECK(uv.apply(vw.apply(mono("-2*pb*v"))) == mono("-2*pb*w"));
    RandomMono rnd(17);
    for (int k = 0; k < 10; ++k) {
        const auto m = rnd();
        CHECK(uv.apply(uv.apply(m)) == m);
        CHECK(vw.apply(vw.apply(m)) == m);
    }
}

TEST_CASE("monomial sums") {
    const MonomialSum a = MonomialSum(mono("pb*u")) + MonomialSum(mono("ib*du"));
    const MonomialSum unit(ExpMonomial{});
    CHECK(a * unit == a);
    CHECK((a - a).is_zero());
    // pb is pi b, so e^{pi b u} e^{i b d_u} = q^{-1} e^{i b d_u} e^{pi b u}
    const auto u = mono("pb*u"), v = mono("ib*du");
    const auto sq = a * a;
    CHECK(sq.terms().size() == 3);
    CHECK(commutation_phase(u, v) == PhaseScalar::q_power(-1));
}

TEST_CASE("text forms round trip") {
    RandomMono rnd(23);
    for (int k = 0; k < 20; ++k) {
        const auto m = rnd();
        CHECK(parse_monomial(to_string(m)) == m);
        CHECK(parse_linform(to_string(m.lin)) == m.lin);
    }
    const auto q = parse_quad("-1 : pb*w : ib*du; 1/2 : pb*v : pb*v");
    CHECK(parse_quad(to_string(q)) == q);
    CHECK_THROWS_AS(parse_monomial("exp(pb*x)"), std::invalid_argument);
}
