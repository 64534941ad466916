#include "qgv/special_functions.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace qgv;

namespace {

constexpr double kPi = 3.14159265358979323846;

mp::Complex mpc(double re, double im) { return {mp::Real(re), mp::Real(im)}; }

double rel(const mp::Complex& a, const mp::Complex& b) { return (mp::abs(a - b) / mp::abs(b)).to_double(); }

// G_b from the defining integral on the line Im t = pi min(b, 1/b), evaluated with mpmath at 45 digits
// (points are the exact binary doubles written here).
struct Oracle {
    const char* b;
    double re, im;
    const char* value_re;
    const char* value_im;
};
const Oracle kOracle[] = {
    {"0.75", 0.3, 0.1, "0.4883571167976052108992251020577686553627", "-0.7809698772833748949756695990141934263847"},
    {"0.75", 1.0416666666666667, 0.0, "-0.1332294499456198344324858026188510919791", "-0.9910852201840100785749252152273762873881"},
    {"0.75", 1.2, -0.4, "-1.125394393831238573238983229856099663804", "-1.066643715797520963713354586581054395918"},
    {"0.75", 0.9, 0.7, "0.1562378978639036649109028864816898884707", "-0.9771759745931906957145975952351990276515"},
    {"0.75", 1.9, 0.05, "0.6259218717916919037131241317646782283553", "-0.5808206104448108209557132135044868295879"},
    {"1.3", 0.5, -0.2, "0.1116515703797661636130827138110850587389", "-0.4249769333588100457936439072547569078577"},
    {"1.3", 1.4, 0.3, "0.202903874219605134292352427384800070367", "-1.091086096901363710870962161495898692562"},
};

}  // namespace

TEST_CASE("modular parameter derived fields") {
    const ModularParameter one(1.0);
    CHECK(one.Q() == doctest::Approx(2.0));
    CHECK(std::abs(one.q() - cd(-1.0, 0.0)) < 1e-15);
    const ModularParameter p(0.75);
    CHECK(p.Q() == doctest::Approx(0.75 + 4.0 / 3.0));
    CHECK(std::abs(std::abs(p.zeta()) - 1.0) < 1e-15);
    CHECK(std::abs(std::abs(p.q()) - 1.0) < 1e-15);
    CHECK_THROWS_AS(ModularParameter(0.0), std::invalid_argument);
    CHECK_THROWS_AS(ModularParameter::from_string("-1"), std::invalid_argument);
    CHECK_THROWS_AS(ModularParameter::from_string("abc"), std::invalid_argument);
}

TEST_CASE("G_b against the frozen defining-integral oracle") {
    for (const auto& o : kOracle) {
        GbEvaluator gb(ModularParameter::from_string(o.b));
        mp::PrecisionScope scope(160);
        const mp::Complex want(mp::Real(std::string(o.value_re)), mp::Real(std::string(o.value_im)));
        const auto got = gb.eval(mpc(o.re, o.im), 160).value;
        CAPTURE(o.b);
        CAPTURE(o.re);
        CAPTURE(o.im);
        CHECK(rel(got, want) < 1e-38);
        CHECK(std::abs(gb.eval(cd(o.re, o.im)) - want.to_complex()) < 1e-13);
    }
}

TEST_CASE("G_b(Q/2)^2 equals exp(-i pi Q^2 / 4)") {
    GbEvaluator gb(ModularParameter(0.75));
    mp::PrecisionScope scope(192);
    const mp::Real Q = gb.parameter().Q_mp();
    const auto g = gb.eval(mp::Complex(Q * mp::Real(0.5)), 192).value;
    const auto want = mp::exp(mp::Complex(mp::Real(0.0), -mp::Real::pi() * Q * Q / mp::Real(4.0)));
    CHECK(rel(g * g, want) < 1e-50);
}

TEST_CASE("functional equation in b and 1/b, reflection, log consistency") {
    GbEvaluator gb(ModularParameter(0.75));
    const long prec = 192;
    mp::PrecisionScope scope(prec);
    const mp::Real b = gb.parameter().b_mp(), Q = gb.parameter().Q_mp(), pi = mp::Real::pi();
    const mp::Complex i(mp::Real(0.0), mp::Real(1.0));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> re(-1.5, 3.5), im(-1.0, 1.0);
    int tested = 0;
    while (tested < 12) {
        const cd zd(re(rng), im(rng));
        bool ok = true;
        for (cd w : {zd, zd + 0.75, zd + 4.0 / 3.0, gb.parameter().Q() - zd})
            if (lattice_classify(gb.parameter(), w).distance < 0.05) ok = false;
        if (!ok) continue;
        ++tested;
        const mp::Complex z = mpc(zd.real(), zd.imag());
        const auto Gz = gb.eval(z, prec);
        for (const mp::Real& step : {b, mp::Real(1.0) / b}) {
            const auto lhs = gb.eval(z + mp::Complex(step), prec).value;
            const auto rhs = (mp::Complex(1.0) - mp::exp(mp::Complex(2.0) * pi * i * step * z)) * Gz.value;
            CHECK(rel(rhs, lhs) < 1e-50);
        }
        const auto refl = gb.eval(mp::Complex(Q) - z, prec).value * Gz.value;
        CHECK(rel(refl, mp::exp(pi * i * z * (z - mp::Complex(Q)))) < 1e-50);
        CHECK(rel(mp::exp(Gz.log_value), Gz.value) < 1e-50);
    }
}

TEST_CASE("log G_b at the symmetric point is the principal determination") {
    GbEvaluator gb(ModularParameter(0.75));
    const double im = gb.log_eval(cd(gb.parameter().Q() / 2, 0.0)).imag();
    CHECK(im > -kPi);
    CHECK(im <= kPi);
}

TEST_CASE("log G_b is continuous along the reduction path") {
    GbEvaluator gb(ModularParameter(0.75));
    cd prev = gb.log_eval(cd(0.5, 0.3));
    for (double x = 0.5; x < 6.0; x += 0.01) {
        const cd cur = gb.log_eval(cd(x, 0.3));
        CHECK(std::abs(cur - prev) < 0.5);
        prev = cur;
    }
}

TEST_CASE("self-duality under b -> 1/b") {
    // 0.8 and 1.25 are both exact decimals, so the two parameters are exact reciprocals
    GbEvaluator a(ModularParameter::from_string("0.8")), c(ModularParameter::from_string("1.25"));
    mp::PrecisionScope scope(160);
    for (cd z : {cd(0.4, 0.2), cd(1.7, -0.3), cd(-0.6, 0.5)}) {
        const mp::Complex zz = mpc(z.real(), z.imag());
        CHECK(rel(a.eval(zz, 160).value, c.eval(zz, 160).value) < 1e-40);
    }
}

TEST_CASE("poles and zeros") {
    const ModularParameter p(0.75);
    GbEvaluator gb(p);
    auto lp = lattice_classify(p, cd(-0.75, 0.0));
    CHECK(lp.kind == LatticeKind::Pole);
    CHECK(lp.k == 1);
    CHECK(lp.l == 0);
    lp = lattice_classify(p, cd(p.Q(), 0.0));
    CHECK(lp.kind == LatticeKind::Zero);
    CHECK(lp.k == 0);
    CHECK(lp.l == 0);
    CHECK(lattice_classify(p, cd(p.Q() / 2, 0.0)).kind == LatticeKind::Regular);
    CHECK_THROWS_AS(gb.eval(cd(0.0, 0.0)), GbDomainError);
    CHECK_THROWS_AS(gb.eval(cd(-0.75 - 4.0 / 3.0, 0.0)), GbDomainError);

    // z G_b(z) -> 1/(2 pi): the pole at 0 is simple with that residue
    for (double eps : {1e-4, 1e-5}) {
        const cd z(eps, eps);
        CHECK(std::abs(z * gb.eval(z) - 1.0 / (2 * kPi)) < 10 * eps);
    }
    // the pole at -b is simple as well: (z + b) G_b(z) stays finite and nonzero
    const cd r1 = cd(1e-4, 0) * gb.eval(cd(-0.75 + 1e-4, 0)), r2 = cd(1e-5, 0) * gb.eval(cd(-0.75 + 1e-5, 0));
    CHECK(std::abs(r1 - r2) < 1e-3 * std::abs(r1));
    CHECK(std::abs(r1) > 1e-3);
}

TEST_CASE("asymptotic regimes") {
    GbEvaluator gb(ModularParameter(0.75));
    const long prec = 192;
    mp::PrecisionScope scope(prec);
    for (double x : {-0.5, 0.7, 2.0}) {
        const mp::Complex up = mpc(x, 50.0), down = mpc(x, -50.0);
        CHECK(rel(gb.eval(up, prec).value, gb.asymptotic(up, prec)) < 1e-20);
        CHECK(rel(gb.eval(down, prec).value, gb.asymptotic(down, prec)) < 1e-20);
    }
    CHECK_THROWS_AS(gb.asymptotic(mpc(0.3, 0.1), prec), std::domain_error);
}

TEST_CASE("g_b is unimodular on the positive axis") {
    GbEvaluator gb(ModularParameter(0.75));
    for (double x : {0.05, 0.4, 1.0, 2.7, 30.0}) CHECK(std::abs(std::abs(gb.small_g(x)) - 1.0) < 1e-14);
    // g_b(1) = conj(zeta) / G_b(Q/2)
    const cd want = std::conj(gb.parameter().zeta()) / gb.eval(cd(gb.parameter().Q() / 2, 0));
    CHECK(std::abs(gb.small_g(1.0) - want) < 1e-15);
}

TEST_CASE("double path agrees with the multiprecision path and caches") {
    GbEvaluator gb(ModularParameter(0.75));
    mp::PrecisionScope scope(128);
    for (cd z : {cd(0.2, 1.5), cd(3.1, -0.7), cd(-2.2, 0.4)}) {
        const cd d = gb.eval(z);
        const cd m = gb.eval(mpc(z.real(), z.imag()), 128).value.to_complex();
        CHECK(std::abs(d - m) < 1e-12 * std::abs(m));
    }
    const auto misses = gb.cache_misses();
    (void)gb.eval(cd(0.2, 1.5));
    CHECK(gb.cache_misses() == misses);
    CHECK(gb.cache_hits() > 0);
}
