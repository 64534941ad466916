#include "qgv/analytic.hpp"

#include <doctest.h>

#include <cmath>

using namespace qgv;
using namespace qgv::an;

namespace {
constexpr double kPi = 3.14159265358979323846;
const cd kI(0.0, 1.0);

const AnalyticEngine& engine() {
    static const AnalyticEngine e(ModularParameter(0.75));
    return e;
}
}  // namespace

TEST_CASE("pointwise functions evaluate their expression trees") {
    const auto& e = engine();
    const auto g = PointwiseFunction::gaussian(1.0, 0.2, 0.3);
    const cd z(0.4, -0.1);
    const cd want = std::exp(-kPi * (z - 0.2) * (z - 0.2) + 0.3 * z);
    CHECK(std::abs(e.eval(g, z) - want) < 1e-15);
    CHECK(std::abs(e.eval(g.shifted(cd(0.1, 0.2)), z) - e.eval(g, z + cd(0.1, 0.2))) < 1e-15);
    const auto h = PointwiseFunction::exp_affine(cd(0.1, 0.0), cd(0.0, 2.0));
    CHECK(std::abs(e.eval(g * h, z) - want * std::exp(0.1 + cd(0, 2) * z)) < 1e-14);
    CHECK(std::abs(e.eval(g + h, z) - (want + std::exp(0.1 + cd(0, 2) * z))) < 1e-14);
    const auto gb = PointwiseFunction::gb_factor(-1, cd(0, -1), cd(1.0, 0.0));
    CHECK(std::abs(e.eval(gb, z) - 1.0 / e.gb().eval(cd(0, -1) * z + 1.0)) < 1e-14);
    CHECK(std::abs(e.eval(PointwiseFunction::scalar(cd(2, 1)), z) - cd(2, 1)) == 0.0);
    CHECK((g * h).count(NodeKind::Gaussian) == 1);
}

TEST_CASE("X^{i sigma} at sigma = -i matches the monomial sum term by term") {
    const auto& e = engine();
    const auto f = test_gaussian(0.1, 0.2);
    const std::array<double, 2> nu{0.4, 0.0};
    const auto gens = rep::sl2_generators();
    const std::vector<std::pair<const rep::ConjugatedGenerator*, std::vector<sym::ExpMonomial>>> cases{
        {&e.K(), {gens.K[0]}}, {&e.E(), gens.E[0].terms}, {&e.F(), gens.F[0].terms}};
    for (const auto& [gen, terms] : cases) {
        CAPTURE(gen->name);
        const auto power = e.apply_power(*gen, cd(0, -1), nu, f);
        const auto direct = e.apply_sum(terms, nu, f);
        for (cd z : {cd(-0.4, 0.1), cd(0.3, -0.2), cd(1.1, 0.05)}) {
            const cd a = e.eval(power, z), b = e.eval(direct, z);
            CHECK(std::abs(a - b) < 1e-11 * std::abs(b));
        }
    }
}

TEST_CASE("complex powers compose additively") {
    const auto& e = engine();
    const auto f = test_gaussian(0.0, 0.1);
    const std::array<double, 2> nu{0.4, 0.0};
    for (const auto* gen : {&e.E(), &e.F()}) {
        CAPTURE(gen->name);
        const auto two = e.apply_power(*gen, 0.3, nu, e.apply_power(*gen, 0.5, nu, f));
        const auto one = e.apply_power(*gen, 0.8, nu, f);
        for (cd z : {cd(-0.2, 0.0), cd(0.6, 0.1)}) CHECK(std::abs(e.eval(two, z) - e.eval(one, z)) < 1e-11 * std::abs(e.eval(one, z)));
    }
}

TEST_CASE("generators are hermitian on Gaussian test functions") {
    const auto& e = engine();
    const auto f = test_gaussian(0.2, 0.3), g = test_gaussian(-0.1, -0.2);
    const std::array<double, 2> nu{0.4, 0.0};
    for (const auto* x : {&e.K(), &e.E(), &e.F()}) {
        CAPTURE(x->name);
        const cd a = e.matrix_element(f, {Power{*x, cd(0, -1)}}, g, nu).value;
        const cd b = std::conj(e.matrix_element(g, {Power{*x, cd(0, -1)}}, f, nu).value);
        CHECK(std::abs(a - b) < 1e-10 * std::abs(a));
    }
}

TEST_CASE("divided power prefactor") {
    const auto& e = engine();
    CHECK_THROWS_AS(e.divided_power_prefactor(0.0), GbDomainError);
    // direct continuation against the reflection route from the strip point Q + i b s
    const double s = 0.3, b = 0.75, Q = e.parameter().Q();
    const cd z = -kI * b * s;
    const cd direct = e.divided_power_prefactor(s);
    const cd via_reflection = std::exp(kI * kPi * z * (z - Q)) / e.gb().eval(Q - z);
    CHECK(std::isfinite(std::abs(direct)));
    CHECK(std::abs(direct - via_reflection) < 1e-12 * std::abs(direct));
}

TEST_CASE("Kac contour: radius independence, two realizations, closed residue form") {
    const auto& e = engine();
    KacCheckSpec spec;
    spec.s = 0.3;
    spec.t = 0.5;
    spec.nu = 0.4;
    spec.f = test_gaussian(0.2, 0.3);
    spec.g = test_gaussian(-0.1, 0.2);
    e.kac_defaults(spec);
    CHECK(spec.radius < spec.eps / 2 + 1e-15);
    CHECK(spec.u_shift < -e.parameter().b() * spec.radius / 2);
    const auto a = e.kac_check(spec);
    CHECK(a.contour_agreement < 1e-8);
    CHECK(std::abs(a.rhs_closed - a.rhs_detour) < 1e-8 * std::abs(a.rhs_detour));
    spec.radius /= 2;
    spec.u_shift = 0.0;
    const auto b = e.kac_check(spec);
    CHECK(std::abs(a.rhs_detour - b.rhs_detour) < 1e-8 * std::abs(a.rhs_detour));
    // measured: the printed kernel integrates to (1/b) times the left side
    CHECK(std::abs(a.ratio - 1.0 / 0.75) < 1e-8);
}

TEST_CASE("Phi_lambda is an eigenfunction with unimodular constant") {
    const auto& e = engine();
    EigenCheckSpec spec;
    spec.lambda = 0.5;
    spec.w = cd(0, 0.3);
    const auto r = e.eigenfunction_check(spec);
    CHECK(r.ratios.size() == 5);
    CHECK(r.u_spread < 1e-9);
    CHECK(r.unimodular < 1e-9);
}

TEST_CASE("Phi_lambda double and multiprecision paths agree") {
    const auto& e = engine();
    mp::PrecisionScope scope(128);
    for (cd u : {cd(-1.0, 0.01), cd(0.3, 0.2), cd(2.0, -0.1)}) {
        const cd d = e.phi_lambda(0.5, u);
        const cd m = phi_lambda_eval(e.gb(), mp::Real(0.5), mp::Complex(u), 128).to_complex();
        CHECK(std::abs(d - m) < 1e-12 * std::abs(m));
    }
}

TEST_CASE("transform measure and line independence of F(lambda)") {
    const auto& e = engine();
    CHECK(e.measure(0.0) == 0.0);
    CHECK(e.measure(0.5) == doctest::Approx(4 * std::sinh(kPi * 0.75 * 0.5) * std::sinh(kPi * 0.5 / 0.75)));
    const auto f = test_gaussian(0.2, 0.3);
    TransformSpec a, b;
    a.u_shift = 0.1;
    b.u_shift = 0.6;
    for (double lam : {0.3, 1.2}) {
        const cd fa = e.transform(f, lam, a), fb = e.transform(f, lam, b);
        CHECK(std::abs(fa - fb) < 1e-9 * std::abs(fa));
    }
}
