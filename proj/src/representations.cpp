#include "qgv/representations.hpp"

#include <sstream>
#include <stdexcept>

namespace qgv::rep {

using sym::ExpMonomial;
using sym::LinForm;
using sym::MonomialSum;
using sym::PhasePoly;
using sym::PhaseScalar;
using sym::Rational;

namespace {

ExpMonomial m(const std::string& lin) { return ExpMonomial(sym::parse_linform(lin)); }

ExpMonomial prod(std::initializer_list<ExpMonomial> fs) {
    ExpMonomial out;
    for (auto& f : fs) out = sym::mono_mul(out, f);
    return out;
}

ExpMonomial qpow(Rational r) { return ExpMonomial(PhaseScalar::q_power(r), LinForm{}); }

MonomialSum one() { return MonomialSum(ExpMonomial{}); }
PhasePoly qp(Rational r) { return PhasePoly(PhaseScalar::q_power(r)); }
PhasePoly minus() { return PhasePoly(PhaseScalar::minus_one()); }


}  // namespace

std::string word_name(Word w) {
    switch (w) {
        case Word::S1: return "s1";
        case Word::S1S2S1: return "s1s2s1";
        case Word::S2S1S2: return "s2s1s2";
    }
    return "?";
}

Word parse_word(const std::string& s) {
    if (s == "s1") return Word::S1;
    if (s == "s1s2s1") return Word::S1S2S1;
    if (s == "s2s1s2") return Word::S2S1S2;
    throw std::invalid_argument("unknown reduced word '" + s + "'");
}

MonomialSum Generator::sum() const {
    MonomialSum s;
    for (auto& t : terms) s = s + MonomialSum(t);
    return s;
}

GeneratorSet sl2_generators() {
    GeneratorSet g;
    g.word = Word::S1;
    g.rank = 1;
    g.cartan = {{2}};
    g.K = {m("2*pb*u")};
    g.E = {{"E1",
            {prod({qpow(Rational(-1, 2)), m("pb*nu1 + pb*u"), m("-ib*du")}),
             prod({qpow(Rational(1, 2)), m("-pb*nu1 - pb*u"), m("-ib*du")})}}};
    g.F = {{"F1",
            {prod({qpow(Rational(-1, 2)), m("pb*nu1 - pb*u"), m("ib*du")}),
             prod({qpow(Rational(1, 2)), m("-pb*nu1 + pb*u"), m("ib*du")})}}};
    return g;
}

GeneratorSet sl3_generators(Word w) {
    if (w == Word::S2S1S2) return index_swap(sl3_generators(Word::S1S2S1));
    if (w != Word::S1S2S1) throw std::invalid_argument("sl3 needs a reduced word of length 3");
    GeneratorSet g;
    g.word = Word::S1S2S1;
    g.rank = 2;
    g.cartan = {{2, -1}, {-1, 2}};
    g.K = {m("-2*pb*nu1 + 2*pb*u - pb*v + 2*pb*w"), m("-2*pb*nu2 - pb*u + 2*pb*v - pb*w")};
    g.E = {{"E1", {m("pb*w - ib*dw"), m("-pb*w - ib*dw")}},
           {"E2",
            {m("pb*v - pb*w - ib*dv"), m("pb*u - ib*du - ib*dv + ib*dw"), m("-pb*u - ib*du - ib*dv + ib*dw"),
             m("-pb*v + pb*w - ib*dv")}}};
    g.F = {{"F1",
            {m("2*pb*nu1 - 2*pb*u + pb*v - pb*w + ib*dw"), m("2*pb*nu1 - pb*u + ib*du"),
             m("-2*pb*nu1 + pb*u + ib*du"), m("-2*pb*nu1 + 2*pb*u - pb*v + pb*w + ib*dw")}},
           {"F2", {m("2*pb*nu2 + pb*u - pb*v + ib*dv"), m("-2*pb*nu2 - pb*u + pb*v + ib*dv")}}};
    return g;
}

GeneratorSet index_swap(const GeneratorSet& g) {
    if (g.rank != 2) throw std::invalid_argument("index swap needs rank 2");
    auto swap_nu = [](ExpMonomial x) {
        std::swap(x.lin.n(0), x.lin.n(1));
        return x;
    };
    auto swap_gen = [&](Generator x, const std::string& name) {
        x.name = name;
        for (auto& t : x.terms) t = swap_nu(t);
        return x;
    };
    GeneratorSet out;
    out.rank = 2;
    out.cartan = g.cartan;
    out.word = g.word == Word::S1S2S1 ? Word::S2S1S2 : Word::S1S2S1;
    out.K = {swap_nu(g.K[1]), swap_nu(g.K[0])};
    out.E = {swap_gen(g.E[1], "E1"), swap_gen(g.E[0], "E2")};
    out.F = {swap_gen(g.F[1], "F1"), swap_gen(g.F[0], "F2")};
    return out;
}

std::string RelationInstance::id() const {
    std::ostringstream os;
    os << family << "(" << i;
    if (j) os << "," << j;
    os << ")";
    return os.str();
}

std::vector<RelationInstance> relation_manifest(const GeneratorSet& g) {
    std::vector<RelationInstance> out;
    if (g.rank == 1) {
        out = {{"KKinv", 1, 0}, {"KE", 1, 1},     {"KF", 1, 1},     {"EF", 1, 1},      {"HE", 1, 1},
               {"HF", 1, 1},    {"Qchain", 1, 0}, {"Qchain", 2, 0}, {"Casimir", 1, 0}};
        return out;
    }
    out.push_back({"KK", 1, 2});
    out.push_back({"KKinv", 1, 0});
    out.push_back({"KKinv", 2, 0});
    for (const char* fam : {"KE", "KF", "EF"})
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) out.push_back({fam, i, j});
    out.push_back({"SerreE", 1, 2});
    out.push_back({"SerreE", 2, 1});
    out.push_back({"SerreF", 1, 2});
    out.push_back({"SerreF", 2, 1});
    out.push_back({"HE", 1, 1});
    out.push_back({"HE", 2, 2});
    return out;
}

namespace {

// [H_i, e^{L}] = -sigma(L_{K_i}, L) e^{L} since K_i = e^{pi i b^2 H_i}.
MonomialSum grading_residual(const sym::ExpMonomial& k, const Generator& x, int expected) {
    MonomialSum r;
    for (auto& t : x.terms) {
        const Rational grade = -sym::sigma(k.lin, t.lin);
        if (grade != Rational(expected)) {
            if (grade.denominator() != 1) throw std::domain_error("fractional grading");
            r = r + MonomialSum(t) * PhasePoly(PhaseScalar{}, grade.numerator() - expected);
        }
    }
    return r;
}

}  // namespace

RelationResult check_relation(const GeneratorSet& g, const RelationInstance& r) {
    const int i = r.i - 1, j = r.j - 1;
    auto K = [&](int k) { return MonomialSum(g.K[k]); };
    auto Kinv = [&](int k) { return MonomialSum(sym::mono_inverse(g.K[k])); };
    auto E = [&](int k) { return g.E[k].sum(); };
    auto F = [&](int k) { return g.F[k].sum(); };
    MonomialSum res;
    const std::string& f = r.family;
    if (f == "KK") {
        res = K(i) * K(j) - K(j) * K(i);
    } else if (f == "KKinv") {
        res = K(i) * Kinv(i) - one();
    } else if (f == "KE") {
        res = K(i) * E(j) - E(j) * K(i) * qp(g.cartan[i][j]);
    } else if (f == "KF") {
        res = K(i) * F(j) - F(j) * K(i) * qp(-g.cartan[i][j]);
    } else if (f == "EF") {
        // rescaled: E F - F E = -(q - q^{-1}) (K - K^{-1}) delta_ij
        res = E(i) * F(j) - F(j) * E(i);
        if (i == j) res = res + (K(i) - Kinv(i)) * (qp(1) + qp(-1) * minus());
    } else if (f == "SerreE" || f == "SerreF") {
        auto X = [&](int k) { return f == "SerreE" ? E(k) : F(k); };
        res = X(i) * X(i) * X(j) - X(i) * X(j) * X(i) * (qp(1) + qp(-1)) + X(j) * X(i) * X(i);
    } else if (f == "HE") {
        res = grading_residual(g.K[i], g.E[j], g.cartan[i][j]);
    } else if (f == "HF") {
        res = grading_residual(g.K[i], g.F[j], -g.cartan[i][j]);
    } else if (f == "Qchain") {
        // consecutive terms of E_1 (i = 1) or F_1 (i = 2) satisfy U V = q^2 V U
        const Generator& x = i == 0 ? g.E[0] : g.F[0];
        for (std::size_t a = 0; a < x.terms.size(); ++a)
            for (std::size_t b = a + 1; b < x.terms.size(); ++b) {
                MonomialSum u(x.terms[a]), v(x.terms[b]);
                res = res + (u * v - v * u * qp(2));
            }
    } else if (f == "Casimir") {
        // F E - q K - q^{-1} K^{-1} is central; test against E
        MonomialSum c = F(0) * E(0) - K(0) * qp(1) - Kinv(0) * qp(-1);
        res = c * E(0) - E(0) * c;
    } else {
        throw std::invalid_argument("unknown relation family " + f);
    }
    return {r, res};
}

std::string manifest_text() {
    std::ostringstream os;
    os << "# relation manifest\nversion 1\n";
    auto dump = [&](const std::string& alg, const GeneratorSet& g) {
        auto rels = relation_manifest(g);
        os << "set " << alg << " " << word_name(g.word) << " " << rels.size() << "\n";
        for (auto& r : rels) os << "  " << r.id() << "\n";
    };
    dump("sl2", sl2_generators());
    dump("sl3", sl3_generators(Word::S1S2S1));
    dump("sl3", sl3_generators(Word::S2S1S2));
    return os.str();
}

ConjugatedGenerator conjugated_form(const Generator& x) {
    if (x.terms.size() < 2) throw std::invalid_argument("conjugated form needs at least two terms");
    for (std::size_t a = 0; a < x.terms.size(); ++a)
        for (std::size_t b = a + 1; b < x.terms.size(); ++b)
            if (!(sym::commutation_phase(x.terms[a], x.terms[b]) == PhaseScalar::q_power(2)))
                throw std::domain_error(x.name + ": terms are not a q^2-commuting chain");
    ConjugatedGenerator c;
    c.name = x.name;
    c.core = x.terms[0];
    const ExpMonomial q_uinv = sym::mono_mul(qpow(1), sym::mono_inverse(c.core));
    for (std::size_t k = 1; k < x.terms.size(); ++k) c.prefix.push_back(sym::mono_mul(q_uinv, x.terms[k]));
    return c;
}

MonomialSum expand_conjugated(const ConjugatedGenerator& c) {
    MonomialSum s(c.core);
    for (auto& w : c.prefix) s = s + MonomialSum(sym::mono_mul(sym::mono_mul(qpow(-1), c.core), w));
    return s;
}

}  // namespace qgv::rep
