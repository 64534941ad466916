#include "qgv/representations.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace qgv;
using namespace qgv::rep;

namespace {
// bare linear forms are read as exp(...)
sym::ExpMonomial parse_monomial(const std::string& s) {
    return sym::parse_monomial(s.find("exp(") == std::string::npos ? "exp(" + s + ")" : s);
}
}  // namespace

TEST_CASE("sl2 generators") {
    const auto g = sl2_generators();
    REQUIRE(g.K.size() == 1);
    CHECK(g.K[0] == parse_monomial("2*pb*u"));
    REQUIRE(g.E.size() == 1);
    CHECK(g.E[0].terms.size() == 2);
    CHECK(g.E[0].terms[0] == parse_monomial("q^{-1/2} * exp(pb*nu1 + pb*u) * exp(-ib*du)"));
    CHECK(g.E[0].terms[1] == parse_monomial("q^{1/2} * exp(-pb*nu1 - pb*u) * exp(-ib*du)"));
}

TEST_CASE("sl3 generators for both reduced words") {
    const auto a = sl3_generators(Word::S1S2S1);
    CHECK(a.K[0] == parse_monomial("-2*pb*nu1 + 2*pb*u - pb*v + 2*pb*w"));
    CHECK(a.F[0].terms.size() == 4);
    CHECK(index_swap(a).E[0].terms == sl3_generators(Word::S2S1S2).E[0].terms);
    const auto b = sl3_generators(Word::S2S1S2);
    CHECK(index_swap(b).K == a.K);
    CHECK(index_swap(b).F[1].terms == a.F[1].terms);
    CHECK_THROWS_AS(sl3_generators(Word::S1), std::invalid_argument);
}

TEST_CASE("every manifest relation holds exactly") {
    for (const auto& g : {sl2_generators(), sl3_generators(Word::S1S2S1), sl3_generators(Word::S2S1S2)}) {
        const auto rels = relation_manifest(g);
        CHECK(rels.size() == (g.rank == 1 ? 9u : 21u));
        for (const auto& r : rels) {
            CAPTURE(word_name(g.word));
            CAPTURE(r.id());
            CHECK(check_relation(g, r).holds());
        }
    }
}

TEST_CASE("a perturbed generator breaks its relations") {
    auto g = sl3_generators(Word::S1S2S1);
    g.E[1].terms[0].phase = g.E[1].terms[0].phase * sym::PhaseScalar::q_power(1);
    CHECK_FALSE(check_relation(g, {"EF", 2, 1}).holds());
    CHECK_FALSE(check_relation(g, {"EF", 2, 2}).holds());
    CHECK(check_relation(g, {"KE", 1, 1}).holds());
}

TEST_CASE("manifest matches the frozen fixture") {
    std::ifstream in(std::string(QGV_FIXTURE_DIR) + "/relations_manifest.txt", std::ios::binary);
    REQUIRE(in);
    std::ostringstream os;
    os << in.rdbuf();
    CHECK(os.str() == manifest_text());
}

TEST_CASE("conjugated forms") {
    const auto e = conjugated_form(sl2_generators().E[0]);
    REQUIRE(e.prefix.size() == 1);
    CHECK(e.prefix[0] == parse_monomial("-2*pb*nu1 - 2*pb*u"));
    CHECK(e.core == parse_monomial("pb*nu1 + pb*u - ib*du"));

    const auto s = sl3_generators(Word::S1S2S1);
    CHECK(conjugated_form(s.E[1]).prefix.size() == 3);
    const auto f2 = conjugated_form(s.F[1]);
    REQUIRE(f2.prefix.size() == 1);
    CHECK(f2.prefix[0] == parse_monomial("-4*pb*nu2 - 2*pb*u + 2*pb*v"));

    for (const auto& g : {sl2_generators(), s, sl3_generators(Word::S2S1S2)})
        for (const auto* fam : {&g.E, &g.F})
            for (const auto& x : *fam) CHECK(expand_conjugated(conjugated_form(x)) == x.sum());

    Generator broken{"X", {parse_monomial("pb*u"), parse_monomial("pb*v")}};
    CHECK_THROWS_AS(conjugated_form(broken), std::domain_error);
}
