// Positive principal series generators of U_q(sl2) and U_q(sl3) as exact monomial sums,
// the relation manifest checked against them, and the g_b-conjugated forms of E and F.
#pragma once

#include "qgv/qweyl.hpp"

#include <string>
#include <vector>

namespace qgv::rep {

enum class Word { S1, S1S2S1, S2S1S2 };

std::string word_name(Word w);
Word parse_word(const std::string& s);

// A generator keeps its terms in printed order; that order is the q^2-commuting chain
// U_1, ..., U_n (U_i U_j = q^2 U_j U_i for i < j) used by the conjugated form.
struct Generator {
    std::string name;
    std::vector<sym::ExpMonomial> terms;
    sym::MonomialSum sum() const;
};

struct GeneratorSet {
    Word word = Word::S1;
    int rank = 1;
    std::vector<sym::ExpMonomial> K;  // K_i
    std::vector<Generator> E, F;      // rescaled E_i, F_i
    std::vector<std::vector<int>> cartan;
};

GeneratorSet sl2_generators();
GeneratorSet sl3_generators(Word w);
// Relabels 1 <-> 2 (generators and central parameters); maps the s1s2s1 set onto s2s1s2.
GeneratorSet index_swap(const GeneratorSet& g);

struct RelationInstance {
    std::string family;  // KK, KKinv, KE, KF, EF, SerreE, SerreF, HE, HF, Qchain, Casimir
    int i = 0, j = 0;    // 1-based generator indices
    std::string id() const;
};

struct RelationResult {
    RelationInstance rel;
    sym::MonomialSum residual;  // exact; the relation holds iff this is zero
    bool holds() const { return residual.is_zero(); }
};

std::vector<RelationInstance> relation_manifest(const GeneratorSet& g);
RelationResult check_relation(const GeneratorSet& g, const RelationInstance& r);
// Versioned text listing every instance for sl2 and both sl3 words.
std::string manifest_text();

// X = g_b(W_1) ... g_b(W_m) core g_b^*(W_m) ... g_b^*(W_1) with W_k = q U_1^{-1} U_{k+1}.
struct ConjugatedGenerator {
    std::string name;
    std::vector<sym::ExpMonomial> prefix;  // arguments W_1 .. W_m of the left g_b factors
    sym::ExpMonomial core;
};

// Throws if the terms do not form a q^2-commuting chain.
ConjugatedGenerator conjugated_form(const Generator& x);
// Inverse map used as a consistency check: U_1 + sum_k q^{-1} U_1 W_k.
sym::MonomialSum expand_conjugated(const ConjugatedGenerator& c);

}  // namespace qgv::rep
