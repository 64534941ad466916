// Operator words built from g_b factors, monomials, quadratic exponentials and coordinate
// permutations, with a checked rewrite system and a replayer for derivation scripts.
#pragma once

#include "qgv/qweyl.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgv::rw {

enum class FactorKind { Mono, Sum, Gb, GbStar, Quad, Perm, Fn };

// Gb/GbStar hold an ordered list L_1..L_n meaning g_b(L_1 + ... + L_n) with L_i L_j = q^2 L_j L_i
// for i < j; Sum holds the terms of a generator; Fn is the slot phi(core).
struct OpFactor {
    FactorKind kind = FactorKind::Mono;
    std::vector<sym::ExpMonomial> monos;
    sym::QuadExp quad;
    sym::Perm perm;

    static OpFactor mono(sym::ExpMonomial m) { return {FactorKind::Mono, {std::move(m)}, {}, {}}; }
    static OpFactor gb(std::vector<sym::ExpMonomial> l) { return {FactorKind::Gb, std::move(l), {}, {}}; }
    static OpFactor gb_star(std::vector<sym::ExpMonomial> l) { return {FactorKind::GbStar, std::move(l), {}, {}}; }
    static OpFactor sum(std::vector<sym::ExpMonomial> l) { return {FactorKind::Sum, std::move(l), {}, {}}; }
    static OpFactor quadratic(sym::QuadExp q) { return {FactorKind::Quad, {}, std::move(q), {}}; }
    static OpFactor permutation(sym::Perm p) { return {FactorKind::Perm, {}, {}, p}; }
    static OpFactor fn(sym::ExpMonomial core) { return {FactorKind::Fn, {std::move(core)}, {}, {}}; }

    bool operator==(const OpFactor& o) const;
};

// When `conjugated` is set the word stands for X phi(core) X^* and only X phi(core) is stored;
// the final factor is then the Fn slot.
struct OpWord {
    std::vector<OpFactor> factors;
    bool conjugated = false;
    bool operator==(const OpWord& o) const = default;
};

std::string to_string(const OpFactor& f);
std::string to_string(const OpWord& w);
OpFactor parse_factor(const std::string& s);
OpWord parse_opword(const std::string& s);

enum class Rule {
    SumToConj,
    ExpSplit,
    ExpMerge,
    Pentagon,
    PentagonInv,
    Inversion,
    InversionStar,
    SwapCommuting,
    PushMono,
    PushQuad,
    PushPerm,
    CancelPair,
    PushThroughFnSlot,
};

std::string rule_name(Rule r);
Rule parse_rule(const std::string& s);

struct RuleApplication {
    Rule rule;
    std::size_t position;
};

struct StepOutcome {
    OpWord word;
    std::vector<std::string> side_conditions;  // each verified exactly before rewriting
};

class RewriteError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RewriteEngine {
public:
    // g_b(x) g_b(1/x) = C exp(pi i log^2 x / (4 pi^2 b^2)); C must be supplied before the
    // inversion rules can fire.
    void inject_inversion_constant(const sym::PhaseScalar& c) { inversion_constant_ = c; }
    const std::optional<sym::PhaseScalar>& inversion_constant() const { return inversion_constant_; }

    StepOutcome apply(const OpWord& w, const RuleApplication& a) const;

private:
    std::optional<sym::PhaseScalar> inversion_constant_;
};

struct ScriptStep {
    RuleApplication app;
    OpWord expected;
    int line = 0;
};

struct DerivationScript {
    std::string name;
    std::string title;
    OpWord start;
    std::vector<ScriptStep> steps;
    std::optional<OpWord> target;
};

DerivationScript parse_script(const std::string& text);
DerivationScript load_script(const std::string& name, const std::string& dir = QGV_SCRIPT_DIR);
std::vector<std::string> list_scripts(const std::string& dir = QGV_SCRIPT_DIR);

struct ReplayStep {
    RuleApplication app;
    OpWord word;
    std::vector<std::string> side_conditions;
};

struct ReplayResult {
    std::string name;
    bool ok = false;
    std::string failure;
    std::vector<ReplayStep> steps;
    std::size_t conditions_checked = 0;
    std::string transcript() const;
};

ReplayResult replay(const DerivationScript& s, const RewriteEngine& engine);

}  // namespace qgv::rw
