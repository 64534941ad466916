#include "qgv/rewrite.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <fstream>
#include <sstream>

namespace qgv::rw {

using sym::ExpMonomial;
using sym::LinForm;
using sym::PhaseScalar;
using sym::Rational;

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, const std::string& sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t k = s.find(sep, start);
        out.push_back(trim(s.substr(start, k == std::string::npos ? std::string::npos : k - start)));
        if (k == std::string::npos) return out;
        start = k + sep.size();
    }
}

// A bare linear form abbreviates a phase-free monomial.
std::string mono_text(const ExpMonomial& m) {
    return m.phase.is_one() ? sym::to_string(m.lin) : sym::to_string(m);
}

ExpMonomial parse_mono_item(const std::string& s) {
    const std::string t = trim(s);
    if (t.rfind("exp(", 0) == 0 || t.rfind("q^{", 0) == 0 || t.rfind("qd^{", 0) == 0 || t.rfind("epi^{", 0) == 0)
        return sym::parse_monomial(t);
    return ExpMonomial(sym::parse_linform(t));
}

const PhaseScalar kQ2 = PhaseScalar::q_power(2);

std::string q2_condition(const ExpMonomial& x, const ExpMonomial& y) {
    return "(" + mono_text(x) + ")(" + mono_text(y) + ") = q^{2} (" + mono_text(y) + ")(" + mono_text(x) + ")";
}

void require_q2(const ExpMonomial& x, const ExpMonomial& y, std::vector<std::string>& conds) {
    std::string c = q2_condition(x, y);
    if (!(sym::commutation_phase(x, y) == kQ2))
        throw RewriteError("side condition fails: " + c + " (actual phase " +
                           sym::to_string(sym::commutation_phase(x, y)) + ")");
    conds.push_back(c);
}

bool monomial_based(FactorKind k) {
    return k == FactorKind::Mono || k == FactorKind::Gb || k == FactorKind::GbStar || k == FactorKind::Fn ||
           k == FactorKind::Sum;
}

bool commute(const OpFactor& x, const OpFactor& y) {
    auto fixes_quad = [](const sym::QuadExp& q, const OpFactor& f) {
        for (auto& m : f.monos)
            if (!(q.conjugate(m.lin) == m.lin)) return false;
        return true;
    };
    auto fixes_perm = [](const sym::Perm& p, const OpFactor& f) {
        for (auto& m : f.monos)
            if (!(p.apply(m.lin) == m.lin)) return false;
        return true;
    };
    if (monomial_based(x.kind) && monomial_based(y.kind)) {
        for (auto& a : x.monos)
            for (auto& b : y.monos)
                if (sym::sigma(a.lin, b.lin) != Rational(0)) return false;
        return true;
    }
    if (x.kind == FactorKind::Quad && monomial_based(y.kind)) return fixes_quad(x.quad, y);
    if (y.kind == FactorKind::Quad && monomial_based(x.kind)) return fixes_quad(y.quad, x);
    if (x.kind == FactorKind::Perm && monomial_based(y.kind)) return fixes_perm(x.perm, y);
    if (y.kind == FactorKind::Perm && monomial_based(x.kind)) return fixes_perm(y.perm, x);
    if (x.kind == FactorKind::Quad && y.kind == FactorKind::Quad) {
        for (auto& t : y.quad.terms)
            if (!(x.quad.conjugate(t.p) == t.p) || !(x.quad.conjugate(t.r) == t.r)) return false;
        return true;
    }
    if (x.kind == FactorKind::Perm && y.kind == FactorKind::Quad) return x.perm.apply(y.quad) == y.quad;
    if (y.kind == FactorKind::Perm && x.kind == FactorKind::Quad) return y.perm.apply(x.quad) == x.quad;
    if (x.kind == FactorKind::Perm && y.kind == FactorKind::Perm) return x.perm == y.perm;
    return false;
}

const OpFactor& at(const OpWord& w, std::size_t i, FactorKind k, const char* what) {
    if (i >= w.factors.size()) throw RewriteError(std::string(what) + ": position out of range");
    if (w.factors[i].kind != k) throw RewriteError(std::string(what) + ": unexpected factor " + to_string(w.factors[i]));
    return w.factors[i];
}

void require_in_range(const OpWord& w, std::size_t i, std::size_t count, const char* what) {
    if (i + count > w.factors.size()) throw RewriteError(std::string(what) + ": position out of range");
}

bool is_slot_position(const OpWord& w, std::size_t i) {
    return w.conjugated && i < w.factors.size() && w.factors[i].kind == FactorKind::Fn && i + 1 == w.factors.size();
}

ExpMonomial qpow(Rational r) { return ExpMonomial(PhaseScalar::q_power(r), LinForm{}); }

OpFactor transform_monos(const OpFactor& f, const std::function<ExpMonomial(const ExpMonomial&)>& g) {
    OpFactor out = f;
    for (auto& m : out.monos) m = g(m);
    return out;
}

}  // namespace

bool OpFactor::operator==(const OpFactor& o) const {
    if (kind != o.kind) return false;
    if (kind == FactorKind::Quad) return quad == o.quad;
    if (kind == FactorKind::Perm) return perm == o.perm;
    return monos == o.monos;
}

std::string to_string(const OpFactor& f) {
    auto list = [&](const char* head) {
        std::string s = std::string(head) + "[";
        for (std::size_t i = 0; i < f.monos.size(); ++i) s += (i ? "; " : "") + mono_text(f.monos[i]);
        return s + "]";
    };
    switch (f.kind) {
        case FactorKind::Mono: return list("mono");
        case FactorKind::Sum: return list("sum");
        case FactorKind::Gb: return list("gb");
        case FactorKind::GbStar: return list("gbs");
        case FactorKind::Fn: return list("fn");
        case FactorKind::Quad: return "quad[" + sym::to_string(f.quad) + "]";
        case FactorKind::Perm: return "perm[" + sym::to_string(f.perm) + "]";
    }
    return "?";
}

std::string to_string(const OpWord& w) {
    std::string s;
    for (std::size_t i = 0; i < w.factors.size(); ++i) s += (i ? " | " : "") + to_string(w.factors[i]);
    if (w.conjugated) s += " | hc";
    return s;
}

OpFactor parse_factor(const std::string& text) {
    const std::string s = trim(text);
    const std::size_t open = s.find('[');
    if (open == std::string::npos || s.back() != ']') throw RewriteError("malformed factor '" + s + "'");
    const std::string head = s.substr(0, open), body = s.substr(open + 1, s.size() - open - 2);
    auto monos = [&] {
        std::vector<ExpMonomial> out;
        for (auto& item : split(body, ";")) out.push_back(parse_mono_item(item));
        return out;
    };
    if (head == "mono" || head == "fn") {
        auto l = monos();
        if (l.size() != 1) throw RewriteError("'" + head + "' takes one monomial");
        return head == "mono" ? OpFactor::mono(l[0]) : OpFactor::fn(l[0]);
    }
    if (head == "sum") return OpFactor::sum(monos());
    if (head == "gb") return OpFactor::gb(monos());
    if (head == "gbs") return OpFactor::gb_star(monos());
    if (head == "quad") return OpFactor::quadratic(sym::parse_quad(body));
    if (head == "perm") return OpFactor::permutation(sym::parse_perm(body));
    throw RewriteError("unknown factor kind '" + head + "'");
}

OpWord parse_opword(const std::string& text) {
    OpWord w;
    auto parts = split(text, "|");
    if (!parts.empty() && parts.back() == "hc") {
        w.conjugated = true;
        parts.pop_back();
    }
    for (auto& p : parts) w.factors.push_back(parse_factor(p));
    if (w.conjugated && (w.factors.empty() || w.factors.back().kind != FactorKind::Fn))
        throw RewriteError("a conjugated word must end with its fn slot");
    return w;
}

namespace {
const std::vector<std::pair<Rule, const char*>> kRuleNames = {
    {Rule::SumToConj, "SumToConj"},       {Rule::ExpSplit, "ExpSplit"},
    {Rule::ExpMerge, "ExpMerge"},         {Rule::Pentagon, "Pentagon"},
    {Rule::PentagonInv, "PentagonInv"},   {Rule::Inversion, "Inversion"},
    {Rule::InversionStar, "InversionStar"}, {Rule::SwapCommuting, "SwapCommuting"},
    {Rule::PushMono, "PushMono"},         {Rule::PushQuad, "PushQuad"},
    {Rule::PushPerm, "PushPerm"},         {Rule::CancelPair, "CancelPair"},
    {Rule::PushThroughFnSlot, "PushThroughFnSlot"},
};
}  // namespace

std::string rule_name(Rule r) {
    for (auto& [k, n] : kRuleNames)
        if (k == r) return n;
    return "?";
}

Rule parse_rule(const std::string& s) {
    for (auto& [k, n] : kRuleNames)
        if (s == n) return k;
    throw RewriteError("unknown rule '" + s + "'");
}

StepOutcome RewriteEngine::apply(const OpWord& w, const RuleApplication& a) const {
    const std::size_t i = a.position;
    StepOutcome out;
    auto& conds = out.side_conditions;
    std::vector<OpFactor> f = w.factors;
    auto replace = [&](std::size_t count, std::vector<OpFactor> with) {
        f.erase(f.begin() + static_cast<long>(i), f.begin() + static_cast<long>(i + count));
        f.insert(f.begin() + static_cast<long>(i), with.begin(), with.end());
    };
    const std::string name = rule_name(a.rule);

    switch (a.rule) {
        case Rule::SumToConj: {
            const OpFactor& s = at(w, i, FactorKind::Sum, "SumToConj");
            if (s.monos.size() < 2) throw RewriteError("SumToConj needs at least two terms");
            const ExpMonomial& u = s.monos[0];
            std::vector<ExpMonomial> ws;
            const ExpMonomial q_uinv = sym::mono_mul(qpow(1), sym::mono_inverse(u));
            for (std::size_t k = 1; k < s.monos.size(); ++k) {
                require_q2(u, s.monos[k], conds);
                ws.push_back(sym::mono_mul(q_uinv, s.monos[k]));
            }
            replace(1, {OpFactor::gb(ws), OpFactor::mono(u), OpFactor::gb_star(ws)});
            break;
        }
        case Rule::ExpSplit: {
            require_in_range(w, i, 1, "ExpSplit");
            const OpFactor& g = w.factors[i];
            if ((g.kind != FactorKind::Gb && g.kind != FactorKind::GbStar) || g.monos.size() < 2)
                throw RewriteError("ExpSplit needs a g_b factor of a sum");
            for (std::size_t x = 0; x < g.monos.size(); ++x)
                for (std::size_t y = x + 1; y < g.monos.size(); ++y) require_q2(g.monos[x], g.monos[y], conds);
            std::vector<OpFactor> parts;
            for (auto& m : g.monos)
                parts.push_back(g.kind == FactorKind::Gb ? OpFactor::gb({m}) : OpFactor::gb_star({m}));
            if (g.kind == FactorKind::GbStar) std::reverse(parts.begin(), parts.end());
            replace(1, parts);
            break;
        }
        case Rule::ExpMerge: {
            require_in_range(w, i, 2, "ExpMerge");
            const OpFactor &x = w.factors[i], &y = w.factors[i + 1];
            if (x.kind != y.kind || (x.kind != FactorKind::Gb && x.kind != FactorKind::GbStar))
                throw RewriteError("ExpMerge needs two adjacent g_b factors of the same kind");
            // g(A)g(B) = g(A+B); g*(B)g*(A) = g*(A+B)
            const OpFactor& first = x.kind == FactorKind::Gb ? x : y;
            const OpFactor& second = x.kind == FactorKind::Gb ? y : x;
            std::vector<ExpMonomial> all = first.monos;
            all.insert(all.end(), second.monos.begin(), second.monos.end());
            for (std::size_t p = 0; p < all.size(); ++p)
                for (std::size_t r = p + 1; r < all.size(); ++r) require_q2(all[p], all[r], conds);
            replace(2, {x.kind == FactorKind::Gb ? OpFactor::gb(all) : OpFactor::gb_star(all)});
            break;
        }
        case Rule::Pentagon: {
            const OpFactor& gv = at(w, i, FactorKind::Gb, "Pentagon");
            const OpFactor& gu = at(w, i + 1, FactorKind::Gb, "Pentagon");
            if (gv.monos.size() != 1 || gu.monos.size() != 1) throw RewriteError("Pentagon needs single arguments");
            const ExpMonomial &v = gv.monos[0], &u = gu.monos[0];
            require_q2(u, v, conds);
            ExpMonomial mid = sym::mono_mul(qpow(-1), sym::mono_mul(u, v));
            replace(2, {OpFactor::gb({u}), OpFactor::gb({mid}), OpFactor::gb({v})});
            break;
        }
        case Rule::PentagonInv: {
            const OpFactor& gu = at(w, i, FactorKind::Gb, "PentagonInv");
            const OpFactor& gm = at(w, i + 1, FactorKind::Gb, "PentagonInv");
            const OpFactor& gv = at(w, i + 2, FactorKind::Gb, "PentagonInv");
            if (gu.monos.size() != 1 || gm.monos.size() != 1 || gv.monos.size() != 1)
                throw RewriteError("PentagonInv needs single arguments");
            const ExpMonomial &u = gu.monos[0], &v = gv.monos[0];
            require_q2(u, v, conds);
            ExpMonomial mid = sym::mono_mul(qpow(-1), sym::mono_mul(u, v));
            if (!(mid == gm.monos[0]))
                throw RewriteError("PentagonInv: middle factor is not q^{-1} U V = " + mono_text(mid));
            conds.push_back("middle argument = q^{-1} U V");
            replace(3, {OpFactor::gb({v}), OpFactor::gb({u})});
            break;
        }
        case Rule::Inversion:
        case Rule::InversionStar: {
            if (!inversion_constant_) throw RewriteError(name + ": inversion constant not injected");
            const PhaseScalar c = *inversion_constant_;
            if (a.rule == Rule::Inversion) {
                const OpFactor& x = at(w, i, FactorKind::Gb, "Inversion");
                const OpFactor& y = at(w, i + 1, FactorKind::Gb, "Inversion");
                if (x.monos.size() != 1 || y.monos.size() != 1) throw RewriteError("Inversion needs single arguments");
                const ExpMonomial& m = x.monos[0];
                if (!m.phase.is_one()) throw RewriteError("Inversion needs a positive argument");
                if (!(y.monos[0] == sym::mono_inverse(m))) throw RewriteError("Inversion: arguments are not inverse");
                conds.push_back("second argument = first argument^{-1}, positive");
                sym::QuadExp qd{{{Rational(-1, 4), m.lin, m.lin}}};
                replace(2, {OpFactor::mono(ExpMonomial(c, LinForm{})), OpFactor::quadratic(qd)});
            } else {
                const OpFactor& x = at(w, i, FactorKind::GbStar, "InversionStar");
                if (x.monos.size() != 1) throw RewriteError("InversionStar needs a single argument");
                const ExpMonomial& m = x.monos[0];
                if (!m.phase.is_one()) throw RewriteError("InversionStar needs a positive argument");
                conds.push_back("argument positive");
                sym::QuadExp qd{{{Rational(1, 4), m.lin, m.lin}}};
                replace(1, {OpFactor::mono(ExpMonomial(c.inverse(), LinForm{})), OpFactor::quadratic(qd),
                            OpFactor::gb({sym::mono_inverse(m)})});
            }
            break;
        }
        case Rule::SwapCommuting: {
            require_in_range(w, i, 2, "SwapCommuting");
            if (is_slot_position(w, i + 1)) throw RewriteError("SwapCommuting cannot move the fn slot");
            if (!commute(w.factors[i], w.factors[i + 1]))
                throw RewriteError("SwapCommuting: factors do not commute: " + to_string(w.factors[i]) + " , " +
                                   to_string(w.factors[i + 1]));
            conds.push_back("[" + to_string(w.factors[i]) + ", " + to_string(w.factors[i + 1]) + "] = 0");
            std::swap(f[i], f[i + 1]);
            break;
        }
        case Rule::PushMono: {
            const OpFactor& m = at(w, i, FactorKind::Mono, "PushMono");
            require_in_range(w, i, 2, "PushMono");
            const OpFactor& x = w.factors[i + 1];
            if (!monomial_based(x.kind) || x.kind == FactorKind::Fn)
                throw RewriteError("PushMono: cannot pass " + to_string(x));
            OpFactor moved = transform_monos(x, [&](const ExpMonomial& y) {
                return ExpMonomial(y.phase * sym::commutation_phase(m.monos[0], y), y.lin);
            });
            conds.push_back("M X M^{-1} by exact commutation phase");
            replace(2, {moved, m});
            break;
        }
        case Rule::PushQuad: {
            const OpFactor& q = at(w, i, FactorKind::Quad, "PushQuad");
            require_in_range(w, i, 2, "PushQuad");
            const OpFactor& x = w.factors[i + 1];
            if (x.kind == FactorKind::Perm) {
                replace(2, {x, OpFactor::quadratic(x.perm.apply(q.quad))});
            } else if (x.kind == FactorKind::Quad) {
                throw RewriteError("PushQuad: use SwapCommuting for two quadratic factors");
            } else {
                OpFactor moved = transform_monos(x, [&](const ExpMonomial& y) { return q.quad.conjugate(y); });
                conds.push_back("ad nilpotent on " + to_string(x));
                if (is_slot_position(w, i + 1)) {
                    conds.push_back("unitary factor cancels against its conjugate");
                    replace(2, {moved});
                } else {
                    replace(2, {moved, q});
                }
            }
            break;
        }
        case Rule::PushPerm: {
            const OpFactor& p = at(w, i, FactorKind::Perm, "PushPerm");
            require_in_range(w, i, 2, "PushPerm");
            const OpFactor& x = w.factors[i + 1];
            OpFactor moved = x;
            if (x.kind == FactorKind::Quad)
                moved.quad = p.perm.apply(x.quad);
            else if (x.kind == FactorKind::Perm)
                throw RewriteError("PushPerm: two permutations do not commute in general");
            else
                moved = transform_monos(x, [&](const ExpMonomial& y) { return p.perm.apply(y); });
            if (is_slot_position(w, i + 1)) {
                conds.push_back("unitary factor cancels against its conjugate");
                replace(2, {moved});
            } else {
                replace(2, {moved, p});
            }
            break;
        }
        case Rule::CancelPair: {
            require_in_range(w, i, 1, "CancelPair");
            const OpFactor& x = w.factors[i];
            if (x.kind == FactorKind::Mono && x.monos[0].is_scalar() && w.conjugated) {
                conds.push_back("unimodular scalar cancels against its conjugate");
                replace(1, {});
                break;
            }
            require_in_range(w, i, 2, "CancelPair");
            const OpFactor& y = w.factors[i + 1];
            bool ok = false;
            if ((x.kind == FactorKind::Gb && y.kind == FactorKind::GbStar) ||
                (x.kind == FactorKind::GbStar && y.kind == FactorKind::Gb))
                ok = x.monos == y.monos;
            else if (x.kind == FactorKind::Quad && y.kind == FactorKind::Quad)
                ok = y.quad == x.quad.inverse();
            else if (x.kind == FactorKind::Perm && y.kind == FactorKind::Perm)
                ok = x.perm == y.perm;
            else if (x.kind == FactorKind::Mono && y.kind == FactorKind::Mono)
                ok = y.monos[0] == sym::mono_inverse(x.monos[0]);
            if (!ok) throw RewriteError("CancelPair: factors are not mutually inverse");
            conds.push_back("X X^{-1} = 1");
            replace(2, {});
            break;
        }
        case Rule::PushThroughFnSlot: {
            require_in_range(w, i, 2, "PushThroughFnSlot");
            if (!is_slot_position(w, i + 1)) throw RewriteError("PushThroughFnSlot: next factor is not the fn slot");
            const OpFactor& x = w.factors[i];
            if (x.kind == FactorKind::Sum) throw RewriteError("PushThroughFnSlot: sums are not unitary");
            if (x.kind == FactorKind::Mono && !x.monos[0].is_scalar())
                throw RewriteError("PushThroughFnSlot: positive monomials are not unitary");
            if (!commute(x, w.factors[i + 1]))
                throw RewriteError("PushThroughFnSlot: factor does not commute with the slot: " + to_string(x));
            conds.push_back("[" + to_string(x) + ", core] = 0");
            replace(1, {});
            break;
        }
    }
    out.word.factors = std::move(f);
    out.word.conjugated = w.conjugated;
    return out;
}

DerivationScript parse_script(const std::string& text) {
    DerivationScript s;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    std::optional<RuleApplication> pending;
    int pending_line = 0;
    auto fail = [&](const std::string& msg) -> void {
        throw RewriteError("script line " + std::to_string(line) + ": " + msg);
    };
    while (std::getline(in, raw)) {
        ++line;
        std::string l = trim(raw);
        if (l.empty() || l[0] == '#') continue;
        std::size_t sp = l.find(' ');
        std::string key = l.substr(0, sp), rest = sp == std::string::npos ? "" : trim(l.substr(sp));
        try {
            if (key == "SCRIPT") {
                s.name = rest;
            } else if (key == "TITLE") {
                s.title = rest;
            } else if (key == "START") {
                s.start = parse_opword(rest);
            } else if (key == "STEP") {
                if (pending) fail("STEP without expected WORD");
                std::size_t at_pos = rest.find('@');
                if (at_pos == std::string::npos) fail("STEP needs '<rule> @ <position>'");
                pending = RuleApplication{parse_rule(trim(rest.substr(0, at_pos))),
                                          static_cast<std::size_t>(std::stoul(trim(rest.substr(at_pos + 1))))};
                pending_line = line;
            } else if (key == "WORD") {
                if (!pending) fail("WORD without STEP");
                s.steps.push_back({*pending, parse_opword(rest), pending_line});
                pending.reset();
            } else if (key == "TARGET") {
                s.target = parse_opword(rest);
            } else {
                fail("unknown directive '" + key + "'");
            }
        } catch (const RewriteError&) {
            throw;
        } catch (const std::exception& e) {
            fail(e.what());
        }
    }
    if (pending) throw RewriteError("script ends with a STEP lacking its WORD");
    if (s.name.empty()) throw RewriteError("script has no SCRIPT line");
    return s;
}

DerivationScript load_script(const std::string& name, const std::string& dir) {
    const std::filesystem::path p = std::filesystem::path(dir) / (name + ".script");
    std::ifstream in(p);
    if (!in) throw RewriteError("no script named '" + name + "' in " + dir);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_script(ss.str());
}

std::vector<std::string> list_scripts(const std::string& dir) {
    std::vector<std::string> out;
    for (auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".script") out.push_back(e.path().stem().string());
    std::sort(out.begin(), out.end());
    return out;
}

ReplayResult replay(const DerivationScript& s, const RewriteEngine& engine) {
    ReplayResult r;
    r.name = s.name;
    OpWord w = s.start;
    for (std::size_t k = 0; k < s.steps.size(); ++k) {
        const ScriptStep& st = s.steps[k];
        StepOutcome o;
        try {
            o = engine.apply(w, st.app);
        } catch (const std::exception& e) {
            r.failure = "step " + std::to_string(k + 1) + " (line " + std::to_string(st.line) + ", " +
                        rule_name(st.app.rule) + "): " + e.what();
            return r;
        }
        r.conditions_checked += o.side_conditions.size();
        r.steps.push_back({st.app, o.word, o.side_conditions});
        if (!(o.word == st.expected)) {
            r.failure = "step " + std::to_string(k + 1) + " (line " + std::to_string(st.line) +
                        "): result differs from the expected word\n  got      " + to_string(o.word) +
                        "\n  expected " + to_string(st.expected);
            return r;
        }
        w = o.word;
    }
    if (s.target && !(w == *s.target)) {
        r.failure = "final word differs from TARGET\n  got    " + to_string(w) + "\n  target " + to_string(*s.target);
        return r;
    }
    r.ok = true;
    return r;
}

std::string ReplayResult::transcript() const {
    std::ostringstream os;
    os << "SCRIPT " << name << "\n";
    for (std::size_t k = 0; k < steps.size(); ++k) {
        os << "STEP " << rule_name(steps[k].app.rule) << " @ " << steps[k].app.position << "\n";
        for (auto& c : steps[k].side_conditions) os << "  check " << c << "\n";
        os << "WORD " << to_string(steps[k].word) << "\n";
    }
    os << (ok ? "RESULT ok" : "RESULT failed: " + failure) << "\n";
    return os.str();
}

}  // namespace qgv::rw
