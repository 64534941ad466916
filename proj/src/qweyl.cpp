#include "qgv/qweyl.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace qgv::sym {

namespace {

Rational floor_div2(const Rational& x) {
    // floor(x / 2) as an integer rational
    const std::int64_t num = x.numerator(), den = x.denominator() * 2;
    std::int64_t q = num / den;
    if ((num % den != 0) && (num < 0)) --q;
    return Rational(q);
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void parse_fail(const std::string& what, const std::string& text) {
    throw std::invalid_argument("cannot parse " + what + ": '" + text + "'");
}

const char* kPosName[kPositions] = {"u", "v", "w"};
const char* kNuName[kCentral] = {"nu1", "nu2"};

}  // namespace

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& text) {
    const std::string s = trim(text);
    try {
        std::size_t slash = s.find('/');
        std::size_t used = 0;
        if (slash == std::string::npos) {
            std::int64_t n = std::stoll(s, &used);
            if (used != s.size()) parse_fail("rational", text);
            return Rational(n);
        }
        std::int64_t n = std::stoll(s.substr(0, slash), &used);
        if (used != slash) parse_fail("rational", text);
        std::string ds = s.substr(slash + 1);
        std::int64_t d = std::stoll(ds, &used);
        if (used != ds.size() || d == 0) parse_fail("rational", text);
        return Rational(n, d);
    } catch (const std::logic_error&) {
        parse_fail("rational", text);
    }
}

PhaseScalar::PhaseScalar(Rational a0, Rational a2, Rational am2) : c0(a0), c2(a2), cm2(am2) {
    c0 -= floor_div2(c0) * 2;
}

bool PhaseScalar::operator<(const PhaseScalar& o) const {
    return std::tie(c0, c2, cm2) < std::tie(o.c0, o.c2, o.cm2);
}

LinForm LinForm::pos(int i, Rational k) {
    LinForm l;
    l.a(i) = k;
    return l;
}
LinForm LinForm::mom(int i, Rational k) {
    LinForm l;
    l.d(i) = k;
    return l;
}
LinForm LinForm::nu(int j, Rational k) {
    LinForm l;
    l.n(j) = k;
    return l;
}

bool LinForm::is_zero() const {
    for (auto& x : c)
        if (x != Rational(0)) return false;
    return true;
}

bool LinForm::has_momentum() const {
    for (int i = 0; i < kPositions; ++i)
        if (d(i) != 0) return true;
    return false;
}

LinForm LinForm::operator+(const LinForm& o) const {
    LinForm r;
    for (int k = 0; k < kDim; ++k) r.c[k] = c[k] + o.c[k];
    return r;
}
LinForm LinForm::operator-(const LinForm& o) const {
    LinForm r;
    for (int k = 0; k < kDim; ++k) r.c[k] = c[k] - o.c[k];
    return r;
}
LinForm LinForm::operator-() const {
    LinForm r;
    for (int k = 0; k < kDim; ++k) r.c[k] = -c[k];
    return r;
}
LinForm LinForm::operator*(const Rational& k) const {
    LinForm r;
    for (int i = 0; i < kDim; ++i) r.c[i] = c[i] * k;
    return r;
}
bool LinForm::operator<(const LinForm& o) const {
    for (int k = 0; k < kDim; ++k) {
        if (c[k] < o.c[k]) return true;
        if (o.c[k] < c[k]) return false;
    }
    return false;
}

Rational sigma(const LinForm& x, const LinForm& y) {
    Rational s = 0;
    for (int i = 0; i < kPositions; ++i) s += x.a(i) * y.d(i) - x.d(i) * y.a(i);
    return s;
}

ExpMonomial mono_mul(const ExpMonomial& x, const ExpMonomial& y) {
    // e^{L1} e^{L2} = e^{[L1,L2]/2} e^{L1+L2} = q^{-sigma/2} e^{L1+L2}
    return {x.phase * y.phase * PhaseScalar::q_power(-sigma(x.lin, y.lin) / 2), x.lin + y.lin};
}

ExpMonomial mono_inverse(const ExpMonomial& x) { return {x.phase.inverse(), -x.lin}; }
ExpMonomial mono_adjoint(const ExpMonomial& x) { return {x.phase.inverse(), x.lin}; }

PhaseScalar commutation_phase(const ExpMonomial& x, const ExpMonomial& y) {
    return PhaseScalar::q_power(-sigma(x.lin, y.lin));
}

PhasePoly::PhasePoly(const PhaseScalar& p, std::int64_t k) { add(p, k); }

void PhasePoly::add(const PhaseScalar& p, std::int64_t k) {
    PhaseScalar key = p;
    if (key.c0 >= 1) {
        key.c0 -= 1;
        k = -k;
    }
    auto& slot = terms_[key];
    slot += k;
    if (slot == 0) terms_.erase(key);
}

PhasePoly PhasePoly::operator+(const PhasePoly& o) const {
    PhasePoly r = *this;
    for (auto& [p, k] : o.terms_) r.add(p, k);
    return r;
}

PhasePoly PhasePoly::operator*(const PhasePoly& o) const {
    PhasePoly r;
    for (auto& [p1, k1] : terms_)
        for (auto& [p2, k2] : o.terms_) r.add(p1 * p2, k1 * k2);
    return r;
}

PhasePoly PhasePoly::operator*(const PhaseScalar& p) const { return *this * PhasePoly(p); }

MonomialSum::MonomialSum(const ExpMonomial& m) { add_term(m.lin, PhasePoly(m.phase)); }

MonomialSum MonomialSum::scalar(const PhasePoly& p) {
    MonomialSum s;
    s.add_term(LinForm{}, p);
    return s;
}

void MonomialSum::add_term(const LinForm& l, const PhasePoly& p) {
    auto it = terms_.find(l);
    if (it == terms_.end()) {
        if (!p.is_zero()) terms_.emplace(l, p);
        return;
    }
    it->second = it->second + p;
    if (it->second.is_zero()) terms_.erase(it);
}

MonomialSum MonomialSum::operator+(const MonomialSum& o) const {
    MonomialSum r = *this;
    for (auto& [l, p] : o.terms_) r.add_term(l, p);
    return r;
}

MonomialSum MonomialSum::operator-(const MonomialSum& o) const {
    return *this + o * PhasePoly(PhaseScalar::minus_one());
}

MonomialSum MonomialSum::operator*(const MonomialSum& o) const {
    MonomialSum r;
    for (auto& [l1, p1] : terms_)
        for (auto& [l2, p2] : o.terms_)
            r.add_term(l1 + l2, p1 * p2 * PhaseScalar::q_power(-sigma(l1, l2) / 2));
    return r;
}

MonomialSum MonomialSum::operator*(const PhasePoly& p) const {
    MonomialSum r;
    for (auto& [l, c] : terms_) r.add_term(l, c * p);
    return r;
}

std::vector<std::pair<std::int64_t, ExpMonomial>> MonomialSum::expanded() const {
    std::vector<std::pair<std::int64_t, ExpMonomial>> out;
    for (auto& [l, p] : terms_)
        for (auto& [ph, k] : p.terms()) out.emplace_back(k, ExpMonomial(ph, l));
    return out;
}

LinForm QuadExp::ad(const LinForm& l) const {
    LinForm out;
    for (auto& t : terms) out = out - (t.r * sigma(t.p, l) + t.p * sigma(t.r, l)) * t.kappa;
    return out;
}

LinForm QuadExp::conjugate(const LinForm& l) const {
    LinForm out = l, cur = l;
    Rational fact = 1;
    for (int k = 1; k <= kDim + 1; ++k) {
        cur = ad(cur);
        if (cur.is_zero()) return out;
        fact *= k;
        out = out + cur * (Rational(1) / fact);
    }
    throw std::domain_error("quadratic exponent is not nilpotent on " + to_string(l));
}

QuadExp QuadExp::inverse() const {
    QuadExp r = *this;
    for (auto& t : r.terms) t.kappa = -t.kappa;
    return r;
}

LinForm Perm::apply(const LinForm& l) const {
    LinForm r = l;
    std::swap(r.a(i), r.a(j));
    std::swap(r.d(i), r.d(j));
    return r;
}

QuadExp Perm::apply(const QuadExp& q) const {
    QuadExp r;
    for (auto& t : q.terms) r.terms.push_back({t.kappa, apply(t.p), apply(t.r)});
    return r;
}

std::string to_string(const PhaseScalar& p) {
    std::string out;
    if (p.c0 != Rational(0)) out += "epi^{" + to_string(p.c0) + "} * ";
    if (p.cm2 != Rational(0)) out += "qd^{" + to_string(p.cm2) + "} * ";
    out += "q^{" + to_string(p.c2) + "}";
    return out;
}

std::string to_string(const LinForm& l) {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const Rational& k, const std::string& sym) {
        if (k == Rational(0)) return;
        Rational mag = k < 0 ? -k : k;
        if (first)
            os << (k < 0 ? "-" : "");
        else
            os << (k < 0 ? " - " : " + ");
        if (mag != Rational(1)) os << to_string(mag) << "*";
        os << sym;
        first = false;
    };
    for (int j = 0; j < kCentral; ++j) emit(l.n(j), std::string("pb*") + kNuName[j]);
    for (int i = 0; i < kPositions; ++i) emit(l.a(i), std::string("pb*") + kPosName[i]);
    for (int i = 0; i < kPositions; ++i) emit(l.d(i), std::string("ib*d") + kPosName[i]);
    if (first) return "0";
    return os.str();
}

std::string to_string(const ExpMonomial& m) { return to_string(m.phase) + " * exp(" + to_string(m.lin) + ")"; }

std::string to_string(const MonomialSum& s) {
    if (s.is_zero()) return "0";
    std::string out;
    for (auto& [k, m] : s.expanded()) {
        if (!out.empty()) out += " + ";
        if (k != 1) out += std::to_string(k) + " * ";
        out += to_string(m);
    }
    return out;
}

std::string to_string(const QuadExp& q) {
    std::string out;
    for (auto& t : q.terms) {
        if (!out.empty()) out += "; ";
        out += to_string(t.kappa) + " : " + to_string(t.p) + " : " + to_string(t.r);
    }
    return out;
}

std::string to_string(const Perm& p) { return std::string(kPosName[p.i]) + kPosName[p.j]; }

LinForm parse_linform(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    LinForm l;
    if (s == "0") return l;
    std::size_t k = 0;
    while (k < s.size()) {
        int sign = 1;
        if (s[k] == '+' || s[k] == '-') {
            sign = s[k] == '-' ? -1 : 1;
            ++k;
        } else if (k != 0) {
            parse_fail("linear form", text);
        }
        std::size_t end = s.find_first_of("+-", k);
        std::string term = s.substr(k, end == std::string::npos ? std::string::npos : end - k);
        k = end == std::string::npos ? s.size() : end;
        Rational coeff = 1;
        std::size_t unit = term.find("pb*");
        if (unit == std::string::npos) unit = term.find("ib*");
        if (unit == std::string::npos) parse_fail("linear form", text);
        if (unit > 0) {
            if (term[unit - 1] != '*') parse_fail("linear form", text);
            coeff = parse_rational(term.substr(0, unit - 1));
        }
        const bool momentum = term.compare(unit, 3, "ib*") == 0;
        const std::string sym = term.substr(unit + 3);
        coeff *= sign;
        bool found = false;
        for (int i = 0; i < kPositions && !found; ++i) {
            if (momentum && sym == std::string("d") + kPosName[i]) l.d(i) += coeff, found = true;
            if (!momentum && sym == kPosName[i]) l.a(i) += coeff, found = true;
        }
        for (int j = 0; j < kCentral && !found && !momentum; ++j)
            if (sym == kNuName[j] || (j == 0 && sym == "nu")) l.n(j) += coeff, found = true;
        if (!found) parse_fail("linear form", text);
    }
    return l;
}

ExpMonomial parse_monomial(const std::string& text) {
    std::string s = trim(text);
    ExpMonomial m;
    auto take_power = [&](const std::string& head, Rational& into) {
        if (s.rfind(head, 0) != 0) return false;
        std::size_t close = s.find('}');
        if (close == std::string::npos) parse_fail("monomial", text);
        into = parse_rational(s.substr(head.size(), close - head.size()));
        s = trim(s.substr(close + 1));
        if (s.empty() || s[0] != '*') parse_fail("monomial", text);
        s = trim(s.substr(1));
        return true;
    };
    Rational c0 = 0, c2 = 0, cm2 = 0;
    for (bool progress = true; progress;)
        progress = take_power("epi^{", c0) || take_power("qd^{", cm2) || take_power("q^{", c2);
    m.phase = PhaseScalar(c0, c2, cm2);
    // one or more exp(...) factors, multiplied left to right with the exact reordering phase
    bool first = true;
    while (!s.empty()) {
        if (!first) {
            if (s[0] != '*') parse_fail("monomial", text);
            s = trim(s.substr(1));
        }
        if (s.rfind("exp(", 0) != 0) parse_fail("monomial", text);
        std::size_t close = s.find(')');
        if (close == std::string::npos) parse_fail("monomial", text);
        m = mono_mul(m, ExpMonomial(parse_linform(s.substr(4, close - 4))));
        s = trim(s.substr(close + 1));
        first = false;
    }
    if (first) parse_fail("monomial", text);
    return m;
}

QuadExp parse_quad(const std::string& text) {
    QuadExp q;
    std::stringstream ss(text);
    std::string term;
    while (std::getline(ss, term, ';')) {
        std::size_t a = term.find(':');
        std::size_t b = term.find(':', a + 1);
        if (a == std::string::npos || b == std::string::npos) parse_fail("quadratic exponent", text);
        q.terms.push_back({parse_rational(term.substr(0, a)), parse_linform(term.substr(a + 1, b - a - 1)),
                           parse_linform(term.substr(b + 1))});
    }
    if (q.terms.empty()) parse_fail("quadratic exponent", text);
    return q;
}

Perm parse_perm(const std::string& text) {
    const std::string s = trim(text);
    auto idx = [&](char ch) {
        for (int i = 0; i < kPositions; ++i)
            if (kPosName[i][0] == ch) return i;
        parse_fail("permutation", text);
    };
    if (s.size() != 2 || s[0] == s[1]) parse_fail("permutation", text);
    Perm p{idx(s[0]), idx(s[1])};
    if (p.i > p.j) std::swap(p.i, p.j);
    return p;
}

}  // namespace qgv::sym
