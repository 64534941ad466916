// Exact arithmetic in the quantum Weyl algebra generated by e^{pi b x}, e^{i b d/dx} and
// central e^{pi b nu}, with b kept formal.
//
// A linear form L = sum a_i (pi b x_i) + c_i (i b d_i) + n_j (pi b nu_j) has rational
// coefficients. Two forms satisfy [L1, L2] = -pi i b^2 sigma(L1, L2) with
// sigma = sum_i a1_i c2_i - c1_i a2_i, so every reordering phase is a rational power of q.
#pragma once

#include <boost/rational.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qgv::sym {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);
Rational parse_rational(const std::string& s);

// exp(pi i (c0 + c2 b^2 + cm2 b^-2)); c0 is kept in [0, 2).
struct PhaseScalar {
    Rational c0{0}, c2{0}, cm2{0};

    PhaseScalar() = default;
    PhaseScalar(Rational a0, Rational a2, Rational am2);

    static PhaseScalar q_power(Rational r) { return {0, r, 0}; }  // q^r, q = e^{pi i b^2}
    static PhaseScalar minus_one() { return {1, 0, 0}; }

    PhaseScalar operator*(const PhaseScalar& o) const { return {c0 + o.c0, c2 + o.c2, cm2 + o.cm2}; }
    PhaseScalar inverse() const { return {-c0, -c2, -cm2}; }
    bool is_one() const { return c0 == Rational(0) && c2 == Rational(0) && cm2 == Rational(0); }
    bool operator<(const PhaseScalar& o) const;
    bool operator==(const PhaseScalar& o) const = default;
};

enum Coord : int { U = 0, V = 1, W = 2 };
inline constexpr int kPositions = 3;
inline constexpr int kCentral = 2;
inline constexpr int kDim = 2 * kPositions + kCentral;

// Coefficient layout: [a_u, a_v, a_w, c_u, c_v, c_w, n_1, n_2].
struct LinForm {
    std::array<Rational, kDim> c{};

    static LinForm pos(int i, Rational k = 1);
    static LinForm mom(int i, Rational k = 1);
    static LinForm nu(int j, Rational k = 1);

    Rational& a(int i) { return c[i]; }
    Rational& d(int i) { return c[kPositions + i]; }
    Rational& n(int j) { return c[2 * kPositions + j]; }
    const Rational& a(int i) const { return c[i]; }
    const Rational& d(int i) const { return c[kPositions + i]; }
    const Rational& n(int j) const { return c[2 * kPositions + j]; }

    bool is_zero() const;
    bool has_momentum() const;
    LinForm operator+(const LinForm& o) const;
    LinForm operator-(const LinForm& o) const;
    LinForm operator-() const;
    LinForm operator*(const Rational& k) const;
    bool operator==(const LinForm& o) const = default;
    bool operator<(const LinForm& o) const;  // lexicographic over the coefficient layout
};

// sigma(L1, L2); [L1, L2] = -pi i b^2 sigma
Rational sigma(const LinForm& x, const LinForm& y);

// phase * exp(lin)
struct ExpMonomial {
    PhaseScalar phase;
    LinForm lin;

    ExpMonomial() = default;
    ExpMonomial(PhaseScalar p, LinForm l) : phase(p), lin(std::move(l)) {}
    explicit ExpMonomial(LinForm l) : lin(std::move(l)) {}

    bool operator==(const ExpMonomial& o) const = default;
    bool is_scalar() const { return lin.is_zero(); }
};

ExpMonomial mono_mul(const ExpMonomial& x, const ExpMonomial& y);  // exact BCH phase
ExpMonomial mono_inverse(const ExpMonomial& x);
ExpMonomial mono_adjoint(const ExpMonomial& x);  // lin is self-adjoint, so only the phase conjugates
// x y = chi y x
PhaseScalar commutation_phase(const ExpMonomial& x, const ExpMonomial& y);

// Integer combination of phases, normalized so that every c0 lies in [0, 1).
class PhasePoly {
public:
    PhasePoly() = default;
    explicit PhasePoly(const PhaseScalar& p, std::int64_t k = 1);

    void add(const PhaseScalar& p, std::int64_t k);
    PhasePoly operator+(const PhasePoly& o) const;
    PhasePoly operator*(const PhasePoly& o) const;
    PhasePoly operator*(const PhaseScalar& p) const;
    bool is_zero() const { return terms_.empty(); }
    const std::map<PhaseScalar, std::int64_t>& terms() const { return terms_; }
    bool operator==(const PhasePoly& o) const = default;

private:
    std::map<PhaseScalar, std::int64_t> terms_;
};

// Finite sum of monomials with PhasePoly coefficients; no two terms share a linear form.
class MonomialSum {
public:
    MonomialSum() = default;
    MonomialSum(const ExpMonomial& m);  // NOLINT(google-explicit-constructor)
    static MonomialSum scalar(const PhasePoly& p);

    MonomialSum operator+(const MonomialSum& o) const;
    MonomialSum operator-(const MonomialSum& o) const;
    MonomialSum operator*(const MonomialSum& o) const;
    MonomialSum operator*(const PhasePoly& p) const;
    bool is_zero() const { return terms_.empty(); }
    const std::map<LinForm, PhasePoly>& terms() const { return terms_; }
    // Each term as phase * exp(lin), one entry per phase in its coefficient (multiplicity kept).
    std::vector<std::pair<std::int64_t, ExpMonomial>> expanded() const;
    bool operator==(const MonomialSum& o) const = default;

private:
    void add_term(const LinForm& l, const PhasePoly& p);
    std::map<LinForm, PhasePoly> terms_;
};

// exp(G), G = sum_k kappa_k/(pi i b^2) P_k R_k with P_k, R_k linear forms.
// ad_G(L) = -sum_k kappa_k (sigma(P_k, L) R_k + sigma(R_k, L) P_k), which stays rational.
struct QuadTerm {
    Rational kappa;
    LinForm p, r;
    bool operator==(const QuadTerm& o) const = default;
};

struct QuadExp {
    std::vector<QuadTerm> terms;

    LinForm ad(const LinForm& l) const;
    // e^{G} e^{L} e^{-G} = e^{conj(L)}; throws if ad_G is not nilpotent on L within kDim + 1 steps
    LinForm conjugate(const LinForm& l) const;
    ExpMonomial conjugate(const ExpMonomial& m) const { return {m.phase, conjugate(m.lin)}; }
    QuadExp inverse() const;
    bool operator==(const QuadExp& o) const = default;
};

// Transposition of two position coordinates, acting on both x_i and d_i.
struct Perm {
    int i = 0, j = 1;
    LinForm apply(const LinForm& l) const;
    ExpMonomial apply(const ExpMonomial& m) const { return {m.phase, apply(m.lin)}; }
    QuadExp apply(const QuadExp& q) const;
    bool operator==(const Perm& o) const { return std::minmax(i, j) == std::minmax(o.i, o.j); }
};

// Text forms. Monomial: "q^{r} * exp(<coeff>*<symbol> + ...)", optionally prefixed by
// "epi^{c0} * " and "qd^{cm2} * " (qd = e^{pi i b^-2}). Symbols: pb*u, ib*du, pb*nu1, ...
std::string to_string(const PhaseScalar& p);
std::string to_string(const LinForm& l);
std::string to_string(const ExpMonomial& m);
std::string to_string(const MonomialSum& s);
std::string to_string(const QuadExp& q);
std::string to_string(const Perm& p);

LinForm parse_linform(const std::string& s);
ExpMonomial parse_monomial(const std::string& s);
QuadExp parse_quad(const std::string& s);
Perm parse_perm(const std::string& s);

}  // namespace qgv::sym
