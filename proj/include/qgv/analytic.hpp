// Pointwise test functions, complex powers of the sl2 generators acting on them, matrix
// elements by quadrature, and the numeric checks built on top: the generalized Kac identity,
// the eigenfunction property of Phi_lambda and the norm comparison for the Phi transform.
#pragma once

#include "qgv/quadrature.hpp"
#include "qgv/representations.hpp"
#include "qgv/special_functions.hpp"

#include <array>
#include <memory>
#include <variant>
#include <vector>

namespace qgv::an {

enum class NodeKind { Gaussian, ExpAffine, GbFactor, Shift, Scalar, Product, Sum };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

// Gaussian:  exp(-pi a (z - c)^2 + slope z), Re a > 0
// ExpAffine: exp(c0 + c1 z)
// GbFactor:  G_b(slope z + offset)^sign, sign = +-1
// Shift:     child(z + delta)
// Scalar:    constant
// Product:   product of children
// Sum:       sum of children
struct Node {
    NodeKind kind = NodeKind::Scalar;
    cd p0{}, p1{}, p2{};
    int sign = 1;
    std::vector<NodePtr> children;
};

class PointwiseFunction {
public:
    PointwiseFunction();  // the constant 1

    static PointwiseFunction gaussian(cd a, cd center, cd slope);
    static PointwiseFunction exp_affine(cd c0, cd c1);
    static PointwiseFunction gb_factor(int sign, cd slope, cd offset);
    static PointwiseFunction scalar(cd c);

    PointwiseFunction operator*(const PointwiseFunction& o) const;
    PointwiseFunction operator+(const PointwiseFunction& o) const;
    PointwiseFunction shifted(cd delta) const;

    std::size_t count(NodeKind k) const;
    const NodePtr& root() const { return root_; }

private:
    explicit PointwiseFunction(NodePtr n) : root_(std::move(n)) {}
    NodePtr root_;
};

// Default test function e^{-pi (u - c)^2 + beta u}.
PointwiseFunction test_gaussian(double center, double beta);

// X^{i sigma} for X = g_b(W_1..W_m) core g_b^*(W_m..W_1); sigma = -i gives X itself.
struct Power {
    rep::ConjugatedGenerator gen;
    cd sigma;
};
using WordFactor = std::variant<Power, PointwiseFunction>;

struct MatrixOptions {
    double line_shift = 0.0;  // integrate over Im u = line_shift
    double tol = 1e-12;
    double abs_tol = -1;  // negative: relative tolerance only
    quad::Execution execution = quad::default_execution();
};

struct KacCheckSpec {
    double s = 0.3, t = 0.5, nu = 0.4;
    PointwiseFunction f, g;
    double eps = 0.0;      // tau line height; 0 selects the default
    double radius = 0.0;   // detour radius around tau = 0; 0 selects the default
    double u_shift = 0.0;  // u line height for the tau kernel; 0 selects the default (never 0 itself)
    double tol = 1e-10;    // quadrature tolerance
};

struct KacReport {
    cd lhs, rhs_detour, rhs_split, rhs_closed;  // closed: line plus the exact residue at tau = 0
    cd ratio;                                    // rhs_detour / lhs
    double deviation = 0.0;                      // |lhs - rhs| / |lhs|
    double contour_agreement = 0.0;              // |detour - split| / |detour|
    double eps = 0.0, radius = 0.0, u_shift = 0.0;
    std::size_t tau_nodes = 0;
};

struct EigenCheckSpec {
    double lambda = 0.5;
    cd w{0.0, 0.3};
    std::vector<cd> u_points;  // empty selects five points on Im u = 0.4
    double tol = 1e-11;
};

struct EigenReport {
    std::vector<cd> ratios;
    cd constant;              // mean of the ratios
    double u_spread = 0.0;    // max |r_k - r_0| / |r_0|
    double unimodular = 0.0;  // ||constant| - 1|
};

struct TransformSpec {
    double u_shift = 0.3;        // F(lambda) integrates over Im u = -u_shift
    double tail = 1e-14;         // relative size of |F|^2 mu that ends the lambda range
    double tol = 1e-10;
    double inverse_eps = 0.2;    // inverse uses eps and eps/2 with linear extrapolation
    double inverse_point = 0.3;  // real u at which the round trip is evaluated
};

struct IsometryReport {
    double norm_f = 0.0;   // int |f|^2 du
    double norm_F = 0.0;   // int |F|^2 dmu
    double ratio = 0.0;    // norm_F / norm_f
    double cutoff = 0.0;   // lambda range used
    double tail = 0.0;     // |F|^2 mu at the cutoff relative to its peak
    cd f_point, f_roundtrip;
    double roundtrip_error = 0.0;
};

class AnalyticEngine {
public:
    explicit AnalyticEngine(ModularParameter mp);

    const ModularParameter& parameter() const { return gb_.parameter(); }
    const GbEvaluator& gb() const { return gb_; }

    cd eval(const PointwiseFunction& f, cd z) const;

    // sl2 generators in conjugated form: K (no prefix), E and F.
    const rep::ConjugatedGenerator& K() const { return K_; }
    const rep::ConjugatedGenerator& E() const { return E_; }
    const rep::ConjugatedGenerator& F() const { return F_; }

    // nu = (nu_1, nu_2); only the u coordinate may appear in the generator.
    PointwiseFunction apply_power(const rep::ConjugatedGenerator& gen, cd sigma, std::array<double, 2> nu,
                                  const PointwiseFunction& f) const;
    // Action of a monomial sum term by term, used as an independent oracle for sigma = -i.
    PointwiseFunction apply_sum(const std::vector<sym::ExpMonomial>& terms, std::array<double, 2> nu,
                                const PointwiseFunction& f) const;

    // <f, W g> with W applied right to left.
    quad::QuadratureResult matrix_element(const PointwiseFunction& f, const std::vector<WordFactor>& word,
                                          const PointwiseFunction& g, std::array<double, 2> nu,
                                          const MatrixOptions& opt = {}) const;

    // G_b(-i b sigma), the divided power prefactor.
    cd divided_power_prefactor(cd sigma) const;

    KacReport kac_check(const KacCheckSpec& spec) const;
    void kac_defaults(KacCheckSpec& spec) const;

    cd phi_lambda(double lambda, cd u) const;
    EigenReport eigenfunction_check(const EigenCheckSpec& spec) const;

    double measure(double lambda) const;  // 4 sinh(pi b lambda) sinh(pi lambda / b)
    cd transform(const PointwiseFunction& f, double lambda, const TransformSpec& spec) const;
    IsometryReport isometry_check(const PointwiseFunction& f, const TransformSpec& spec) const;

private:
    GbEvaluator gb_;
    rep::ConjugatedGenerator K_, E_, F_;
};

// Multiprecision Phi_lambda(u) = e^{pi i u^2 + pi Q u} G_b(-iu + i lambda) G_b(-iu - i lambda).
mp::Complex phi_lambda_eval(const GbEvaluator& gb, const mp::Real& lambda, const mp::Complex& u, long prec);

}  // namespace qgv::an
