#include "qgv/report.hpp"

#include "qgv/analytic.hpp"
#include "qgv/quadrature.hpp"
#include "qgv/representations.hpp"
#include "qgv/rewrite.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace qgv::report {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string mpnum(const mp::Real& x) { return x.to_string(); }

Status verdict(double residual, double tol) { return residual <= tol ? Status::Pass : Status::Fail; }

double tol_or(const SuiteConfig& cfg, double fallback) { return cfg.tol ? *cfg.tol : fallback; }

Check numeric(std::string id, double residual, double tol, Fields details = {}) {
    return {std::move(id), verdict(residual, tol), num(residual), num(tol), std::move(details)};
}

std::string cnum(cd z) { return num(z.real()) + " " + num(z.imag()) + "i"; }
std::string cnum(const mp::Complex& z) { return mpnum(z.real()) + " " + mpnum(z.imag()) + "i"; }

double rel(const mp::Complex& a, const mp::Complex& b) { return (mp::abs(a - b) / mp::abs(b)).to_double(); }

// uniform doubles from the raw 64-bit stream, identical on every platform
class Uniform {
public:
    explicit Uniform(std::uint64_t seed) : g_(seed) {}
    double operator()(double lo, double hi) { return lo + (hi - lo) * (static_cast<double>(g_() >> 11) * 0x1p-53); }

private:
    std::mt19937_64 g_;
};

mp::Complex mpc(cd z) { return {mp::Real(z.real()), mp::Real(z.imag())}; }
mp::Complex mpi() { return {mp::Real(0.0), mp::Real(1.0)}; }

// ---------------------------------------------------------------- scalar

std::vector<cd> regular_points(const ModularParameter& par, std::uint64_t seed, int count) {
    Uniform u(seed);
    const double b = par.b(), Q = par.Q();
    std::vector<cd> pts;
    while (static_cast<int>(pts.size()) < count) {
        const cd z(u(-2.0, Q + 2.0), u(-1.5, 1.5));
        // every argument used by the shift and reflection checks stays off the lattice
        bool ok = true;
        for (cd w : {z, z + b, z + 1.0 / b, Q - z})
            if (lattice_classify(par, w).distance < 0.05) ok = false;
        if (ok) pts.push_back(z);
    }
    return pts;
}

void scalar_suite(const SuiteConfig& cfg, Report& rep) {
    const auto par = ModularParameter::from_string(cfg.b);
    GbEvaluator gb(par);
    const long prec = cfg.prec;
    mp::PrecisionScope scope(prec);
    const mp::Real pi = mp::Real::pi(), b = par.b_mp(), Q = par.Q_mp();
    const mp::Complex i = mpi();
    auto G = [&](const mp::Complex& z) { return gb.eval(z, prec).value; };
    std::vector<Check> out;

    {
        const auto pts = regular_points(par, cfg.seed, 100);
        const double tol = tol_or(cfg, 1e-20);
        double worst_b = 0, worst_binv = 0, worst_refl = 0;
        cd at_b, at_binv, at_refl;
        for (cd zd : pts) {
            const mp::Complex z = mpc(zd), Gz = G(z);
            for (int inv = 0; inv < 2; ++inv) {
                const mp::Real step = inv ? mp::Real(1.0) / b : b;
                const mp::Complex lhs = G(z + mp::Complex(step));
                const mp::Complex rhs = (mp::Complex(1.0) - mp::exp(mp::Complex(2.0) * pi * i * step * z)) * Gz;
                const double r = rel(rhs, lhs);
                double& worst = inv ? worst_binv : worst_b;
                if (r > worst) {
                    worst = r;
                    (inv ? at_binv : at_b) = zd;
                }
            }
            const mp::Complex refl = mp::exp(pi * i * z * (z - mp::Complex(Q)));
            const double r = rel(Gz * G(mp::Complex(Q) - z), refl);
            if (r > worst_refl) {
                worst_refl = r;
                at_refl = zd;
            }
        }
        const std::string n = std::to_string(pts.size());
        out.push_back(numeric("scalar/functional-b", worst_b, tol, {{"points", n}, {"worst_at", cnum(at_b)}}));
        out.push_back(numeric("scalar/functional-binv", worst_binv, tol, {{"points", n}, {"worst_at", cnum(at_binv)}}));
        out.push_back(numeric("scalar/reflection", worst_refl, tol, {{"points", n}, {"worst_at", cnum(at_refl)}}));
    }

    {
        const double tol = tol_or(cfg, 1e-20);
        for (int side = 0; side < 2; ++side) {
            double worst = 0;
            for (double x : {-1.0, 0.4, par.Q() / 2, 1.7, 3.0}) {
                const mp::Complex z = mpc(cd(x, side ? -50.0 : 50.0));
                worst = std::max(worst, rel(G(z), gb.asymptotic(z, prec)));
            }
            out.push_back(numeric(side ? "scalar/asymptotic-lower" : "scalar/asymptotic-upper", worst, tol,
                                  {{"im_z", side ? "-50" : "50"}, {"points", "5"}}));
        }
    }

    {
        const double tol = tol_or(cfg, 1e-20);
        double worst = 0;
        for (double x : {0.1, 0.6, 1.0, 2.7, 9.0})
            worst = std::max(worst, std::abs(mp::abs(gb.small_g_log(mp::log(mp::Complex(x)), prec)).to_double() - 1.0));
        out.push_back(numeric("scalar/smallg-unimodular", worst, tol, {{"points", "5"}}));
    }

    // double-precision quadrature identities
    const double qtol = 1e-12;
    {
        const double tol = tol_or(cfg, 1e-8);
        const double bd = par.b(), Qd = par.Q();
        double worst = 0;
        Fields det;
        // line below the pole of G(-i tau) at 0, then the residue term (+1) restores the contour above it
        const double shift = -par.m() / 2;
        for (double x : {0.25, 0.7, 1.3, 2.6, 4.5}) {
            const double lx = std::log(x);
            auto f = [&](cd t) { return std::exp(cd(0, 1) * t * lx / bd + kPi * Qd * t) * gb.eval(cd(0, -1) * t); };
            const cd v = quad::integrate_line(f, shift, qtol).value + 1.0;
            const cd g = gb.small_g(x);
            const double r = std::abs(v - g) / std::abs(g);
            worst = std::max(worst, r);
            det.emplace_back("x=" + num(x), num(r));
        }
        det.emplace_back("line_shift", num(shift));
        out.push_back(numeric("scalar/fourier-smallg", worst, tol, std::move(det)));
    }
    {
        const double tol = tol_or(cfg, 1e-8);
        const double Qd = par.Q();
        struct Triple {
            cd a, b, c;
        };
        const std::vector<Triple> triples{{0.3 * Qd, 0.3 * Qd, 0.25 * Qd},
                                          {0.2 * Qd, 0.35 * Qd, 0.3 * Qd},
                                          {0.4 * Qd, 0.15 * Qd, 0.2 * Qd},
                                          {cd(0.3 * Qd, 0.1), cd(0.25 * Qd, -0.15), 0.2 * Qd},
                                          {0.1 * Qd, 0.45 * Qd, cd(0.35 * Qd, 0.2)}};
        double worst = 0;
        Fields det;
        for (std::size_t k = 0; k < triples.size(); ++k) {
            const auto [al, be, ga] = triples[k];
            auto f = [&](cd t) {
                const cd it = cd(0, 1) * t;
                return std::exp(-2 * kPi * ga * t) * gb.eval(al + it) * gb.eval(be + it) /
                       (gb.eval(al + be + ga + it) * gb.eval(Qd + it));
            };
            // between the pole at tau = 0 and the first poles of the numerator
            const double shift = 0.5 * std::min(al.real(), be.real());
            const cd v = quad::integrate_line(f, shift, qtol).value;
            const cd closed =
                gb.eval(al) * gb.eval(be) * gb.eval(ga) / (gb.eval(al + ga) * gb.eval(be + ga));
            const double r = std::abs(v - closed) / std::abs(closed);
            worst = std::max(worst, r);
            det.emplace_back("triple" + std::to_string(k + 1), num(r));
        }
        out.push_back(numeric("scalar/four-five", worst, tol, std::move(det)));
    }

    {
        const auto m = measure_inversion_constant(cfg.b, prec);
        const double tol = tol_or(cfg, 1e-10);
        Fields det{{"constant", cnum(m.constant)}, {"points", std::to_string(m.xs.size())}};
        det.emplace_back("identified", m.phase ? sym::to_string(*m.phase) : "none");
        out.push_back(numeric("scalar/inversion-constant", m.spread, tol, std::move(det)));
        rep.measured.emplace_back("inversion_constant", cnum(m.constant));
        rep.measured.emplace_back("inversion_constant_phase", m.phase ? sym::to_string(*m.phase) : "none");
    }

    std::sort(out.begin(), out.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
    rep.checks.insert(rep.checks.end(), out.begin(), out.end());
}

// ---------------------------------------------------------------- symbolic

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void symbolic_suite(const SuiteConfig&, Report& rep) {
    std::vector<Check> out;
    auto exact = [](std::string id, const std::string& residual, Fields det = {}) {
        return Check{std::move(id), residual.empty() ? Status::Pass : Status::Fail,
                     residual.empty() ? "exact-zero" : residual, "exact", std::move(det)};
    };
    const std::vector<rep::GeneratorSet> sets{rep::sl2_generators(), rep::sl3_generators(rep::Word::S1S2S1),
                                              rep::sl3_generators(rep::Word::S2S1S2)};
    for (const auto& g : sets) {
        const std::string w = rep::word_name(g.word);
        for (const auto& rel : rep::relation_manifest(g)) {
            const auto r = rep::check_relation(g, rel);
            out.push_back(exact("symbolic/" + w + "/" + rel.id(), r.holds() ? "" : sym::to_string(r.residual)));
        }
        for (const auto* family : {&g.E, &g.F})
            for (const auto& x : *family) {
                std::string residual;
                try {
                    const auto c = rep::conjugated_form(x);
                    const auto diff = rep::expand_conjugated(c) - x.sum();
                    if (!diff.is_zero()) residual = sym::to_string(diff);
                } catch (const std::exception& e) {
                    residual = e.what();
                }
                out.push_back(exact("symbolic/" + w + "/conjugated-" + x.name, residual));
            }
    }
    const std::string path = std::string(QGV_FIXTURE_DIR) + "/relations_manifest.txt";
    const std::string frozen = read_file(path);
    out.push_back(exact("symbolic/manifest-frozen", frozen == rep::manifest_text() ? "" : "manifest differs from fixture",
                        {{"fixture", "relations_manifest.txt"}}));
    std::sort(out.begin(), out.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
    rep.checks.insert(rep.checks.end(), out.begin(), out.end());
}

// ---------------------------------------------------------------- rewrite

void rewrite_suite(const SuiteConfig& cfg, Report& rep, const InversionMeasurement& m) {
    std::vector<Check> out;
    rw::RewriteEngine engine;
    if (m.phase) engine.inject_inversion_constant(*m.phase);
    for (const auto& name : rw::list_scripts()) {
        const auto r = rw::replay(rw::load_script(name), engine);
        Fields det{{"steps", std::to_string(r.steps.size())},
                   {"side_conditions", std::to_string(r.conditions_checked)}};
        out.push_back({"rewrite/" + name, r.ok ? Status::Pass : Status::Fail, r.ok ? "exact-zero" : r.failure, "exact",
                       std::move(det)});
    }
    std::sort(out.begin(), out.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
    rep.checks.insert(rep.checks.end(), out.begin(), out.end());
    if (std::none_of(rep.measured.begin(), rep.measured.end(),
                     [](const auto& f) { return f.first == "inversion_constant"; })) {
        rep.measured.emplace_back("inversion_constant", cnum(m.constant));
        rep.measured.emplace_back("inversion_constant_phase", m.phase ? sym::to_string(*m.phase) : "none");
    }
    (void)cfg;
}

// ---------------------------------------------------------------- analytic

void kac_suite(const SuiteConfig& cfg, Report& rep) {
    an::AnalyticEngine eng(ModularParameter::from_string(cfg.b));
    const std::array<std::array<double, 3>, 2> points{{{0.3, 0.5, 0.4}, {0.7, 0.2, 0.6}}};
    const an::PointwiseFunction fa = an::test_gaussian(0.2, 0.3), ga = an::test_gaussian(-0.1, 0.2);
    const an::PointwiseFunction fb = an::test_gaussian(0.0, 0.1), gb = an::test_gaussian(0.3, -0.2);
    std::vector<Check> out;
    for (std::size_t k = 0; k < points.size(); ++k) {
        const std::string tag = std::to_string(k + 1);
        an::KacCheckSpec spec;
        spec.s = points[k][0];
        spec.t = points[k][1];
        spec.nu = points[k][2];
        spec.f = fa;
        spec.g = ga;
        const auto ra = eng.kac_check(spec);
        spec.f = fb;
        spec.g = gb;
        const auto rb = eng.kac_check(spec);
        const Fields where{{"s", num(spec.s)}, {"t", num(spec.t)}, {"nu", num(spec.nu)}};
        Fields det = where;
        det.insert(det.end(), {{"lhs", cnum(ra.lhs)},
                               {"rhs", cnum(ra.rhs_detour)},
                               {"rhs_residue_split", cnum(ra.rhs_split)},
                               {"rhs_line_plus_residue", cnum(ra.rhs_closed)},
                               {"ratio", cnum(ra.ratio)},
                               {"eps", num(ra.eps)},
                               {"radius", num(ra.radius)},
                               {"u_line", num(ra.u_shift)},
                               {"tau_nodes", std::to_string(ra.tau_nodes)}});
        out.push_back(numeric("sl2-kac/identity-" + tag, ra.deviation, tol_or(cfg, 1e-4), std::move(det)));
        out.push_back(numeric("sl2-kac/contours-" + tag, std::max(ra.contour_agreement, rb.contour_agreement),
                                     tol_or(cfg, 1e-8), where));
        Fields pd = where;
        pd.insert(pd.end(), {{"ratio_pair_a", cnum(ra.ratio)}, {"ratio_pair_b", cnum(rb.ratio)}});
        out.push_back(numeric("sl2-kac/pair-consistency-" + tag, std::abs(ra.ratio - rb.ratio) / std::abs(ra.ratio),
                                     tol_or(cfg, 1e-4), std::move(pd)));
        rep.measured.emplace_back("kac_ratio_" + tag, cnum(ra.ratio));
    }
    std::sort(out.begin(), out.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
    rep.checks.insert(rep.checks.end(), out.begin(), out.end());
}

void eigen_suite(const SuiteConfig& cfg, Report& rep) {
    an::AnalyticEngine eng(ModularParameter::from_string(cfg.b));
    const std::array<std::pair<double, cd>, 2> cases{{{0.5, cd(0, 0.3)}, {0.8, cd(0, -0.2)}}};
    std::vector<Check> out;
    for (std::size_t k = 0; k < cases.size(); ++k) {
        const std::string tag = std::to_string(k + 1);
        an::EigenCheckSpec spec;
        spec.lambda = cases[k].first;
        spec.w = cases[k].second;
        const auto r = eng.eigenfunction_check(spec);
        const Fields where{{"lambda", num(spec.lambda)}, {"w", cnum(spec.w)}, {"constant", cnum(r.constant)}};
        out.push_back(numeric("eigen/u-independence-" + tag, r.u_spread, tol_or(cfg, 1e-6), where));
        out.push_back(numeric("eigen/unimodular-" + tag, r.unimodular, tol_or(cfg, 1e-6), where));
        rep.measured.emplace_back("eigen_constant_" + tag, cnum(r.constant));
    }
    std::sort(out.begin(), out.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
    rep.checks.insert(rep.checks.end(), out.begin(), out.end());
}

void isometry_suite(const SuiteConfig& cfg, Report& rep) {
    an::AnalyticEngine eng(ModularParameter::from_string(cfg.b));
    const auto r = eng.isometry_check(an::test_gaussian(0.2, 0.3), an::TransformSpec{});
    rep.checks.push_back(numeric("isometry/norm-ratio", std::abs(r.ratio - 1.0), tol_or(cfg, 1e-3),
                                 {{"norm_f", num(r.norm_f)},
                                  {"norm_transform", num(r.norm_F)},
                                  {"ratio", num(r.ratio)},
                                  {"lambda_cutoff", num(r.cutoff)},
                                  {"tail", num(r.tail)},
                                  {"roundtrip_error", num(r.roundtrip_error)}}));
    rep.measured.emplace_back("isometry_norm_ratio", num(r.ratio));
}

bool wants(const std::string& suite, const char* id) { return suite == "all" || suite == id; }

}  // namespace

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Skipped: return "skipped";
    }
    return "skipped";
}

bool Report::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.status != Status::Fail; });
}

SuiteConfig resolve_config(std::optional<std::string> suite, std::optional<std::string> b_flag,
                           std::optional<long> prec_flag, std::optional<double> tol_flag,
                           std::optional<std::uint64_t> seed_flag) {
    SuiteConfig cfg;
    if (suite) cfg.suite = *suite;
    if (std::find(suite_ids().begin(), suite_ids().end(), cfg.suite) == suite_ids().end())
        throw UsageError("unknown suite '" + cfg.suite + "'");
    if (b_flag)
        cfg.b = *b_flag;
    else if (const char* e = std::getenv("QGV_B"); e && *e)
        cfg.b = e;
    if (prec_flag)
        cfg.prec = *prec_flag;
    else if (const char* e = std::getenv("QGV_PREC"); e && *e) {
        try {
            std::size_t used = 0;
            cfg.prec = std::stol(e, &used);
            if (used != std::string(e).size()) throw UsageError("");
        } catch (const std::exception&) {
            throw UsageError(std::string("QGV_PREC is not an integer: '") + e + "'");
        }
    }
    try {
        std::size_t used = 0;
        const double b = std::stod(cfg.b, &used);
        if (used != cfg.b.size() || !(b > 0) || !std::isfinite(b)) throw UsageError("");
    } catch (const std::exception&) {
        throw UsageError("b must be a positive decimal, got '" + cfg.b + "'");
    }
    if (cfg.prec < 64) throw UsageError("prec must be at least 64 bits");
    if (tol_flag) {
        if (!(*tol_flag > 0)) throw UsageError("tol must be positive");
        cfg.tol = tol_flag;
    }
    if (seed_flag) cfg.seed = *seed_flag;
    return cfg;
}

InversionMeasurement measure_inversion_constant(const std::string& b_text, long prec) {
    InversionMeasurement m;
    m.xs = {0.3, 0.7, 1.9, 3.2, 6.5};
    auto at = [&](const std::string& bt, const std::vector<double>& xs) {
        const auto par = ModularParameter::from_string(bt);
        GbEvaluator gb(par);
        mp::PrecisionScope scope(prec);
        const mp::Real pi = mp::Real::pi(), b = par.b_mp();
        std::vector<mp::Complex> cs;
        for (double x : xs) {
            const mp::Complex lx = mp::log(mp::Complex(x));
            const mp::Complex gg = gb.small_g_log(lx, prec) * gb.small_g_log(-lx, prec);
            const mp::Complex gauss = mp::exp(mpi() * lx * lx / (mp::Complex(4.0) * pi * b * b));
            cs.push_back(gg / gauss);
        }
        return cs;
    };
    const auto cs = at(b_text, m.xs);
    {
        mp::PrecisionScope scope(prec);
        mp::Complex sum(0.0);
        for (const auto& c : cs) {
            sum += c;
            m.spread = std::max(m.spread, rel(c, cs.front()));
        }
        m.constant = sum / mp::Complex(static_cast<double>(cs.size()));
    }

    // a second value of b separates the b^2 and b^-2 parts of the phase
    const std::string aux_text = b_text == "0.6180339887498949" ? "0.5772156649015329" : "0.6180339887498949";
    const cd c_main = m.constant.to_complex(), c_aux = at(aux_text, {1.9}).front().to_complex();
    const double b1 = std::stod(b_text), b2 = std::stod(aux_text);
    std::vector<sym::PhaseScalar> hits;
    for (int j = 0; j < 48; ++j)
        for (int k2 = -12; k2 <= 12; ++k2)
            for (int km2 = -12; km2 <= 12; ++km2) {
                auto phase = [&](double bb) {
                    return std::exp(cd(0, kPi * (j / 24.0 + k2 / 24.0 * bb * bb + km2 / 24.0 / (bb * bb))));
                };
                if (std::abs(phase(b1) - c_main) < 1e-9 && std::abs(phase(b2) - c_aux) < 1e-9)
                    hits.emplace_back(sym::Rational(j, 24), sym::Rational(k2, 24), sym::Rational(km2, 24));
            }
    if (hits.size() == 1) m.phase = hits.front();
    return m;
}

Report run_suite(const SuiteConfig& cfg) {
    Report rep;
    rep.suite = cfg.suite;
    rep.b = cfg.b;
    rep.prec = cfg.prec;
    if (wants(cfg.suite, "scalar")) scalar_suite(cfg, rep);
    if (wants(cfg.suite, "symbolic")) symbolic_suite(cfg, rep);
    if (wants(cfg.suite, "rewrite")) rewrite_suite(cfg, rep, measure_inversion_constant(cfg.b, cfg.prec));
    if (wants(cfg.suite, "sl2-kac")) kac_suite(cfg, rep);
    if (wants(cfg.suite, "eigen")) eigen_suite(cfg, rep);
    if (wants(cfg.suite, "isometry")) isometry_suite(cfg, rep);
    return rep;
}

std::string to_json(const Report& r) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["b"] = r.b;
    j["prec"] = std::to_string(r.prec);
    auto& measured = j["measured"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.measured) measured[k] = v;
    auto& checks = j["checks"] = nlohmann::ordered_json::array();
    std::size_t passed = 0, failed = 0;
    for (const auto& c : r.checks) {
        nlohmann::ordered_json e;
        e["id"] = c.id;
        e["status"] = status_name(c.status);
        e["residual"] = c.residual;
        e["tolerance"] = c.tolerance;
        auto& d = e["details"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : c.details) d[k] = v;
        checks.push_back(std::move(e));
        passed += c.status == Status::Pass;
        failed += c.status == Status::Fail;
    }
    j["summary"] = {{"total", std::to_string(r.checks.size())},
                    {"passed", std::to_string(passed)},
                    {"failed", std::to_string(failed)}};
    return j.dump(2) + "\n";
}

void emit_report(const Report& r, const std::string& path) {
    const std::string text = to_json(r);
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write report to '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

SampleKind parse_sample_kind(const std::string& s) {
    if (s == "gb-line") return SampleKind::GbLine;
    if (s == "phi-lambda") return SampleKind::PhiLambda;
    throw UsageError("unknown sample kind '" + s + "' (expected gb-line or phi-lambda)");
}

SampleRange parse_range(const std::string& s) {
    SampleRange r;
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw UsageError("range must look like lo:hi or lo:hi@im");
    const auto at = s.find('@', colon);
    try {
        std::size_t used = 0;
        const std::string lo = s.substr(0, colon);
        const std::string hi = s.substr(colon + 1, at == std::string::npos ? std::string::npos : at - colon - 1);
        r.lo = std::stod(lo, &used);
        if (used != lo.size()) throw UsageError("");
        r.hi = std::stod(hi, &used);
        if (used != hi.size()) throw UsageError("");
        if (at != std::string::npos) {
            const std::string im = s.substr(at + 1);
            r.im = std::stod(im, &used);
            if (used != im.size()) throw UsageError("");
        }
    } catch (const std::exception&) {
        throw UsageError("cannot parse range '" + s + "'");
    }
    if (!(r.hi > r.lo)) throw UsageError("range needs lo < hi");
    return r;
}

void sample_csv(SampleKind what, const SampleRange& range, double step, const std::string& path,
                const SuiteConfig& cfg, double lambda) {
    if (!(step > 0) || !std::isfinite(step)) throw UsageError("step must be positive");
    const auto par = ModularParameter::from_string(cfg.b);
    GbEvaluator gb(par);
    const long n = static_cast<long>(std::floor((range.hi - range.lo) / step + 1e-9)) + 1;
    const double guard = kLatticeGuard * par.Q();
    std::vector<cd> zs;
    for (long k = 0; k < n; ++k) {
        const cd z(range.lo + static_cast<double>(k) * step, range.im);
        std::vector<cd> args{z};
        if (what == SampleKind::PhiLambda) args = {cd(0, -1) * z + cd(0, lambda), cd(0, -1) * z - cd(0, lambda)};
        for (cd a : args) {
            const auto p = lattice_classify(par, a);
            if (p.kind != LatticeKind::Regular && p.distance < guard)
                throw UsageError(std::string("range contains a ") + (p.kind == LatticeKind::Pole ? "pole" : "zero") +
                                 " near z = " + cnum(z));
        }
        zs.push_back(z);
    }
    std::ostringstream os;
    os << "re(z),im(z),re(val),im(val),abs(val)\n";
    mp::PrecisionScope scope(cfg.prec);
    for (cd z : zs) {
        const mp::Complex v = what == SampleKind::GbLine ? gb.eval(mpc(z), cfg.prec).value
                                                         : an::phi_lambda_eval(gb, mp::Real(lambda), mpc(z), cfg.prec);
        os << num(z.real()) << ',' << num(z.imag()) << ',' << mpnum(v.real()) << ',' << mpnum(v.imag()) << ','
           << mpnum(mp::abs(v)) << '\n';
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write csv to '" + path + "'");
    out << os.str();
}

}  // namespace qgv::report
