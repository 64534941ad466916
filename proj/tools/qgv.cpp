// qgv: run verification suites, replay derivation scripts and sample functions to CSV.
// Exit codes: 0 all checks pass, 1 some check failed, 2 usage or configuration error.
#include "qgv/report.hpp"
#include "qgv/rewrite.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

constexpr int kUsage = 2;

int run_verify(const qgv::report::SuiteConfig& cfg, const std::string& out) {
    const auto rep = qgv::report::run_suite(cfg);
    qgv::report::emit_report(rep, out);
    std::size_t failed = 0;
    for (const auto& c : rep.checks)
        if (c.status == qgv::report::Status::Fail) {
            ++failed;
            std::cerr << "FAIL " << c.id << "  residual " << c.residual << "  tolerance " << c.tolerance << '\n';
        }
    std::cerr << rep.checks.size() - failed << "/" << rep.checks.size() << " checks passed\n";
    return failed == 0 ? 0 : 1;
}

int run_replay(const qgv::report::SuiteConfig& cfg, const std::string& name) {
    const auto m = qgv::report::measure_inversion_constant(cfg.b, cfg.prec);
    qgv::rw::RewriteEngine engine;
    if (m.phase) engine.inject_inversion_constant(*m.phase);
    qgv::rw::DerivationScript s;
    try {
        s = qgv::rw::load_script(name);
    } catch (const qgv::rw::RewriteError& e) {
        throw qgv::report::UsageError(e.what());
    }
    const auto r = qgv::rw::replay(s, engine);
    std::cout << r.transcript();
    return r.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum dilogarithm and quantum group identity checks"};
    app.require_subcommand(1);

    std::optional<std::string> suite, b;
    std::optional<long> prec;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::string out = "-";
    auto* verify = app.add_subcommand("verify", "run a check suite and write a JSON report");
    verify->add_option("--suite", suite, "scalar, symbolic, rewrite, sl2-kac, eigen, isometry or all")->required();
    verify->add_option("--b", b, "modular parameter b > 0 (env QGV_B, default 0.75)");
    verify->add_option("--prec", prec, "working precision in bits (env QGV_PREC, default 192)");
    verify->add_option("--tol", tol, "replace every numeric tolerance");
    verify->add_option("--seed", seed, "seed for the random sample points");
    verify->add_option("--out", out, "report path, '-' for stdout");

    std::string script;
    auto* replay = app.add_subcommand("replay", "replay a derivation script and print its transcript");
    replay->add_option("--script", script, "script name")->required();
    replay->add_option("--b", b, "modular parameter b > 0");
    replay->add_option("--prec", prec, "working precision in bits");

    std::string what, range, csv;
    double step = 0;
    double lambda = 0.5;
    auto* sample = app.add_subcommand("sample", "sample G_b on a line or Phi_lambda and write CSV");
    sample->add_option("what", what, "gb-line or phi-lambda")->required();
    sample->add_option("--range", range, "lo:hi or lo:hi@im")->required();
    sample->add_option("--step", step, "spacing, > 0")->required();
    sample->add_option("--csv", csv, "output path")->required();
    sample->add_option("--lambda", lambda, "lambda for phi-lambda");
    sample->add_option("--b", b, "modular parameter b > 0");
    sample->add_option("--prec", prec, "working precision in bits");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*verify) return run_verify(qgv::report::resolve_config(suite, b, prec, tol, seed), out);
        const auto cfg = qgv::report::resolve_config(std::nullopt, b, prec, std::nullopt, std::nullopt);
        if (*replay) return run_replay(cfg, script);
        qgv::report::sample_csv(qgv::report::parse_sample_kind(what), qgv::report::parse_range(range), step, csv,
                                cfg, lambda);
        return 0;
    } catch (const qgv::report::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
