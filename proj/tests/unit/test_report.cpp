#include "qgv/report.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qgv;
using namespace qgv::report;

namespace {

std::string read(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct EnvGuard {
    EnvGuard() {
        unsetenv("QGV_B");
        unsetenv("QGV_PREC");
    }
    ~EnvGuard() {
        unsetenv("QGV_B");
        unsetenv("QGV_PREC");
    }
};

std::filesystem::path temp(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("config precedence: flags, then environment, then defaults") {
    EnvGuard guard;
    auto cfg = resolve_config("scalar", std::nullopt, std::nullopt, std::nullopt, std::nullopt);
    CHECK(cfg.b == "0.75");
    CHECK(cfg.prec == 192);
    setenv("QGV_B", "0.6", 1);
    setenv("QGV_PREC", "128", 1);
    cfg = resolve_config("scalar", std::nullopt, std::nullopt, std::nullopt, std::nullopt);
    CHECK(cfg.b == "0.6");
    CHECK(cfg.prec == 128);
    cfg = resolve_config("scalar", std::string("0.9"), 256L, 1e-6, 5ULL);
    CHECK(cfg.b == "0.9");
    CHECK(cfg.prec == 256);
    CHECK(cfg.tol == 1e-6);
    CHECK(cfg.seed == 5);
}

TEST_CASE("config validation") {
    EnvGuard guard;
    CHECK_THROWS_AS(resolve_config("nope", std::nullopt, std::nullopt, std::nullopt, std::nullopt), UsageError);
    CHECK_THROWS_AS(resolve_config("all", std::string("-1"), std::nullopt, std::nullopt, std::nullopt), UsageError);
    CHECK_THROWS_AS(resolve_config("all", std::string("0.7x"), std::nullopt, std::nullopt, std::nullopt), UsageError);
    CHECK_THROWS_AS(resolve_config("all", std::nullopt, 32L, std::nullopt, std::nullopt), UsageError);
    CHECK_THROWS_AS(resolve_config("all", std::nullopt, std::nullopt, 0.0, std::nullopt), UsageError);
    setenv("QGV_PREC", "lots", 1);
    CHECK_THROWS_AS(resolve_config("all", std::nullopt, std::nullopt, std::nullopt, std::nullopt), UsageError);
}

TEST_CASE("numbers are written at full precision") {
    CHECK(num(0.1) == "0.10000000000000001");
    CHECK(std::stod(num(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("empty report is valid JSON with zero checks") {
    Report r;
    r.suite = "scalar";
    r.b = "0.75";
    r.prec = 192;
    const auto j = nlohmann::json::parse(to_json(r));
    CHECK(j["checks"].empty());
    CHECK(j["summary"]["total"] == "0");
    CHECK(r.all_pass());
}

TEST_CASE("a failing check makes the report fail and is still written") {
    Report r;
    r.suite = "symbolic";
    r.b = "0.75";
    r.prec = 192;
    r.checks.push_back({"x/a", Status::Pass, "exact-zero", "exact", {}});
    r.checks.push_back({"x/b", Status::Fail, "0.5", "0.1", {{"note", "forced"}}});
    CHECK_FALSE(r.all_pass());
    const auto p = temp("qgv_report_fail.json");
    emit_report(r, p.string());
    const auto j = nlohmann::json::parse(read(p));
    CHECK(j["summary"]["failed"] == "1");
    CHECK(j["checks"][1]["details"]["note"] == "forced");
}

TEST_CASE("symbolic and rewrite suites pass and are byte-stable") {
    SuiteConfig cfg;
    cfg.suite = "symbolic";
    const auto a = run_suite(cfg), b = run_suite(cfg);
    CHECK(a.all_pass());
    CHECK(to_json(a) == to_json(b));
    for (const auto& c : a.checks) CHECK(c.residual == "exact-zero");
    CHECK(std::is_sorted(a.checks.begin(), a.checks.end(), [](const Check& x, const Check& y) { return x.id < y.id; }));

    cfg.suite = "rewrite";
    const auto rw = run_suite(cfg);
    CHECK(rw.all_pass());
    CHECK(rw.checks.size() == 14);
    const auto j = nlohmann::json::parse(to_json(rw));
    CHECK(j["measured"]["inversion_constant_phase"] == "qd^{1/12} * q^{1/12}");
}

TEST_CASE("inversion constant is x-independent and identified exactly") {
    const auto m = measure_inversion_constant("0.75", 128);
    CHECK(m.spread < 1e-30);
    REQUIRE(m.phase.has_value());
    CHECK(*m.phase == sym::PhaseScalar(0, sym::Rational(1, 12), sym::Rational(1, 12)));
    const cd c = m.constant.to_complex();
    CHECK(std::abs(c - std::exp(cd(0, 3.14159265358979323846 * (0.5625 + 1.0 / 0.5625) / 12))) < 1e-15);
}

TEST_CASE("CSV sampling") {
    SuiteConfig cfg;
    cfg.prec = 96;
    const auto p = temp("qgv_sample.csv");
    const ModularParameter par(0.75);
    sample_csv(SampleKind::GbLine, parse_range("0.1:1.98"), 0.47, p.string(), cfg);
    std::string text = read(p);
    CHECK(text.rfind("re(z),im(z),re(val),im(val),abs(val)\n", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);
    std::istringstream rows(text);
    std::string line;
    std::getline(rows, line);
    int count = 0;
    while (std::getline(rows, line)) {
        ++count;
        const auto last = line.rfind(',');
        CHECK(std::stod(line.substr(last + 1)) > 0.0);
    }
    CHECK(count == 5);

    sample_csv(SampleKind::PhiLambda, parse_range("-3:3@0.01"), 1.0, p.string(), cfg, 0.5);
    text = read(p);
    CHECK(std::count(text.begin(), text.end(), '\n') == 8);
    CHECK(text.find("nan") == std::string::npos);
    CHECK(text.find("inf") == std::string::npos);

    CHECK_THROWS_AS(sample_csv(SampleKind::GbLine, parse_range("0:1"), 0.0, p.string(), cfg), UsageError);
    CHECK_THROWS_AS(sample_csv(SampleKind::GbLine, parse_range("0:1"), -1.0, p.string(), cfg), UsageError);
    // passes through the pole at z = -b
    CHECK_THROWS_AS(sample_csv(SampleKind::GbLine, parse_range("-1:0.5"), 0.25, p.string(), cfg), UsageError);
    // lands on the zero at z = Q
    CHECK_THROWS_AS(sample_csv(SampleKind::GbLine, parse_range("1.5:2.5"), par.Q() - 1.5, p.string(), cfg), UsageError);
    CHECK_THROWS_AS(parse_range("1:0"), UsageError);
    CHECK_THROWS_AS(parse_range("abc"), UsageError);
    CHECK_THROWS_AS(parse_sample_kind("gb-plane"), UsageError);
}
