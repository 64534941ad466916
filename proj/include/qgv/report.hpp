// Suite runner, scalar identity checks, JSON reports and CSV sampling behind the qgv tool.
#pragma once

#include "qgv/qweyl.hpp"
#include "qgv/special_functions.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qgv::report {

inline const std::vector<std::string>& suite_ids() {
    static const std::vector<std::string> ids{"scalar", "symbolic", "rewrite", "sl2-kac", "eigen", "isometry", "all"};
    return ids;
}

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SuiteConfig {
    std::string suite = "all";
    std::string b = "0.75";  // decimal text, so the multiprecision path sees the exact input
    long prec = 192;
    std::optional<double> tol;  // replaces every numeric tolerance when set
    std::uint64_t seed = 20240917;
};

// Flags win over QGV_B / QGV_PREC, which win over the defaults; throws UsageError on bad input.
SuiteConfig resolve_config(std::optional<std::string> suite, std::optional<std::string> b_flag,
                           std::optional<long> prec_flag, std::optional<double> tol_flag,
                           std::optional<std::uint64_t> seed_flag);

enum class Status { Pass, Fail, Skipped };
std::string status_name(Status s);

using Fields = std::vector<std::pair<std::string, std::string>>;

// fail <=> residual > tolerance for numeric checks, nonempty residual for exact ones.
struct Check {
    std::string id;
    Status status = Status::Skipped;
    std::string residual;  // decimal string, or "exact-zero"
    std::string tolerance;  // decimal string, or "exact"
    Fields details;
};

struct Report {
    std::string suite, b;
    long prec = 0;
    Fields measured;  // inversion constant, eigenfunction constant, Kac ratio, norm ratio
    std::vector<Check> checks;  // ordered by check id within each suite
    bool all_pass() const;
};

// Full-precision decimal text for a double.
std::string num(double x);

// Measured C in g_b(x) g_b(1/x) = C e^{i pi log^2 x / (4 pi^2 b^2)}.
struct InversionMeasurement {
    mp::Complex constant;       // mean over the sample points
    double spread = 0.0;        // max |C(x) - C(x_0)| / |C(x_0)|
    std::vector<double> xs;
    std::optional<sym::PhaseScalar> phase;  // exact identification, checked at b and at an auxiliary b
};
InversionMeasurement measure_inversion_constant(const std::string& b, long prec);

Report run_suite(const SuiteConfig& cfg);
std::string to_json(const Report& r);
void emit_report(const Report& r, const std::string& path);  // "-" writes to stdout

enum class SampleKind { GbLine, PhiLambda };
SampleKind parse_sample_kind(const std::string& s);

// "lo:hi" along the real direction, optionally "lo:hi@im" for the imaginary offset.
struct SampleRange {
    double lo = 0, hi = 0, im = 0;
};
SampleRange parse_range(const std::string& s);

// Columns re(z), im(z), re(val), im(val), abs(val). Throws UsageError on a bad step or a lattice
// point inside the range.
void sample_csv(SampleKind what, const SampleRange& range, double step, const std::string& path,
                const SuiteConfig& cfg, double lambda = 0.5);

}  // namespace qgv::report
