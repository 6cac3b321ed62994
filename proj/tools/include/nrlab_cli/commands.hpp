#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nrlab/catalog.hpp"
#include "nrlab/matrix.hpp"

namespace nrlab::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_violated = 2;

/// Full command line: subcommands certify, examples, radius, search.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct ExampleValue {
    std::string label;
    double computed = 0.0;
    double reference = 0.0;
    int decimals = 2;

    bool rounds_to_reference() const;
    bool truncates_to_reference() const;
};

/// One of the two worked examples comparing the new sum bound with
/// Kittaneh's bound.
struct WorkedExample {
    std::string name;
    ComplexMatrix a;
    ComplexMatrix b;
    double lhs = 0.0;           ///< ||A+B||^2
    double new_bound = 0.0;     ///< sum-new-bound rhs
    double kittaneh_bound = 0.0;  ///< sum-sq-kittaneh rhs
    std::array<ExampleValue, 3> values;  ///< lhs, new bound, Kittaneh bound
    bool expect_new_above = false;       ///< expected strict order of the two bounds
    Status new_status = Status::NotApplicable;
    Status kittaneh_status = Status::NotApplicable;

    /// lhs < smaller bound < larger bound in the expected order.
    bool chain_holds() const;
};

std::vector<WorkedExample> worked_examples();

struct CertifyOptions {
    std::vector<std::string> ids{"all"};
    std::size_t dim = 2;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    double tol = default_tol_rel;
    std::string kind = "generic";
    double scale = 1.0;
    std::size_t sphere_samples = 5000;
    std::optional<std::string> report_path;
    std::string format = "json";
    bool timing = false;
};

int certify(const CertifyOptions& opts, std::ostream& out, std::ostream& err);
int examples(std::ostream& out);

struct RadiusOptions {
    std::string matrix_path;
    double tol = 1e-10;
    std::size_t grid = 720;
};

int radius(const RadiusOptions& opts, std::ostream& out, std::ostream& err);

struct SearchOptions {
    std::string id;
    std::size_t dim = 2;
    std::size_t restarts = 10;
    std::size_t steps = 20;
    std::uint64_t seed = 0;
    std::string kind = "generic";
    double scale = 1.0;
    std::optional<std::string> out_path;
};

struct SearchOutcome {
    CheckInstance instance;
    CheckResult result;
    double normalized_slack = 0.0;
    std::size_t evaluations = 0;
};

/// Random restarts, each followed by perturbation descent on the normalized
/// slack rhs - lhs over (1 + |lhs| + |rhs|). restarts = 0 returns the seed
/// instance (trial 0).
SearchOutcome search_min_slack(const SearchOptions& opts);
int search(const SearchOptions& opts, std::ostream& out, std::ostream& err);

/// Document written by `search`: parameters plus A, B, X in the matrix
/// exchange format.
std::string search_document(const SearchOptions& opts, const SearchOutcome& outcome);

}  // namespace nrlab::cli
