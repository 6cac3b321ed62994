#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nrlab/catalog.hpp"
#include "nrlab/ensembles.hpp"
#include "nrlab/sampler.hpp"

namespace nrlab {

struct SuiteConfig {
    std::vector<std::string> ids;
    std::size_t dim = 2;
    std::string kind = "generic";
    double scale = 1.0;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    double tol_rel = default_tol_rel;
    std::size_t sphere_samples = 5000;
    std::size_t descent_steps = 50;
    std::size_t radius_grid = 0;
    double radius_tol = 0.0;

    friend bool operator==(const SuiteConfig&, const SuiteConfig&) = default;
};

/// Aggregate over the trials of one member. Counts are final, i.e. after the
/// 10x re-check of Inconclusive results.
struct MemberRecord {
    std::string id;
    std::string formula;
    std::size_t trials = 0;
    std::size_t holds = 0;
    std::size_t violated = 0;
    std::size_t inconclusive = 0;
    std::size_t not_applicable = 0;
    std::size_t redraws = 0;          ///< draws rejected because a hypothesis failed
    std::size_t rechecked = 0;        ///< Inconclusive results re-run with 10x samples
    std::size_t recheck_violated = 0; ///< re-checks that ended Violated
    std::optional<double> min_slack;
    std::optional<double> median_slack;
    std::optional<std::size_t> min_slack_trial;  ///< make_instance(id, ensemble, trial, draw) rebuilds it
    std::optional<std::size_t> min_slack_draw;
    std::string estimate_semantics;
    std::uint64_t seed = 0;

    friend bool operator==(const MemberRecord&, const MemberRecord&) = default;
};

struct SuiteReport {
    std::string version;
    SuiteConfig config;
    std::vector<MemberRecord> records;
    std::optional<double> wall_time_s;

    std::size_t total_violated() const noexcept;
    friend bool operator==(const SuiteReport&, const SuiteReport&) = default;
};

inline constexpr std::size_t recheck_factor = 10;

/// Draws `trials` hypothesis-satisfying instances per member (redrawing up to
/// redraw_budget times per trial), evaluates, re-checks Inconclusive results
/// with 10x sphere samples and aggregates. Deterministic in the ensemble seed;
/// wall_time_s is always filled. Throws BudgetExhausted when a trial runs out
/// of redraws.
SuiteReport run_suite(const std::vector<InequalityId>& ids, const EnsembleSpec& ensemble, std::size_t trials,
                      double tol_rel = default_tol_rel, const SphereSampler& sampler = {});

/// Canonical JSON: sorted keys, two-space indent, shortest round-trip doubles,
/// trailing newline. Absent optionals become null.
std::string to_json(const SuiteReport& report);
/// Throws ParseError.
SuiteReport report_from_json(std::string_view text);

/// Header: id,trials,holds,violated,inconclusive,not_applicable,min_slack,median_slack,seed
std::string to_csv(const SuiteReport& report);

}  // namespace nrlab
