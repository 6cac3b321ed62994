// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nrlab/catalog.hpp"
#include "nrlab/ensembles.hpp"
#include "nrlab/linalg.hpp"
#include "nrlab/means.hpp"
#include "nrlab/numrad.hpp"
#include "nrlab/report.hpp"
#include "nrlab/rng.hpp"
#include "nrlab_cli/commands.hpp"

using namespace nrlab;

namespace {

// Pinned tolerances.
constexpr double example_runtime_s = 1.0;
constexpr std::size_t suite_trials = 1000;
constexpr double suite_runtime_s = 120.0;
constexpr double sweep_vs_sphere_tol = 1e-6;
constexpr double normal_tol = 1e-8;
constexpr double square_zero_tol = 1e-8;
constexpr double eigen_tol = 1e-10;
constexpr double riccati_tol = 1e-8;
constexpr std::size_t scalar_draws = 10000;
constexpr double scalar_slack_tol = -1e-12;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void verdict(const char* id, bool pass, const std::string& detail) {
    std::cout << id << ' ' << (pass ? "PASS" : "FAIL") << "  " << detail << std::endl;
    if (!pass) ++failures;
}

std::string fmt(double v, int digits = 6) {
    std::ostringstream out;
    out << std::setprecision(digits) << v;
    return out.str();
}

std::string fixed(double v, int decimals) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(decimals) << v;
    return out.str();
}

void worked_example(const char* id, std::size_t index) {
    const auto start = Clock::now();
    const auto ex = cli::worked_examples().at(index);
    const double elapsed = seconds_since(start);
    bool rounded = true;
    bool truncated = true;
    std::string values;
    for (const auto& v : ex.values) {
        rounded = rounded && v.rounds_to_reference();
        truncated = truncated && v.truncates_to_reference();
        values += " " + fixed(v.computed, v.decimals) + "/" + fixed(v.reference, v.decimals);
    }
    const bool pass = rounded && ex.chain_holds() && elapsed < example_runtime_s;
    verdict(id, pass,
            ex.name + " rounded/reference" + values + ", chain " + (ex.chain_holds() ? "holds" : "fails") + ", " +
                fmt(elapsed, 3) + " s");
    std::cout << "    info: truncation to the displayed precision " << (truncated ? "matches" : "differs")
              << " for all three values" << std::endl;
}

void soundness_suite() {
    const auto start = Clock::now();
    std::vector<InequalityId> ids(all_inequalities().begin(), all_inequalities().end());
    std::size_t violated = 0;
    std::size_t inconclusive = 0;
    std::size_t misplaced = 0;
    std::size_t recheck_violated = 0;
    std::size_t rechecked = 0;
    std::size_t checked = 0;
    std::string errors;
    for (std::size_t dim : {2u, 3u, 5u, 8u}) {
        EnsembleSpec spec;
        spec.dim = dim;
        spec.seed = 20240 + dim;
        try {
            const SuiteReport rep = run_suite(ids, spec, suite_trials);
            for (const auto& r : rep.records) {
                checked += r.holds + r.violated + r.inconclusive;
                violated += r.violated;
                inconclusive += r.inconclusive;
                rechecked += r.rechecked;
                recheck_violated += r.recheck_violated;
                if (r.inconclusive > 0 && !uses_sampled_infimum(parse_inequality(r.id))) ++misplaced;
                if (r.violated > 0) {
                    std::cout << "    dim " << dim << ' ' << r.id << ": " << r.violated << " violated, min slack "
                              << fmt(r.min_slack.value_or(0.0)) << std::endl;
                }
            }
        } catch (const std::exception& e) {
            errors += std::string(" dim ") + std::to_string(dim) + ": " + e.what();
        }
    }
    const double elapsed = seconds_since(start);
    const bool pass = errors.empty() && violated == 0 && inconclusive == 0 && misplaced == 0 &&
                      recheck_violated == 0 && elapsed < suite_runtime_s;
    verdict("AC3", pass,
            std::to_string(ids.size()) + " members x 4 dims x " + std::to_string(suite_trials) + " trials: " +
                std::to_string(checked) + " checked, " + std::to_string(violated) + " violated, " +
                std::to_string(inconclusive) + " inconclusive after " + std::to_string(rechecked) +
                " rechecks, " + fmt(elapsed, 4) + " s" + errors);
}

void radius_oracles() {
    double sphere_gap = 0.0;
    for (std::uint64_t k = 0; k < 100; ++k) {
        CounterRng rng(401, k);
        const std::size_t n = 1 + k % 4;
        const ComplexMatrix a = random_gaussian(n, rng);
        const double w = numerical_radius(a).value;
        const SphereEstimate s = sphere_sup(
            [&](std::span<const Complex> x) { return std::abs(quadratic_form(a, x)); }, n, {k, 5000, 50});
        sphere_gap = std::max(sphere_gap, std::abs(w - s.value));
    }

    double normal_gap = 0.0;
    for (std::uint64_t k = 0; k < 100; ++k) {
        CounterRng rng(402, k);
        const std::size_t n = 1 + k % 4;
        const ComplexMatrix u = random_unitary(n, rng);
        ComplexMatrix d(n);
        double spectral_radius = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            d(i, i) = rng.complex_gaussian();
            spectral_radius = std::max(spectral_radius, std::abs(d(i, i)));
        }
        const ComplexMatrix a = u * d * adjoint(u);
        normal_gap = std::max(normal_gap, std::abs(numerical_radius(a).value - spectral_radius));
    }

    double square_zero_gap = 0.0;
    for (std::uint64_t k = 0; k < 100; ++k) {
        const EnsembleSample s = sample({2 + k % 3, SquareZero{}, 1.0, 403}, k);
        square_zero_gap = std::max(square_zero_gap, std::abs(numerical_radius(s.a).value - operator_norm(s.a) / 2.0));
    }

    const bool pass =
        sphere_gap <= sweep_vs_sphere_tol && normal_gap <= normal_tol && square_zero_gap <= square_zero_tol;
    verdict("AC4", pass,
            "sweep vs sphere " + fmt(sphere_gap, 3) + ", normal " + fmt(normal_gap, 3) + ", square-zero " +
                fmt(square_zero_gap, 3));
}

void kernel_quality() {
    double residual = 0.0;
    double unitarity = 0.0;
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 8u, 12u, 16u, 24u, 32u, 48u, 64u}) {
        for (std::uint64_t k = 0; k < 3; ++k) {
            CounterRng rng(501 + n, k);
            const ComplexMatrix h = random_hermitian(n, rng);
            const HermitianEigen eig = hermitian_eigen(h);
            for (std::size_t j = 0; j < n; ++j) {
                const CVector v = eig.vector(j);
                const CVector hv = h * v;
                for (std::size_t i = 0; i < n; ++i)
                    residual = std::max(residual, std::abs(hv[i] - eig.eigenvalues[j] * v[i]));
            }
            const ComplexMatrix vv = gram(eig.vectors);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    unitarity = std::max(unitarity, std::abs(vv(i, j) - (i == j ? 1.0 : 0.0)));
        }
    }

    double riccati = 0.0;
    for (std::uint64_t k = 0; k < 100; ++k) {
        CounterRng rng(502, k);
        const std::size_t n = 2 + k % 4;
        const ComplexMatrix a = random_positive_spectrum(n, rng, 0.1, 10.0);
        const ComplexMatrix b = random_positive_spectrum(n, rng, 0.1, 10.0);
        const ComplexMatrix g = weighted_geometric({a, b, 0.5});
        const ComplexMatrix r = g * psd_power(a, -1.0) * g - b;
        riccati = std::max(riccati, max_abs_entry(r));
    }

    const bool pass = residual <= eigen_tol && unitarity <= eigen_tol && riccati <= riccati_tol;
    verdict("AC5", pass,
            "eigen residual " + fmt(residual, 3) + ", unitarity " + fmt(unitarity, 3) + ", Riccati " + fmt(riccati, 3));
}

void scalar_lemmas() {
    double amgm_slack = INFINITY;
    for (std::uint64_t k = 0; k < scalar_draws; ++k) {
        CounterRng rng(601, k);
        const double a = rng.uniform(0.1, 10.0);
        const double b = rng.uniform(0.1, 10.0);
        const double lo = std::min(a, b);
        const double hi = std::max(a, b);
        if (!(lo < hi)) continue;
        double m = rng.uniform(lo, hi);
        double M = rng.uniform(lo, hi);
        if (m > M) std::swap(m, M);
        if (!(m < M)) continue;
        const double slack = (a + b) / 2.0 - refined_amgm_factor(m, M) * std::sqrt(a * b);
        amgm_slack = std::min(amgm_slack, slack);
    }

    double gamma_slack = INFINITY;
    std::size_t gamma_failures = 0;
    for (std::uint64_t k = 0; k < scalar_draws; ++k) {
        CounterRng rng(602, k);
        double m = rng.uniform(0.1, 10.0);
        double M = rng.uniform(0.1, 10.0);
        if (m > M) std::swap(m, M);
        const double a = rng.uniform(m, M);
        const double b = rng.uniform(m, M);
        const double slack = (a + b) / 2.0 - gamma_factor(m, M) * std::sqrt(a * b);
        gamma_slack = std::min(gamma_slack, slack);
        if (slack < scalar_slack_tol) ++gamma_failures;
    }

    const bool pass = amgm_slack >= scalar_slack_tol && gamma_slack >= scalar_slack_tol;
    verdict("AC6", pass,
            "refined AM-GM min slack " + fmt(amgm_slack, 3) + ", gamma bound min slack " + fmt(gamma_slack, 3) + " (" +
                std::to_string(gamma_failures) + " of " + std::to_string(scalar_draws) + " draws below tolerance)");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void determinism() {
    const char* tmp = std::getenv("TMPDIR");
    const std::string dir = tmp ? tmp : "/tmp";
    const std::string flags = " certify --ineq all --dim 3 --trials 20 --seed 31 --format json --report ";
    std::vector<std::string> reports;
    bool ran = true;
    for (int k = 0; k < 2; ++k) {
        const std::string path = dir + "/nrlab_acceptance_" + std::to_string(k) + ".json";
        const std::string cmd = std::string(NRLAB_CLI_PATH) + flags + path + " > /dev/null";
        ran = ran && std::system(cmd.c_str()) == 0;
        reports.push_back(slurp(path));
        std::remove(path.c_str());
    }
    const bool pass = ran && !reports[0].empty() && reports[0] == reports[1];
    verdict("AC7", pass,
            "two certify runs: " + std::to_string(reports[0].size()) + " and " + std::to_string(reports[1].size()) +
                " bytes, " + (reports[0] == reports[1] ? "identical" : "different"));
}

}  // namespace

int main() {
    worked_example("AC1", 0);
    worked_example("AC2", 1);
    soundness_suite();
    radius_oracles();
    kernel_quality();
    scalar_lemmas();
    determinism();
    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
    return failures == 0 ? 0 : 1;
}
