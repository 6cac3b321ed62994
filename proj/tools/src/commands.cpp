#include "nrlab_cli/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nrlab/error.hpp"
#include "nrlab/linalg.hpp"
#include "nrlab/matrix_io.hpp"
#include "nrlab/numrad.hpp"
#include "nrlab/report.hpp"
#include "nrlab/rng.hpp"
#include "nrlab/version.hpp"

namespace nrlab::cli {

namespace {

using json = nlohmann::json;

constexpr std::uint64_t tag_search = 0x5345415243ULL;

std::vector<InequalityId> resolve_ids(const std::vector<std::string>& names) {
    std::vector<InequalityId> ids;
    for (const auto& entry : names) {
        std::stringstream ss(entry);
        std::string name;
        while (std::getline(ss, name, ',')) {
            if (name.empty()) continue;
            if (name == "all") {
                ids.assign(all_inequalities().begin(), all_inequalities().end());
                continue;
            }
            ids.push_back(parse_inequality(name));
        }
    }
    if (ids.empty()) throw Error(ErrorKind::UnsupportedParameter, "no inequality selected");
    return ids;
}

std::string fixed(double v, int digits) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

std::string sci(double v) {
    std::ostringstream s;
    s << std::setprecision(12) << v;
    return s.str();
}

bool write_file(const std::string& path, const std::string& text, std::ostream& err) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        err << "error: cannot write '" << path << "'\n";
        return false;
    }
    f << text;
    if (!f) {
        err << "error: write to '" << path << "' failed\n";
        return false;
    }
    return true;
}

double normalized_slack(const CheckResult& r) { return r.slack / (1.0 + std::abs(r.lhs) + std::abs(r.rhs)); }

ComplexMatrix perturb_matrix(const ComplexMatrix& m, double eps, CounterRng& rng) {
    if (m.empty()) return m;
    const std::size_t n = m.dim();
    ComplexMatrix e = random_gaussian(n, rng);
    if (is_hermitian(m)) {
        // Congruence keeps Hermitian and positive operators in their class.
        ComplexMatrix c = ComplexMatrix::identity(n);
        c += Complex{eps, 0.0} * e;
        return congruence(c, m);
    }
    const double size = frobenius_norm(m) / std::sqrt(static_cast<double>(n));
    return m + Complex{eps * size, 0.0} * e;
}

CheckInstance perturb(const CheckInstance& base, double eps, CounterRng& rng) {
    CheckInstance out = base;
    out.a = perturb_matrix(base.a, eps, rng);
    out.b = perturb_matrix(base.b, eps, rng);
    out.x = perturb_matrix(base.x, eps, rng);
    for (auto& v : out.vectors) {
        const double len = norm(v);
        const bool unit = std::abs(len - 1.0) <= 1e-12;
        for (auto& c : v) c += eps * len * rng.complex_gaussian();
        if (unit && norm(v) > 0.0) v = normalized(v);
    }
    for (auto& s : out.scalars) s *= std::exp(eps * rng.gaussian());
    return out;
}

json matrix_json(const ComplexMatrix& m) { return json::parse(format_matrix(m)); }

json vector_json(const CVector& v) {
    json row = json::array();
    for (const Complex& c : v) row.push_back({c.real(), c.imag()});
    return row;
}

void print_radius(const RadiusResult& r, double opnorm, std::ostream& out) {
    out << "w(A)        = " << sci(r.value) << '\n';
    out << "||A||       = " << sci(opnorm) << '\n';
    out << "theta*      = " << sci(r.theta_star) << '\n';
    out << "refinement  = " << sci(r.refinement_width) << '\n';
    out << "witness     = [";
    for (std::size_t k = 0; k < r.witness.size(); ++k) {
        if (k) out << ", ";
        out << '(' << sci(r.witness[k].real()) << ", " << sci(r.witness[k].imag()) << ')';
    }
    out << "]\n";
}

}  // namespace

// ------------------------------------------------------------- examples

bool ExampleValue::rounds_to_reference() const {
    const double scale = std::pow(10.0, decimals);
    return std::llround(computed * scale) == std::llround(reference * scale);
}

bool ExampleValue::truncates_to_reference() const {
    const double scale = std::pow(10.0, decimals);
    return static_cast<long long>(std::floor(computed * scale)) == std::llround(reference * scale);
}

bool WorkedExample::chain_holds() const {
    if (expect_new_above) return lhs < kittaneh_bound && kittaneh_bound < new_bound;
    return lhs < new_bound && new_bound < kittaneh_bound;
}

std::vector<WorkedExample> worked_examples() {
    struct Data {
        const char* name;
        ComplexMatrix a;
        ComplexMatrix b;
        std::array<double, 3> reference;
        std::array<int, 3> decimals;
        bool new_above;
    };
    const std::vector<Data> data{
        {"example-1", ComplexMatrix{{1, 0}, {-3, 1}}, ComplexMatrix{{-1, 2}, {0, 1}}, {14.52, 29.58, 25.28}, {2, 2, 2},
         true},
        {"example-2", ComplexMatrix{{2, 0}, {3, 1}}, ComplexMatrix{{0, 1}, {0, 1}}, {17.94, 25.4, 29.44}, {2, 1, 2},
         false},
    };
    std::vector<WorkedExample> out;
    for (const auto& d : data) {
        CheckInstance inst;
        inst.a = d.a;
        inst.b = d.b;
        const CheckResult nb = evaluate(InequalityId::SumNewBound, inst);
        const CheckResult kb = evaluate(InequalityId::SumSqKittaneh, inst);
        WorkedExample ex;
        ex.name = d.name;
        ex.a = d.a;
        ex.b = d.b;
        ex.lhs = nb.lhs;
        ex.new_bound = nb.rhs;
        ex.kittaneh_bound = kb.rhs;
        ex.new_status = nb.status;
        ex.kittaneh_status = kb.status;
        ex.expect_new_above = d.new_above;
        ex.values = {ExampleValue{"||A+B||^2", ex.lhs, d.reference[0], d.decimals[0]},
                     ExampleValue{"new bound", ex.new_bound, d.reference[1], d.decimals[1]},
                     ExampleValue{"Kittaneh bound", ex.kittaneh_bound, d.reference[2], d.decimals[2]}};
        out.push_back(std::move(ex));
    }
    return out;
}

int examples(std::ostream& out) {
    for (const auto& ex : worked_examples()) {
        out << ex.name << '\n';
        for (const auto& v : ex.values) {
            out << "  " << std::left << std::setw(16) << v.label << std::right << " computed " << fixed(v.computed, 6)
                << "  reference " << fixed(v.reference, v.decimals) << "  rounded " << fixed(v.computed, v.decimals)
                << (v.rounds_to_reference() ? " (match)" : " (differs)") << "  truncated "
                << (v.truncates_to_reference() ? "match" : "differs") << '\n';
        }
        out << "  order: " << (ex.new_bound > ex.kittaneh_bound ? "new bound > Kittaneh bound" : "new bound < Kittaneh bound")
            << "  (expected " << (ex.expect_new_above ? "new bound > Kittaneh bound" : "new bound < Kittaneh bound")
            << ", strict chain " << (ex.chain_holds() ? "holds" : "fails") << ")\n";
        out << "  sum-new-bound " << to_string(ex.new_status) << ", sum-sq-kittaneh " << to_string(ex.kittaneh_status)
            << '\n';
    }
    return exit_ok;
}

// -------------------------------------------------------------- certify

int certify(const CertifyOptions& opts, std::ostream& out, std::ostream& err) {
    if (opts.format != "json" && opts.format != "csv") {
        err << "error: --format must be json or csv\n";
        return exit_usage;
    }
    SuiteReport report;
    try {
        const auto ids = resolve_ids(opts.ids);
        EnsembleSpec spec;
        spec.dim = opts.dim;
        spec.kind = parse_kind(opts.kind);
        spec.scale = opts.scale;
        spec.seed = opts.seed;
        SphereSampler sampler;
        sampler.samples = opts.sphere_samples;
        report = run_suite(ids, spec, opts.trials, opts.tol, sampler);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    if (!opts.timing) report.wall_time_s.reset();
    const std::string text = opts.format == "json" ? to_json(report) : to_csv(report);
    if (opts.report_path) {
        if (!write_file(*opts.report_path, text, err)) return exit_usage;
        for (const auto& r : report.records) {
            out << std::left << std::setw(26) << r.id << std::right << " holds " << r.holds << "  violated " << r.violated
                << "  inconclusive " << r.inconclusive << "  not_applicable " << r.not_applicable << "  min_slack "
                << (r.min_slack ? sci(*r.min_slack) : std::string("-")) << '\n';
        }
    } else {
        out << text;
    }
    if (report.total_violated() > 0) {
        err << "violated: " << report.total_violated() << " trial(s)\n";
        return exit_violated;
    }
    return exit_ok;
}

// --------------------------------------------------------------- radius

int radius(const RadiusOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        const ComplexMatrix a = read_matrix_file(opts.matrix_path);
        const RadiusResult r = numerical_radius(a, opts.grid, opts.tol);
        const double n = operator_norm(a);
        print_radius(r, n, out);
        const double slack = 1e-12 * (1.0 + n);
        const bool lower = n / 2.0 <= r.value + slack;
        const bool upper = r.value <= n + slack;
        out << "||A||/2 <= w(A) <= ||A||: " << (lower && upper ? "holds" : "fails") << '\n';
        return exit_ok;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

// --------------------------------------------------------------- search

SearchOutcome search_min_slack(const SearchOptions& opts) {
    const InequalityId id = parse_inequality(opts.id);
    EnsembleSpec spec;
    spec.dim = opts.dim;
    spec.kind = parse_kind(opts.kind);
    spec.scale = opts.scale;
    spec.seed = opts.seed;
    spec.validate();

    SearchOutcome best;
    bool have_best = false;
    auto first_valid = [&](std::size_t trial) -> std::optional<std::pair<CheckInstance, CheckResult>> {
        for (std::size_t draw = 0; draw < redraw_budget; ++draw) {
            CheckInstance inst;
            try {
                inst = make_instance(id, spec, trial, draw);
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::BudgetExhausted) continue;
                throw;
            }
            CheckResult r = evaluate(id, inst);
            ++best.evaluations;
            if (r.status != Status::NotApplicable) return std::make_pair(std::move(inst), std::move(r));
        }
        return std::nullopt;
    };
    auto consider = [&](CheckInstance inst, CheckResult r) {
        const double ns = normalized_slack(r);
        if (!have_best || ns < best.normalized_slack) {
            best.instance = std::move(inst);
            best.result = std::move(r);
            best.normalized_slack = ns;
            have_best = true;
        }
    };

    const std::size_t starts = std::max<std::size_t>(opts.restarts, 1);
    for (std::size_t restart = 0; restart < starts; ++restart) {
        auto start = first_valid(restart);
        if (!start) continue;
        CheckInstance current = std::move(start->first);
        CheckResult current_res = std::move(start->second);
        if (opts.restarts > 0) {
            CounterRng rng(opts.seed, restart, tag_search);
            double eps = 0.1;
            for (std::size_t step = 0; step < opts.steps; ++step) {
                CheckInstance cand = perturb(current, eps, rng);
                CheckResult r = evaluate(id, cand);
                ++best.evaluations;
                if (r.status != Status::NotApplicable && normalized_slack(r) < normalized_slack(current_res)) {
                    current = std::move(cand);
                    current_res = std::move(r);
                } else {
                    eps *= 0.7;
                }
            }
        }
        consider(std::move(current), std::move(current_res));
    }
    if (!have_best) {
        throw Error(ErrorKind::BudgetExhausted, opts.id + ": no instance satisfied the hypotheses");
    }
    return best;
}

std::string search_document(const SearchOptions& opts, const SearchOutcome& outcome) {
    const CheckInstance& inst = outcome.instance;
    const CheckResult& r = outcome.result;
    json doc;
    doc["id"] = opts.id;
    doc["dim"] = opts.dim;
    doc["seed"] = opts.seed;
    doc["restarts"] = opts.restarts;
    doc["kind"] = opts.kind;
    doc["status"] = std::string(to_string(r.status));
    doc["lhs"] = r.lhs;
    doc["rhs"] = r.rhs;
    doc["slack"] = r.slack;
    doc["normalized_slack"] = outcome.normalized_slack;
    doc["evaluations"] = outcome.evaluations;
    json params = {{"r", inst.r}, {"v", inst.v}, {"p", inst.p}, {"q", inst.q}, {"form", inst.form}};
    params["f"] = inst.f ? json(inst.f->name()) : json(nullptr);
    params["pair"] = inst.pair ? json(inst.pair->name()) : json(nullptr);
    doc["parameters"] = std::move(params);
    doc["A"] = inst.a.empty() ? json(nullptr) : matrix_json(inst.a);
    doc["B"] = inst.b.empty() ? json(nullptr) : matrix_json(inst.b);
    doc["X"] = inst.x.empty() ? json(nullptr) : matrix_json(inst.x);
    json vecs = json::array();
    for (const auto& v : inst.vectors) vecs.push_back(vector_json(v));
    doc["vectors"] = std::move(vecs);
    doc["scalars"] = inst.scalars;
    return doc.dump(2) + "\n";
}

int search(const SearchOptions& opts, std::ostream& out, std::ostream& err) {
    SearchOutcome outcome;
    try {
        outcome = search_min_slack(opts);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    const std::string doc = search_document(opts, outcome);
    if (opts.out_path) {
        if (!write_file(*opts.out_path, doc, err)) return exit_usage;
    } else {
        out << doc;
    }
    const CheckResult& r = outcome.result;
    err << opts.id << ": min slack " << sci(r.slack) << " (normalized " << sci(outcome.normalized_slack) << "), status "
        << to_string(r.status) << ", " << outcome.evaluations << " evaluations\n";
    if (r.status == Status::Violated) {
        err << "violated: the instance breaks " << opts.id << '\n';
        return exit_violated;
    }
    return exit_ok;
}

// ------------------------------------------------------------------ run

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical-radius and operator-norm inequality lab", "nrlab"};
    app.set_version_flag("--version", std::string(nrlab::version));
    app.require_subcommand(1);

    std::uint64_t default_seed = 0;
    if (const char* env = std::getenv("NUMRAD_SEED"); env && *env) {
        try {
            std::size_t used = 0;
            default_seed = std::stoull(env, &used, 0);
            if (env[used] != '\0') throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            err << "error: NUMRAD_SEED='" << env << "' is not an unsigned integer\n";
            return exit_usage;
        }
    }

    CertifyOptions copt;
    copt.seed = default_seed;
    auto* cert = app.add_subcommand("certify", "Run the certification suite and write a report");
    cert->add_option("--ineq", copt.ids, "Comma-separated ids, or all")->delimiter(',');
    cert->add_option("--dim", copt.dim, "Matrix dimension")->check(CLI::PositiveNumber);
    cert->add_option("--trials", copt.trials, "Trials per inequality")->check(CLI::NonNegativeNumber);
    cert->add_option("--seed", copt.seed, "Ensemble seed (default: NUMRAD_SEED or 0)");
    cert->add_option("--tol", copt.tol, "Relative tolerance")->check(CLI::NonNegativeNumber);
    cert->add_option("--kind", copt.kind, "Ensemble kind for generic members");
    cert->add_option("--scale", copt.scale, "Ensemble scale")->check(CLI::PositiveNumber);
    cert->add_option("--sphere-samples", copt.sphere_samples, "Samples behind sampled infima")
        ->check(CLI::PositiveNumber);
    cert->add_option("--report", copt.report_path, "Report path (default: stdout)");
    cert->add_option("--format", copt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    cert->add_flag("--timing", copt.timing, "Include wall time in the report");

    app.add_subcommand("examples", "Reproduce the two worked sum-bound examples");

    RadiusOptions ropt;
    auto* rad = app.add_subcommand("radius", "Numerical radius of a matrix file");
    rad->add_option("--matrix", ropt.matrix_path, "Matrix exchange file")->required();
    rad->add_option("--tol", ropt.tol, "Refinement width")->check(CLI::PositiveNumber);
    rad->add_option("--grid", ropt.grid, "Angle grid size (>= 16)");

    SearchOptions sopt;
    sopt.seed = default_seed;
    auto* srch = app.add_subcommand("search", "Search for a minimal-slack instance");
    srch->add_option("--ineq", sopt.id, "Inequality id")->required();
    srch->add_option("--dim", sopt.dim, "Matrix dimension")->check(CLI::PositiveNumber);
    srch->add_option("--restarts", sopt.restarts, "Random restarts (0: seed instance only)");
    srch->add_option("--steps", sopt.steps, "Perturbation steps per restart");
    srch->add_option("--seed", sopt.seed, "Seed (default: NUMRAD_SEED or 0)");
    srch->add_option("--kind", sopt.kind, "Ensemble kind for generic members");
    srch->add_option("--scale", sopt.scale, "Ensemble scale")->check(CLI::PositiveNumber);
    srch->add_option("--out", sopt.out_path, "Output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::CallForVersion&) {
        out << nrlab::version << '\n';
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    if (cert->parsed()) return certify(copt, out, err);
    if (app.got_subcommand("examples")) return examples(out);
    if (rad->parsed()) return radius(ropt, out, err);
    if (srch->parsed()) return search(sopt, out, err);
    return exit_usage;
}

}  // namespace nrlab::cli
