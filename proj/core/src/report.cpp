#include "nrlab/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nrlab/error.hpp"
#include "nrlab/numrad.hpp"
#include "nrlab/version.hpp"

namespace nrlab {

namespace {

using json = nlohmann::json;

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void tally(MemberRecord& rec, Status s) {
    switch (s) {
        case Status::Holds: ++rec.holds; break;
        case Status::Violated: ++rec.violated; break;
        case Status::Inconclusive: ++rec.inconclusive; break;
        case Status::NotApplicable: ++rec.not_applicable; break;
    }
}

MemberRecord run_member(InequalityId id, const EnsembleSpec& ensemble, std::size_t trials, double tol_rel,
                        const SphereSampler& sampler) {
    MemberRecord rec;
    rec.id = std::string(to_string(id));
    rec.formula = std::string(formula(id));
    rec.trials = trials;
    rec.seed = ensemble.seed;
    std::vector<double> slacks;
    slacks.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        std::optional<CheckResult> result;
        std::size_t draw = 0;
        std::string last_reason;
        for (; draw < redraw_budget; ++draw) {
            CheckInstance inst;
            try {
                inst = make_instance(id, ensemble, t, draw, sampler);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::BudgetExhausted) throw;
                last_reason = e.what();
                ++rec.redraws;
                continue;
            }
            CheckResult r = evaluate(id, inst, tol_rel);
            if (r.status == Status::NotApplicable) {
                last_reason = r.reason;
                ++rec.redraws;
                continue;
            }
            if (r.status == Status::Inconclusive) {
                ++rec.rechecked;
                inst.sampler = inst.sampler.scaled(recheck_factor);
                r = evaluate(id, inst, tol_rel);
                if (r.status == Status::Violated) ++rec.recheck_violated;
            }
            result = std::move(r);
            break;
        }
        if (!result) {
            throw Error(ErrorKind::BudgetExhausted, rec.id + ": trial " + std::to_string(t) + " found no instance within " +
                                                        std::to_string(redraw_budget) + " draws (" + last_reason + ")");
        }
        tally(rec, result->status);
        if (rec.estimate_semantics.empty()) rec.estimate_semantics = result->estimate_semantics;
        slacks.push_back(result->slack);
        if (!rec.min_slack || result->slack < *rec.min_slack) {
            rec.min_slack = result->slack;
            rec.min_slack_trial = t;
            rec.min_slack_draw = draw;
        }
    }
    if (!slacks.empty()) rec.median_slack = median(std::move(slacks));
    return rec;
}

template <typename T>
json opt(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> get_opt(const json& j, const char* key) {
    const json& v = j.at(key);
    if (v.is_null()) return std::nullopt;
    return v.get<T>();
}

std::string csv_number(const std::optional<double>& v) {
    if (!v) return "";
    return json(*v).dump();
}

}  // namespace

std::size_t SuiteReport::total_violated() const noexcept {
    std::size_t n = 0;
    for (const auto& r : records) n += r.violated;
    return n;
}

SuiteReport run_suite(const std::vector<InequalityId>& ids, const EnsembleSpec& ensemble, std::size_t trials,
                      double tol_rel, const SphereSampler& sampler) {
    ensemble.validate();
    if (!(tol_rel >= 0.0)) throw Error(ErrorKind::UnsupportedParameter, "tolerance must be non-negative");
    const auto start = std::chrono::steady_clock::now();

    SuiteReport report;
    report.version = version;
    auto& cfg = report.config;
    for (InequalityId id : ids) cfg.ids.emplace_back(to_string(id));
    cfg.dim = ensemble.dim;
    cfg.kind = kind_name(ensemble.kind);
    cfg.scale = ensemble.scale;
    cfg.seed = ensemble.seed;
    cfg.trials = trials;
    cfg.tol_rel = tol_rel;
    cfg.sphere_samples = sampler.samples;
    cfg.descent_steps = sampler.descent_steps;
    cfg.radius_grid = default_radius_grid;
    cfg.radius_tol = default_radius_tol;

    for (InequalityId id : ids) report.records.push_back(run_member(id, ensemble, trials, tol_rel, sampler));

    report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string to_json(const SuiteReport& report) {
    json j;
    j["version"] = report.version;
    const auto& c = report.config;
    j["config"] = {{"ids", c.ids},
                   {"dim", c.dim},
                   {"kind", c.kind},
                   {"scale", c.scale},
                   {"seed", c.seed},
                   {"trials", c.trials},
                   {"tol_rel", c.tol_rel},
                   {"sphere_samples", c.sphere_samples},
                   {"descent_steps", c.descent_steps},
                   {"radius_grid", c.radius_grid},
                   {"radius_tol", c.radius_tol}};
    json recs = json::array();
    for (const auto& r : report.records) {
        recs.push_back({{"id", r.id},
                        {"formula", r.formula},
                        {"trials", r.trials},
                        {"holds", r.holds},
                        {"violated", r.violated},
                        {"inconclusive", r.inconclusive},
                        {"not_applicable", r.not_applicable},
                        {"redraws", r.redraws},
                        {"rechecked", r.rechecked},
                        {"recheck_violated", r.recheck_violated},
                        {"min_slack", opt(r.min_slack)},
                        {"median_slack", opt(r.median_slack)},
                        {"min_slack_trial", opt(r.min_slack_trial)},
                        {"min_slack_draw", opt(r.min_slack_draw)},
                        {"estimate_semantics", r.estimate_semantics},
                        {"seed", r.seed}});
    }
    j["records"] = std::move(recs);
    if (report.wall_time_s) j["wall_time_s"] = *report.wall_time_s;
    return j.dump(2) + "\n";
}

SuiteReport report_from_json(std::string_view text) {
    try {
        const json j = json::parse(text);
        SuiteReport report;
        report.version = j.at("version").get<std::string>();
        const json& c = j.at("config");
        auto& cfg = report.config;
        cfg.ids = c.at("ids").get<std::vector<std::string>>();
        cfg.dim = c.at("dim").get<std::size_t>();
        cfg.kind = c.at("kind").get<std::string>();
        cfg.scale = c.at("scale").get<double>();
        cfg.seed = c.at("seed").get<std::uint64_t>();
        cfg.trials = c.at("trials").get<std::size_t>();
        cfg.tol_rel = c.at("tol_rel").get<double>();
        cfg.sphere_samples = c.at("sphere_samples").get<std::size_t>();
        cfg.descent_steps = c.at("descent_steps").get<std::size_t>();
        cfg.radius_grid = c.at("radius_grid").get<std::size_t>();
        cfg.radius_tol = c.at("radius_tol").get<double>();
        for (const json& r : j.at("records")) {
            MemberRecord rec;
            rec.id = r.at("id").get<std::string>();
            rec.formula = r.at("formula").get<std::string>();
            rec.trials = r.at("trials").get<std::size_t>();
            rec.holds = r.at("holds").get<std::size_t>();
            rec.violated = r.at("violated").get<std::size_t>();
            rec.inconclusive = r.at("inconclusive").get<std::size_t>();
            rec.not_applicable = r.at("not_applicable").get<std::size_t>();
            rec.redraws = r.at("redraws").get<std::size_t>();
            rec.rechecked = r.at("rechecked").get<std::size_t>();
            rec.recheck_violated = r.at("recheck_violated").get<std::size_t>();
            rec.min_slack = get_opt<double>(r, "min_slack");
            rec.median_slack = get_opt<double>(r, "median_slack");
            rec.min_slack_trial = get_opt<std::size_t>(r, "min_slack_trial");
            rec.min_slack_draw = get_opt<std::size_t>(r, "min_slack_draw");
            rec.estimate_semantics = r.at("estimate_semantics").get<std::string>();
            rec.seed = r.at("seed").get<std::uint64_t>();
            report.records.push_back(std::move(rec));
        }
        if (j.contains("wall_time_s")) report.wall_time_s = j.at("wall_time_s").get<double>();
        return report;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("report: ") + e.what());
    }
}

std::string to_csv(const SuiteReport& report) {
    std::ostringstream out;
    out << "id,trials,holds,violated,inconclusive,not_applicable,min_slack,median_slack,seed\n";
    for (const auto& r : report.records) {
        out << r.id << ',' << r.trials << ',' << r.holds << ',' << r.violated << ',' << r.inconclusive << ','
            << r.not_applicable << ',' << csv_number(r.min_slack) << ',' << csv_number(r.median_slack) << ',' << r.seed
            << '\n';
    }
    return out.str();
}

}  // namespace nrlab
