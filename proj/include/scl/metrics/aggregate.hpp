#pragma once

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "scl/error.hpp"
#include "scl/metrics/scores.hpp"
#include "scl/random.hpp"

namespace scl::metrics {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

inline json to_json(const Interval& i) { return json::array({i.lo, i.hi}); }

inline double mean(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

/// Percentile bootstrap of the mean: resamples episodes with replacement.
inline Interval bootstrap_mean(const std::vector<double>& xs, int resamples = 1000, std::uint64_t seed = 0,
                               double level = 0.95) {
    if (xs.empty()) return {};
    Rng rng(derive_seed(seed, "bootstrap"));
    std::vector<double> means;
    means.reserve(static_cast<std::size_t>(resamples));
    const auto n = static_cast<std::int64_t>(xs.size());
    for (int b = 0; b < resamples; ++b) {
        double sum = 0.0;
        for (std::int64_t i = 0; i < n; ++i) sum += xs[static_cast<std::size_t>(rng.uniform_int(0, n - 1))];
        means.push_back(sum / static_cast<double>(n));
    }
    std::sort(means.begin(), means.end());
    const double alpha = (1.0 - level) / 2.0;
    const auto at = [&](double q) {
        const auto idx = static_cast<std::size_t>(std::clamp(q * static_cast<double>(resamples), 0.0,
                                                             static_cast<double>(resamples - 1)));
        return means[idx];
    };
    return {at(alpha), at(1.0 - alpha)};
}

/// Paired bootstrap CI of mean(a - b); a and b are aligned per episode.
inline Interval paired_bootstrap_diff(const std::vector<double>& a, const std::vector<double>& b, int resamples = 1000,
                                      std::uint64_t seed = 0, double level = 0.95) {
    if (a.size() != b.size()) throw ValidationError("paired samples differ in length");
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return bootstrap_mean(d, resamples, seed, level);
}

/// Scores of one system over one suite, tagged with the suite manifest
/// hash so only like-for-like suites are compared.
struct SystemScores {
    std::string system;
    std::string manifest_hash;
    /// (run seed, scores) per episode.
    std::vector<std::pair<std::uint64_t, EpisodeScores>> episodes;
};

struct ReportRow {
    std::string system;
    std::string scope;  // "all" or a scenario letter
    std::size_t episodes = 0;
    std::size_t seeds = 0;
    double tsr = 0.0;
    double gfs = 0.0;
    double tue = 0.0;
    double mf = 0.0;
    double hallucinations = 0.0;
    Interval tsr_ci;
    Interval tue_ci;
    std::map<std::string, int> errors;
};

struct SuiteReport {
    std::string manifest_hash;
    std::vector<ReportRow> rows;

    [[nodiscard]] const ReportRow& row(const std::string& system, const std::string& scope = "all") const {
        for (const auto& r : rows) {
            if (r.system == system && r.scope == scope) return r;
        }
        throw ValidationError("no report row for " + system + "/" + scope);
    }
};

namespace detail {

inline ReportRow summarize(const std::string& system, const std::string& scope,
                           const std::vector<std::pair<std::uint64_t, EpisodeScores>>& eps, std::uint64_t seed) {
    ReportRow row;
    row.system = system;
    row.scope = scope;
    row.episodes = eps.size();
    std::set<std::uint64_t> seeds;
    std::vector<double> success, gfs, tue, mf;
    double unsupported = 0.0;
    double calls = 0.0;
    for (const auto& [s, e] : eps) {
        seeds.insert(s);
        success.push_back(e.success ? 1.0 : 0.0);
        gfs.push_back(e.gfs);
        tue.push_back(e.redundant_calls);
        mf.push_back(e.memory_faithful ? 1.0 : 0.0);
        unsupported += e.unsupported_assertions;
        calls += e.tool_calls;
        if (!e.error_label.empty()) ++row.errors[e.error_label];
    }
    row.seeds = seeds.size();
    row.tsr = 100.0 * mean(success);
    row.gfs = mean(gfs);
    row.tue = mean(tue);
    row.mf = mean(mf);
    row.hallucinations = calls > 0 ? 100.0 * unsupported / calls : 0.0;
    const auto ci = bootstrap_mean(success, 1000, seed);
    row.tsr_ci = {100.0 * ci.lo, 100.0 * ci.hi};
    row.tue_ci = bootstrap_mean(tue, 1000, seed);
    return row;
}

}  // namespace detail

/// One row per system over all scenarios (TSR, GFS, TUE, MF as means over
/// scenarios; hallucinations as the mean of per-scenario rates), followed
/// by per-scenario rows. Refuses systems scored on different suites.
inline SuiteReport aggregate(const std::vector<SystemScores>& systems, std::uint64_t seed = 0) {
    if (systems.empty()) throw ValidationError("nothing to aggregate");
    SuiteReport report;
    report.manifest_hash = systems.front().manifest_hash;
    for (const auto& s : systems) {
        if (s.manifest_hash != report.manifest_hash) {
            throw ValidationError("system '" + s.system + "' was run on a different suite manifest");
        }
        if (s.episodes.empty()) throw ValidationError("system '" + s.system + "' has no scored episodes");
    }
    for (const auto& s : systems) {
        std::map<char, std::vector<std::pair<std::uint64_t, EpisodeScores>>> by_scenario;
        for (const auto& e : s.episodes) by_scenario[e.second.scenario].push_back(e);
        std::vector<ReportRow> parts;
        for (const auto& [sc, eps] : by_scenario) parts.push_back(detail::summarize(s.system, std::string(1, sc), eps, seed));
        auto all = detail::summarize(s.system, "all", s.episodes, seed);
        if (parts.size() > 1) {
            auto macro = [&](double ReportRow::*field) {
                double sum = 0.0;
                for (const auto& p : parts) sum += p.*field;
                return sum / static_cast<double>(parts.size());
            };
            all.tsr = macro(&ReportRow::tsr);
            all.gfs = macro(&ReportRow::gfs);
            all.tue = macro(&ReportRow::tue);
            all.mf = macro(&ReportRow::mf);
            all.hallucinations = macro(&ReportRow::hallucinations);
        }
        report.rows.push_back(all);
        if (parts.size() > 1) report.rows.insert(report.rows.end(), parts.begin(), parts.end());
    }
    return report;
}

inline json to_json(const ReportRow& r) {
    return json{{"system", r.system},
                {"scope", r.scope},
                {"episodes", r.episodes},
                {"seeds", r.seeds},
                {"tsr", r.tsr},
                {"gfs", r.gfs},
                {"tue", r.tue},
                {"mf", r.mf},
                {"hallucinations_per_100_calls", r.hallucinations},
                {"tsr_ci95", to_json(r.tsr_ci)},
                {"tue_ci95", to_json(r.tue_ci)},
                {"errors", r.errors}};
}

inline json to_json(const SuiteReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows) rows.push_back(to_json(row));
    return json{{"manifest_hash", r.manifest_hash}, {"rows", rows}};
}

/// Aligned text table: System | TSR | GFS | TUE | MF | Hallucinations.
inline std::string render_table(const SuiteReport& r) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-16s %-5s %6s %9s %16s %6s %7s %6s %15s\n", "System", "Scope", "N", "TSR",
                  "TSR 95% CI", "GFS", "TUE", "MF", "Halluc./100");
    out += line;
    for (const auto& row : r.rows) {
        char ci[64];
        std::snprintf(ci, sizeof ci, "[%.1f, %.1f]", row.tsr_ci.lo, row.tsr_ci.hi);
        std::snprintf(line, sizeof line, "%-16s %-5s %6zu %8.1f%% %16s %6.2f %7.2f %6.2f %15.1f\n", row.system.c_str(),
                      row.scope.c_str(), row.episodes, row.tsr, ci, row.gfs, row.tue, row.mf, row.hallucinations);
        out += line;
    }
    return out;
}

}  // namespace scl::metrics
