// Command-line entry point: generate suites, run systems and ablations,
// verify and replay traces, render reports.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "scl/scl.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kVerifyFailed = 2;

struct SuiteFlags {
    std::string scenario = "all";
    int templates = scl::scenarios::kTemplatesPerScenario;
    int seeds = scl::scenarios::kSeedsPerTemplate;
    int budget = 20;
    double noise_bound = 1.0;
    int cities = 3;
};

void add_suite_flags(CLI::App* cmd, SuiteFlags& f) {
    cmd->add_option("--scenario", f.scenario, "A, B, C or all")->check(CLI::IsMember({"A", "B", "C", "all"}));
    cmd->add_option("--templates", f.templates, "templates per scenario");
    cmd->add_option("--seeds", f.seeds, "seeds per template");
    cmd->add_option("--budget", f.budget, "cycle budget per episode");
    cmd->add_option("--noise-bound", f.noise_bound, "weather noise bound in F");
    cmd->add_option("--cities", f.cities, "Scenario A city count")->check(CLI::IsMember({3, 5}));
}

std::vector<scl::scenarios::Scenario> scenarios_of(const std::string& s) {
    using scl::scenarios::Scenario;
    if (s == "all") return {Scenario::A, Scenario::B, Scenario::C};
    return {scl::scenarios::scenario_from_char(s.at(0))};
}

std::vector<std::string> split_systems(const std::vector<std::string>& raw) {
    std::vector<std::string> out;
    for (const auto& item : raw) {
        std::stringstream ss(item);
        std::string part;
        while (std::getline(ss, part, ',')) {
            if (part == "all") {
                for (const char* s : {"scl", "no-mem", "no-control", "none"}) out.emplace_back(s);
            } else if (!part.empty()) {
                out.push_back(part);
            }
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structured Cognitive Loop runtime and evaluation harness"};
    app.require_subcommand(1);

    SuiteFlags suite_flags;
    std::string out_dir;
    std::uint64_t seed = 0;

    auto* gen = app.add_subcommand("generate", "write the episode suite as canonical JSON lines");
    add_suite_flags(gen, suite_flags);
    gen->add_option("--out", out_dir, "output directory")->required();

    auto* run = app.add_subcommand("run", "run systems over a generated suite and write traces and a report");
    add_suite_flags(run, suite_flags);
    std::vector<std::string> systems{"scl"};
    std::string cognition = "oracle";
    scl::cognition::FaultModel faults = scl::cognition::FaultModel::defaults();
    int runs = 3;
    int jobs = 1;
    double p_transient = 0.0;
    bool all_snapshots = false;
    run->add_option("--system", systems, "scl, no-mem, no-control, none (comma list or all)");
    run->add_option("--cognition", cognition, "oracle, faulty or adapter")
        ->check(CLI::IsMember({"oracle", "faulty", "adapter"}));
    run->add_option("--fault-redundant", faults.p_redundant)->check(CLI::Range(0.0, 1.0));
    run->add_option("--fault-forget", faults.p_forget)->check(CLI::Range(0.0, 1.0));
    run->add_option("--fault-premature", faults.p_premature)->check(CLI::Range(0.0, 1.0));
    run->add_option("--fault-unsupported", faults.p_unsupported)->check(CLI::Range(0.0, 1.0));
    run->add_option("--transient", p_transient, "per-attempt transient tool failure probability")
        ->check(CLI::Range(0.0, 0.99));
    run->add_option("--runs", runs, "independent runs of the suite");
    run->add_option("--jobs", jobs, "parallel episode workers");
    run->add_flag("--all-snapshots", all_snapshots, "write a snapshot file for every cycle");
    run->add_option("--out", out_dir, "output directory")->required();
    run->add_option("--seed", seed, "global seed");

    std::string trace_path;
    auto* verify = app.add_subcommand("verify", "check a trace's hash chain");
    verify->add_option("trace", trace_path)->required();
    auto* replay = app.add_subcommand("replay", "rebuild the final snapshot from a trace");
    replay->add_option("trace", trace_path)->required();
    std::string report_dir;
    auto* report = app.add_subcommand("report", "render the report of a run directory");
    report->add_option("dir", report_dir)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) {
            scl::scenarios::GeneratorOptions opts{suite_flags.cities, suite_flags.noise_bound, suite_flags.budget};
            if (suite_flags.templates < 1 || suite_flags.templates > scl::scenarios::kTemplatesPerScenario ||
                suite_flags.seeds < 1) {
                std::cerr << "templates must be 1..12 and seeds at least 1\n";
                return kUsage;
            }
            const auto specs = scl::scenarios::generate_suite(scenarios_of(suite_flags.scenario), suite_flags.templates,
                                                              suite_flags.seeds, opts);
            std::string lines;
            for (const auto& s : specs) lines += scl::canonical_dump(scl::scenarios::to_json(s)) + "\n";
            scl::suite::write_file(std::filesystem::path(out_dir) / "episodes.jsonl", lines);
            scl::suite::write_file(std::filesystem::path(out_dir) / "suite.json",
                                   scl::canonical_dump(scl::suite::episode_listing(specs)) + "\n");
            std::cout << specs.size() << " episodes written to " << out_dir << "\n";
            return kOk;
        }
        if (*run) {
            scl::suite::RunManifest m;
            m.scenarios = scenarios_of(suite_flags.scenario);
            m.templates = suite_flags.templates;
            m.seeds = suite_flags.seeds;
            m.runs = runs;
            m.systems = split_systems(systems);
            m.policy = scl::loop::policy_from_string(cognition);
            m.faults = faults;
            m.budget = suite_flags.budget;
            m.noise_bound = suite_flags.noise_bound;
            m.cities = suite_flags.cities;
            m.p_transient = p_transient;
            m.seed = seed;
            m.out_dir = out_dir;
            m.all_snapshots = all_snapshots;
            try {
                m.validate();
            } catch (const scl::ConfigError& e) {
                std::cerr << "invalid manifest: " << e.what() << "\n";
                return kUsage;
            }
            const auto result = scl::suite::run_suite(m, jobs, &std::cerr);
            std::cout << scl::metrics::render_table(result.report);
            std::cerr << result.executed << " episodes executed, " << result.resumed << " reused\n";
            return kOk;
        }
        if (*verify) {
            try {
                const auto events = scl::loop::verify_trace(scl::loop::read_file(trace_path));
                std::cout << "ok: " << events.size() << " events, head " << events.back().hash << "\n";
                return kOk;
            } catch (const scl::TamperError& e) {
                std::cerr << "verification failed at event " << e.event_index() << ": " << e.what() << "\n";
                return kVerifyFailed;
            }
        }
        if (*replay) {
            try {
                const auto r = scl::loop::replay(scl::loop::read_file(trace_path));
                std::cout << "replayed " << r.snapshot.records.size() << " records, content hash "
                          << r.snapshot.content_hash << "\n";
                if (!r.matches()) {
                    std::cerr << "replayed hash differs from recorded " << r.recorded_hash << "\n";
                    return kVerifyFailed;
                }
                std::cout << "matches recorded final snapshot\n";
                return kOk;
            } catch (const scl::TamperError& e) {
                std::cerr << "verification failed at event " << e.event_index() << ": " << e.what() << "\n";
                return kVerifyFailed;
            }
        }
        if (*report) {
            std::cout << scl::metrics::render_table(scl::suite::report_from_dir(report_dir));
            return kOk;
        }
    } catch (const scl::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kUsage;
    } catch (const scl::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
