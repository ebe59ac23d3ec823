// Acceptance suite. Prints one PASS/FAIL line per criterion and exits 3
// when any criterion fails.

#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "scl/scl.hpp"

using namespace scl;

namespace {

constexpr int kRuns = 3;
const std::vector<std::string> kSystems{"scl", "no-mem", "no-control", "none"};

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

struct SuiteRun {
    std::string system;
    std::vector<suite::EpisodeResult> results;  // run-major
};

SuiteRun run_system(const std::vector<scenarios::EpisodeSpec>& specs, loop::AgentConfig cfg, const std::string& system,
                    int runs = kRuns) {
    suite::RunManifest m;
    SuiteRun out{system, {}};
    for (int r = 0; r < runs; ++r) {
        auto rs = suite::evaluate_suite(specs, cfg, m.run_seed(r));
        out.results.insert(out.results.end(), rs.begin(), rs.end());
    }
    return out;
}

loop::AgentConfig faulty(const std::string& system, cognition::FaultModel f = cognition::FaultModel::defaults()) {
    auto cfg = loop::config_for_system(system);
    cfg.policy = loop::PolicyKind::faulty;
    cfg.faults = f;
    return cfg;
}

metrics::SystemScores scores_of(const SuiteRun& run) {
    metrics::SystemScores s{run.system, "acceptance", {}};
    for (const auto& r : run.results) s.episodes.emplace_back(r.run_seed, r.scores);
    return s;
}

std::vector<double> success_vector(const SuiteRun& run) {
    std::vector<double> v;
    for (const auto& r : run.results) v.push_back(r.scores.success ? 1.0 : 0.0);
    return v;
}

std::vector<double> redundant_vector(const SuiteRun& run) {
    std::vector<double> v;
    for (const auto& r : run.results) v.push_back(r.scores.redundant_calls);
    return v;
}

std::string trimmed(std::string s) {
    while (!s.empty() && (s.back() == ' ' || s.back() == ';')) s.pop_back();
    return s;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

// Redundant calls recounted straight from the raw trace lines by grouping
// act events on (tool, canonical args, epoch).
int recount_redundant(const std::string& trace_text) {
    std::map<std::string, int> groups;
    for (const auto& line : loop::split_lines(trace_text)) {
        const auto e = json::parse(line);
        if (e.at("phase") != "act") continue;
        const auto& call = e.at("payload").at("result").at("call");
        const auto key = call.at("tool").get<std::string>() + "|" + call.at("args").dump() + "|" +
                         std::to_string(e.at("payload").at("epoch").get<long long>());
        ++groups[key];
    }
    int n = 0;
    for (const auto& [key, count] : groups) n += count - 1;
    return n;
}

// Side effects that succeeded, as "tool args" strings, plus the judgments.
std::vector<std::string> outcome_signature(const suite::EpisodeResult& r) {
    std::vector<std::string> sig;
    for (const auto& c : r.outcome.executed_calls) {
        if (c.at("outcome") == "ok" && scenarios::is_side_effect_tool(c.at("tool").get<std::string>())) {
            sig.push_back(c.at("tool").get<std::string>() + " " + c.at("args").dump());
        }
    }
    const auto view = metrics::view_trace_text(r.trace_text);
    for (const auto& j : view.final_state.judgments) sig.push_back("judgment " + j.value.at("proposition").dump());
    sig.push_back(std::string("success ") + (r.scores.success ? "1" : "0"));
    return sig;
}

// Byte range of the payload object inside one canonical trace line.
std::pair<std::size_t, std::size_t> payload_span(const std::string& line) {
    const std::string open = "\"payload\":";
    const std::string close = ",\"phase\":\"";
    const auto b = line.find(open) + open.size();
    const auto e = line.rfind(close);
    return {b, e};
}

// Flips each chosen payload byte of each event and checks verification
// fails at exactly that event.
bool flips_detected(const std::string& trace_text, bool every_byte, std::string& why) {
    const auto lines = loop::split_lines(trace_text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto [b, e] = payload_span(lines[i]);
        std::vector<std::size_t> positions;
        if (every_byte) {
            for (auto p = b; p < e; ++p) positions.push_back(p);
        } else {
            positions = {b, b + (e - b) / 2, e - 1};
        }
        for (auto p : positions) {
            auto copy = lines;
            copy[i][p] = static_cast<char>(copy[i][p] ^ 0x01);
            std::string text;
            for (const auto& l : copy) text += l + "\n";
            try {
                loop::verify_trace(text);
                why = "flip at event " + std::to_string(i) + " byte " + std::to_string(p) + " verified";
                return false;
            } catch (const TamperError& err) {
                if (err.event_index() != static_cast<long long>(i)) {
                    why = "flip at event " + std::to_string(i) + " reported at " + std::to_string(err.event_index());
                    return false;
                }
            }
        }
    }
    return true;
}

std::vector<std::string> weather_calls(const loop::EpisodeRun& run) {
    std::vector<std::string> v;
    for (const auto& c : run.outcome.executed_calls) {
        if (c.at("tool") == "get_weather") v.push_back(c.at("args").at(0).get<std::string>());
    }
    return v;
}

std::vector<std::string> call_sequence(const loop::EpisodeRun& run) {
    std::vector<std::string> v;
    for (const auto& c : run.outcome.executed_calls) {
        v.push_back(std::to_string(c.at("cycle").get<int>()) + ":" + c.at("tool").get<std::string>() + c.at("args").dump());
    }
    return v;
}

// ---------------------------------------------------------------- crafted traces

struct Crafter {
    scenarios::EpisodeSpec spec;
    loop::Trace trace;
    mem::EpisodeMemory memory;

    explicit Crafter(const scenarios::EpisodeSpec& s)
        : spec(s), trace(s.id()), memory(s.id(), mem::StoreMode::full_history()) {
        memory.set_write_observer([this](const mem::MemRecord& r) {
            trace.append(r.t.cycle, loop::Phase::mem_write, json{{"record", mem::to_json(r)}});
        });
        const loop::AgentConfig cfg;
        trace.append(0, loop::Phase::init,
                     json{{"config", loop::to_json(cfg)},
                          {"store_mode", mem::to_json(cfg.store_mode())},
                          {"spec", scenarios::to_json(spec)},
                          {"spec_hash", scenarios::spec_hash(spec)},
                          {"directives", {{"version", "crafted"}, {"text", ""}}},
                          {"seed", 0}});
        write(0, mem::RecordKind::goal, mem::MemPath({"goal"}), spec.goal);
    }

    void write(std::uint32_t cycle, mem::RecordKind kind, mem::MemPath path, json value, json tags = json::object()) {
        mem::MemRecord r;
        r.path = std::move(path);
        r.kind = kind;
        r.value = std::move(value);
        r.source = "crafted";
        r.t = memory.tick(cycle);
        r.tags = std::move(tags);
        memory.write(std::move(r));
    }

    void propose(std::uint32_t cycle, const ToolCall& call, const std::string& evidence) {
        cognition::Proposal p;
        p.propose = call.tool;
        p.args = call.args;
        p.because = {"goal exists"};
        p.assertions = {{"claim", evidence}};
        trace.append(cycle, loop::Phase::propose, json{{"proposal", cognition::to_json(p)}});
    }

    void act(std::uint32_t cycle, const std::string& city, int temp) {
        action::ToolResult r;
        r.call = ToolCall{"get_weather", json::array({city})};
        r.outcome = action::ToolResult::Outcome::ok;
        r.value = json{{"city", city}, {"temp_f", temp}};
        r.attempts = 1;
        trace.append(cycle, loop::Phase::act, json{{"result", action::to_json(r)}, {"epoch", 0}});
        write(cycle, mem::RecordKind::observation, mem::MemPath({"obs", city}), r.value,
              json{{"call", to_json(r.call)}, {"epoch", 0}, {"unit", "f"}});
    }

    std::string finish(std::uint32_t cycle) {
        loop::EpisodeOutcome o;
        o.episode_id = spec.id();
        o.cycles_used = static_cast<int>(cycle);
        trace.append(cycle, loop::Phase::terminate, json{{"outcome", loop::to_json(o)}});
        return trace.str();
    }
};

scenarios::EpisodeSpec episode_a_spec() {
    scenarios::TravelRules r;
    r.checks = {{"San Francisco", 77}, {"Miami", 82}};
    r.default_city = "New York";
    return scenarios::travel_episode(r, {{"San Francisco", 74}, {"Miami", 84}, {"New York", 70}});
}

// ---------------------------------------------------------------- criteria

struct Context {
    std::vector<scenarios::EpisodeSpec> specs;
    SuiteRun oracle_scl;
    std::map<std::string, SuiteRun> faulty_runs;
};

Check criterion1(const Context& ctx) {
    Check c;
    const auto& run = ctx.oracle_scl;
    c.require(run.results.size() == 1080, "expected 1080 episodes, got " + std::to_string(run.results.size()));
    const auto report = metrics::aggregate({scores_of(run)});
    const auto& all = report.row("scl", "all");
    c.require(all.tsr == 100.0, fmt("TSR %.4f%%", all.tsr));
    c.require(all.tue == 0.0, fmt("TUE %.4f", all.tue));
    c.require(all.mf == 1.0, fmt("MF %.4f", all.mf));
    c.require(all.hallucinations == 0.0, fmt("hallucinations %.4f", all.hallucinations));
    for (const auto& r : run.results) {
        c.require(r.scores.gfs == 1.0, r.scores.episode_id + " GFS " + std::to_string(r.scores.gfs));
        c.require(r.scores.success, r.scores.episode_id + " failed");
    }
    if (c.ok) c.detail = "1080 episodes: TSR 100%, TUE 0, MF 1.0, hallucinations 0, every GFS 1.0";
    return c;
}

Check criterion2(const Context& ctx) {
    Check c;
    const auto& runs = ctx.faulty_runs;
    for (const auto& s : kSystems) {
        c.require(runs.at(s).results.size() >= 1000, s + " has fewer than 1000 episodes");
    }
    std::string summary;
    auto gap = [&](const std::vector<double>& a, const std::vector<double>& b, const std::string& label) {
        const auto ci = metrics::paired_bootstrap_diff(a, b);
        const double d = metrics::mean(a) - metrics::mean(b);
        c.require(ci.lo > 0, label + fmt(" gap %.4f CI [%.4f, %.4f] not positive", d, ci.lo, ci.hi));
        summary += label + fmt(" %+.3f [%.3f,%.3f]; ", d, ci.lo, ci.hi);
    };
    const auto tsr = [&](const std::string& s) { return success_vector(runs.at(s)); };
    const auto tue = [&](const std::string& s) { return redundant_vector(runs.at(s)); };
    gap(tsr("scl"), tsr("no-mem"), "TSR scl-nomem");
    gap(tsr("scl"), tsr("no-control"), "TSR scl-noctl");
    gap(tsr("no-mem"), tsr("none"), "TSR nomem-none");
    gap(tsr("no-control"), tsr("none"), "TSR noctl-none");
    gap(tue("no-mem"), tue("scl"), "TUE nomem-scl");
    gap(tue("none"), tue("scl"), "TUE none-scl");
    if (c.ok) c.detail = trimmed(summary);
    return c;
}

Check criterion3(const Context& ctx) {
    Check c;
    const std::vector<cognition::FaultModel> models{
        cognition::FaultModel::defaults(), {1.0, 0.0, 0.0, 0.0}, {1.0, 1.0, 0.0, 0.0},
        {0.0, 1.0, 0.0, 0.0},             {1.0, 1.0, 1.0, 1.0}, {0.5, 0.5, 0.5, 0.5},
    };
    std::size_t episodes = 0;
    for (const auto& f : models) {
        const auto run = run_system(ctx.specs, faulty("scl", f), "scl", 1);
        for (const auto& r : run.results) {
            ++episodes;
            c.require(r.scores.redundant_calls == 0, r.scores.episode_id + " executed a duplicate");
            c.require(recount_redundant(r.trace_text) == 0, r.scores.episode_id + " recount found a duplicate");
        }
    }
    for (const auto& r : ctx.faulty_runs.at("scl").results) {
        ++episodes;
        c.require(r.scores.redundant_calls == 0, r.scores.episode_id + " executed a duplicate");
    }
    if (c.ok) c.detail = std::to_string(episodes) + " episodes over 7 fault models incl. p_redundant=1.0: 0 duplicates";
    return c;
}

Check criterion4(const Context& ctx) {
    Check c;
    std::size_t episodes = 0;
    int executed = 0;
    auto audit = [&](const SuiteRun& run) {
        for (const auto& r : run.results) {
            ++episodes;
            const auto rep = metrics::audit_trace(metrics::view_trace_text(r.trace_text));
            executed += rep.executed;
            c.require(rep.ok(), r.scores.episode_id + ": " + (rep.ok() ? "" : rep.violations.front()));
        }
    };
    audit(ctx.oracle_scl);
    audit(ctx.faulty_runs.at("scl"));
    audit(ctx.faulty_runs.at("no-mem"));
    if (c.ok) {
        c.detail = std::to_string(episodes) + " controlled episodes audited, " + std::to_string(executed) +
                   " executed calls all guarded, every terminate on a satisfied guard";
    }
    return c;
}

Check criterion5(const Context& ctx) {
    Check c;
    std::size_t replayed = 0;
    auto replay_all = [&](const SuiteRun& run) {
        for (const auto& r : run.results) {
            ++replayed;
            const auto rep = loop::replay(r.trace_text);
            c.require(rep.matches(), r.scores.episode_id + " replay hash differs");
            c.require(rep.snapshot.content_hash == r.outcome.final_snapshot_hash,
                      r.scores.episode_id + " replay differs from the run's final snapshot");
        }
    };
    replay_all(ctx.oracle_scl);
    for (const auto& s : kSystems) replay_all(ctx.faulty_runs.at(s));

    std::string why;
    std::size_t flipped_traces = 0;
    // Every payload byte of one trace per scenario, three bytes per event
    // of every template's first seed under faulty cognition.
    for (std::size_t i = 0; i < ctx.specs.size(); i += 120) {
        ++flipped_traces;
        c.require(flips_detected(ctx.oracle_scl.results[i].trace_text, true, why), why);
    }
    for (std::size_t i = 0; i < ctx.specs.size(); i += 10) {
        ++flipped_traces;
        c.require(flips_detected(ctx.faulty_runs.at("none").results[i].trace_text, false, why), why);
    }
    if (c.ok) {
        c.detail = std::to_string(replayed) + " traces replay to their final hash; byte flips in " +
                   std::to_string(flipped_traces) + " traces each fail at the flipped event";
    }
    return c;
}

Check criterion6() {
    Check c;
    {
        scenarios::TravelRules r;
        r.form = scenarios::TravelRules::Form::compare;
        r.checks = {{"San Francisco", 77}, {"Miami", 77}};
        r.prefer = "Miami";
        r.draw_followup = true;
        auto spec = scenarios::travel_episode(r, {{"San Francisco", 68}, {"Miami", 82}});
        const auto run = loop::run_episode(spec, loop::AgentConfig{}, 0);
        const auto seq = call_sequence(run);
        const std::vector<std::string> want{R"(1:get_weather["San Francisco"])", R"(1:get_weather["Miami"])",
                                            R"(2:book_flight["Miami"])", R"(2:draw_weather["Miami"])"};
        c.require(run.outcome.cycles_used == 3, "walkthrough used " + std::to_string(run.outcome.cycles_used) + " cycles");
        c.require(seq == want, "walkthrough call sequence differs");
        c.require(run.outcome.termination.guard == TerminationGuard::goal_satisfied, "walkthrough not goal_satisfied");
    }
    {
        const auto run = loop::run_episode(episode_a_spec(), loop::AgentConfig{}, 0);
        const std::vector<std::string> want{"San Francisco", "Miami"};
        c.require(weather_calls(run) == want, "Episode A weather calls differ");
        const auto booked = run.outcome.executed_calls.back();
        c.require(booked.at("tool") == "book_flight" && booked.at("args").at(0) == "Miami", "Episode A did not book Miami");
    }
    {
        scenarios::TravelRules r;
        r.checks = {{"Miami", 82}, {"San Francisco", 77}};
        r.default_city = "New York";
        auto spec = scenarios::travel_episode(r, {{"Miami", 81}, {"San Francisco", 78}, {"New York", 70}});
        const auto run = loop::run_episode(spec, loop::AgentConfig{}, 0);
        const std::vector<std::string> want{"Miami", "San Francisco"};
        c.require(weather_calls(run) == want, "Episode B weather calls differ");
        const auto booked = run.outcome.executed_calls.back();
        c.require(booked.at("tool") == "book_flight" && booked.at("args").at(0) == "San Francisco",
                  "Episode B did not book San Francisco");
    }
    if (c.ok) c.detail = "walkthrough 3 cycles book then draw then terminate; A -> Miami (2 calls); B -> San Francisco (2 calls, no New York)";
    return c;
}

Check criterion7(const Context& ctx) {
    Check c;
    {
        // 50 weather calls, two proposals citing a value memory never held.
        Crafter k(episode_a_spec());
        const std::vector<std::string> cities{"San Francisco", "Miami", "New York", "Chicago", "Seattle"};
        std::uint32_t cycle = 0;
        for (int i = 0; i < 50; ++i) {
            ++cycle;
            const auto& city = cities[static_cast<std::size_t>(i) % cities.size()];
            const bool bad = i == 7 || i == 31;
            k.propose(cycle, ToolCall{"get_weather", json::array({city})}, bad ? "obs.Boston.temp_f=91" : "goal exists");
            k.act(cycle, city, 60 + i);
        }
        const auto text = k.finish(cycle);
        const auto s = metrics::score_trace(text);
        metrics::SystemScores sys{"crafted", "x", {{0, s}}};
        const auto rate = metrics::aggregate({sys}).row("crafted", "all").hallucinations;
        c.require(s.tool_calls == 50, "crafted tool calls " + std::to_string(s.tool_calls));
        c.require(s.unsupported_assertions == 2, "crafted unsupported " + std::to_string(s.unsupported_assertions));
        c.require(rate == 4.0, fmt("hallucination rate %.4f, want 4.0", rate));
    }
    {
        Crafter k(episode_a_spec());
        k.act(1, "San Francisco", 74);
        k.act(2, "Miami", 84);
        k.act(3, "Miami", 84);
        const auto text = k.finish(3);
        c.require(metrics::score_trace(text).redundant_calls == 1, "duplicate Miami query not counted once");
        c.require(recount_redundant(text) == 1, "recount of duplicate Miami query");
    }
    std::size_t traces = 0;
    auto agree = [&](const SuiteRun& run) {
        for (const auto& r : run.results) {
            ++traces;
            c.require(recount_redundant(r.trace_text) == r.scores.redundant_calls,
                      r.scores.episode_id + " recount disagrees with redundant_calls");
        }
    };
    agree(ctx.oracle_scl);
    for (const auto& s : kSystems) agree(ctx.faulty_runs.at(s));
    if (c.ok) {
        c.detail = "crafted: 2/50 -> 4.0 per 100, duplicate Miami -> 1; recount agrees on " + std::to_string(traces) +
                   " suite traces";
    }
    return c;
}

Check criterion8(const Context& ctx) {
    Check c;
    std::string summary;

    // Noise within the margin guarantee: the same specs with noise on and off.
    {
        scenarios::GeneratorOptions opts;
        opts.noise_bound = 1.5;
        auto noisy = scenarios::generate_suite({scenarios::Scenario::A, scenarios::Scenario::B, scenarios::Scenario::C},
                                               scenarios::kTemplatesPerScenario, scenarios::kSeedsPerTemplate, opts);
        auto quiet = noisy;
        for (auto& s : quiet) s.noise_bound = 0.0;
        for (const auto& s : noisy) c.require(scenarios::margin_guarantee_holds(s), s.id() + " violates the margin");
        const auto a = run_system(noisy, loop::AgentConfig{}, "scl");
        const auto b = run_system(quiet, loop::AgentConfig{}, "scl");
        int changed = 0;
        for (std::size_t i = 0; i < a.results.size(); ++i) {
            if (outcome_signature(a.results[i]) != outcome_signature(b.results[i])) ++changed;
        }
        c.require(changed == 0, std::to_string(changed) + " oracle outcomes changed under noise");
        summary += "noise: 0 of " + std::to_string(a.results.size()) + " outcomes changed; ";
    }

    // Transient failures with retry.
    {
        loop::AgentConfig flaky;
        flaky.p_transient = 0.2;
        const auto a = run_system(ctx.specs, flaky, "scl");
        const auto& b = ctx.oracle_scl;
        int changed = 0;
        long long attempts_a = 0;
        long long attempts_b = 0;
        for (std::size_t i = 0; i < a.results.size(); ++i) {
            if (outcome_signature(a.results[i]) != outcome_signature(b.results[i])) ++changed;
            attempts_a += a.results[i].outcome.attempts;
            attempts_b += b.results[i].outcome.attempts;
        }
        c.require(changed == 0, std::to_string(changed) + " outcomes changed under transient failures");
        c.require(attempts_a > attempts_b, "transient failures did not raise attempt counts");
        summary += "transient p=0.2: 0 outcomes changed, attempts " + std::to_string(attempts_b) + " -> " +
                   std::to_string(attempts_a) + "; ";
    }

    // Three versus five candidate cities on Scenario A under faulty cognition.
    {
        scenarios::GeneratorOptions five;
        five.city_count = 5;
        const auto specs3 = scenarios::generate_suite({scenarios::Scenario::A}, scenarios::kTemplatesPerScenario,
                                                      scenarios::kSeedsPerTemplate);
        const auto specs5 = scenarios::generate_suite({scenarios::Scenario::A}, scenarios::kTemplatesPerScenario,
                                                      scenarios::kSeedsPerTemplate, five);
        std::map<std::string, std::vector<double>> s3, s5;
        for (const auto& sys : kSystems) {
            s3[sys] = success_vector(run_system(specs3, faulty(sys), sys));
            s5[sys] = success_vector(run_system(specs5, faulty(sys), sys));
        }
        // Joint bootstrap: one resample of each episode set per iteration,
        // shared by every system so drops stay comparable.
        const int resamples = 1000;
        Rng rng(derive_seed(0, "city-drop"));
        const std::size_t n3 = s3["scl"].size();
        const std::size_t n5 = s5["scl"].size();
        std::map<std::string, std::vector<double>> drops;
        std::map<std::string, std::vector<double>> versus;  // drop(scl) - drop(ablation)
        for (int b = 0; b < resamples; ++b) {
            std::vector<std::size_t> i3(n3), i5(n5);
            for (auto& i : i3) i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n3) - 1));
            for (auto& i : i5) i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n5) - 1));
            std::map<std::string, double> d;
            for (const auto& sys : kSystems) {
                double a = 0;
                double z = 0;
                for (auto i : i3) a += s3[sys][i];
                for (auto i : i5) z += s5[sys][i];
                d[sys] = a / static_cast<double>(n3) - z / static_cast<double>(n5);
                drops[sys].push_back(d[sys]);
            }
            for (const auto& sys : kSystems) {
                if (sys != "scl") versus[sys].push_back(d["scl"] - d[sys]);
            }
        }
        auto ci = [](std::vector<double> v) {
            std::sort(v.begin(), v.end());
            return metrics::Interval{v[static_cast<std::size_t>(0.025 * static_cast<double>(v.size()))],
                                     v[static_cast<std::size_t>(0.975 * static_cast<double>(v.size())) - 1]};
        };
        for (const auto& sys : kSystems) {
            const double point = metrics::mean(s3[sys]) - metrics::mean(s5[sys]);
            const auto iv = ci(drops[sys]);
            summary += sys + fmt(" drop %+.3f [%.3f,%.3f]; ", point, iv.lo, iv.hi);
            c.require(iv.lo > 0, sys + fmt(" 5-city drop %+.3f CI [%.3f, %.3f] not positive", point, iv.lo, iv.hi));
            if (sys == "scl") continue;
            const auto vs = ci(versus[sys]);
            c.require(vs.lo <= 0, "scl drop exceeds " + sys + fmt(" drop, CI [%.3f, %.3f]", vs.lo, vs.hi));
        }
    }
    if (c.ok) {
        c.detail = trimmed(summary);
    } else {
        c.detail += " (" + trimmed(summary) + ")";
    }
    return c;
}

}  // namespace

int main() {
    Context ctx;
    ctx.specs = suite::RunManifest{}.episodes();
    ctx.oracle_scl = run_system(ctx.specs, loop::AgentConfig{}, "scl");
    for (const auto& s : kSystems) ctx.faulty_runs.emplace(s, run_system(ctx.specs, faulty(s), s));

    const std::vector<std::pair<const char*, std::function<Check()>>> criteria{
        {"oracle end-to-end correctness", [&] { return criterion1(ctx); }},
        {"ablation ordering", [&] { return criterion2(ctx); }},
        {"dedup invariant", [&] { return criterion3(ctx); }},
        {"guarded execution", [&] { return criterion4(ctx); }},
        {"replay and tamper evidence", [&] { return criterion5(ctx); }},
        {"golden episodes", [] { return criterion6(); }},
        {"metric correctness", [&] { return criterion7(ctx); }},
        {"robustness", [&] { return criterion8(ctx); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            c = criteria[i].second();
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail = std::string("exception: ") + e.what();
        }
        if (!c.ok) ++failed;
        std::printf("%s criterion %zu (%s): %s\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, c.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 3;
}
