#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "scl/action/builtins.hpp"
#include "scl/action/environment.hpp"
#include "scl/cognition/directives.hpp"
#include "scl/cognition/policy.hpp"
#include "scl/control/controller.hpp"
#include "scl/loop/config.hpp"
#include "scl/loop/trace.hpp"
#include "scl/mem/episode_memory.hpp"
#include "scl/scenarios/outcome.hpp"

namespace scl::loop {

struct EpisodeOutcome {
    std::string episode_id;
    TerminationStatus termination;
    std::string final_snapshot_hash;
    /// Every executed call in order: {tool, args, outcome, attempts, cycle}.
    std::vector<json> executed_calls;
    /// Confirmation codes, receipts and artifact handles.
    std::vector<std::string> artifacts;
    int cycles_used = 0;
    int attempts = 0;
};

inline json to_json(const EpisodeOutcome& o) {
    return json{{"episode_id", o.episode_id},
                {"termination", scl::to_json(o.termination)},
                {"final_snapshot_hash", o.final_snapshot_hash},
                {"executed_calls", o.executed_calls},
                {"artifacts", o.artifacts},
                {"cycles_used", o.cycles_used},
                {"attempts", o.attempts}};
}

inline EpisodeOutcome outcome_from_json(const json& j) {
    EpisodeOutcome o;
    o.episode_id = j.at("episode_id").get<std::string>();
    o.termination = termination_from_json(j.at("termination"));
    o.final_snapshot_hash = j.at("final_snapshot_hash").get<std::string>();
    o.executed_calls = j.at("executed_calls").get<std::vector<json>>();
    o.artifacts = j.at("artifacts").get<std::vector<std::string>>();
    o.cycles_used = j.at("cycles_used").get<int>();
    o.attempts = j.at("attempts").get<int>();
    return o;
}

struct EpisodeRun {
    EpisodeOutcome outcome;
    Trace trace{""};
    mem::MemSnapshot final_snapshot;
    /// Per-cycle snapshots, kept only when requested.
    std::vector<mem::MemSnapshot> snapshots;
    std::unique_ptr<mem::EpisodeMemory> memory;
};

struct RunOptions {
    const action::ToolRegistry* registry = nullptr;
    const cognition::Directives* directives = nullptr;
    bool keep_snapshots = false;
};

/// Seed of an episode's random streams within one run.
inline std::uint64_t episode_seed(std::uint64_t run_seed, const scenarios::EpisodeSpec& spec) {
    return derive_seed(run_seed, spec.id());
}

/// Memory path of the observation a read-only tool produces.
inline mem::MemPath observation_path(const ToolCall& call) {
    const auto arg = call.args.at(0).get<std::string>();
    if (call.tool == "get_weather") return mem::MemPath({"obs", arg});
    if (call.tool == "lookup_contact") return mem::MemPath({"obs", "contact", arg});
    if (call.tool == "compute_score") return mem::MemPath({"obs", "score", arg});
    return mem::MemPath({"obs", call.tool, arg});
}

namespace detail {

inline std::unique_ptr<cognition::CognitionPolicy> make_policy(const scenarios::EpisodeSpec& spec, const AgentConfig& config,
                                                        std::uint64_t run_seed);

class EpisodeLoop {
public:
    EpisodeLoop(const scenarios::EpisodeSpec& spec, const AgentConfig& config, std::uint64_t run_seed,
                const action::ToolRegistry& registry, const cognition::Directives& directives, bool keep_snapshots)
        : spec_(spec),
          config_(config),
          run_seed_(run_seed),
          registry_(registry),
          directives_(directives),
          keep_snapshots_(keep_snapshots),
          trace_(spec.id()),
          memory_(std::make_unique<mem::EpisodeMemory>(spec.id(), config.store_mode())),
          controller_(spec, control::ControlConfig{config.control_enabled, config.confidence_threshold,
                                                   config.budget.value_or(spec.budget)}),
          env_(spec, derive_seed(episode_seed(run_seed, spec), "tools"),
               action::RetryPolicy{2, {50, 100}, config.p_transient}) {}

    EpisodeRun run() {
        config_.validate();
        for (const auto& tool : scenarios::referenced_tools(spec_)) {
            if (!registry_.contains(tool)) throw ConfigError("episode " + spec_.id() + " needs unregistered tool '" + tool + "'");
        }
        auto policy = make_policy(spec_, config_, run_seed_);
        memory_->set_write_observer([this](const mem::MemRecord& r) {
            trace_.append(r.t.cycle, Phase::mem_write, json{{"record", mem::to_json(r)}});
        });

        trace_.append(0, Phase::init,
                      json{{"config", to_json(config_)},
                           {"store_mode", mem::to_json(config_.store_mode())},
                           {"spec", scenarios::to_json(spec_)},
                           {"spec_hash", scenarios::spec_hash(spec_)},
                           {"directives", {{"version", std::string(directives_.version)}, {"text", std::string(directives_.text)}}},
                           {"seed", run_seed_}});
        write(0, mem::RecordKind::goal, mem::MemPath({"goal"}), spec_.goal, "control");
        for (const auto& [key, value] : spec_.constraints.items()) {
            write(0, mem::RecordKind::constraint, mem::MemPath({"constraints", key}), value, "control");
        }
        auto status = controller_.check_termination(memory_->state(), 0, nullptr);
        write(0, mem::RecordKind::termination, mem::MemPath({"termination"}), scl::to_json(status), "control");
        end_cycle(0);

        std::uint32_t cycle = 0;
        while (!status.ready) {
            ++cycle;
            const auto state = memory_->state();
            trace_.append(cycle, Phase::retrieve, json{{"state", state.to_json()}});
            auto result = policy->propose(state, directives_);
            json proposed{{"proposal", cognition::to_json(result.proposal)}};
            if (result.failure) proposed["failure"] = *result.failure;
            trace_.append(cycle, Phase::propose, proposed);

            const auto decision = controller_.evaluate(result.proposal, state, control::DedupCache::from_state(state));
            trace_.append(cycle, Phase::decide, json{{"source", "proposal"}, {"decision", control::to_json(decision)}});
            if (result.failure) {
                write(cycle, mem::RecordKind::failure_event, next("failures"), *result.failure, "cognition");
            }
            if (decision.approved()) {
                if (decision.action && decision.action->tool != cognition::kTerminate) {
                    act(cycle, *decision.action);
                }
                if (result.proposal.judgment) {
                    write(cycle, mem::RecordKind::judgment, next("judgments"),
                          json{{"proposition", result.proposal.judgment->proposition},
                               {"evidence", result.proposal.judgment->evidence}},
                          "cognition");
                }
                for (const auto& f : decision.deferred) {
                    write(cycle, mem::RecordKind::pending_action, next("pending"),
                          json{{"name", f.propose}, {"args", canonical_args(f.args)}, {"after", f.after}, {"because", f.because}},
                          "control");
                }
                close_pending(cycle, decision.releases, "released");
            }
            for (const auto& n : decision.notes) write(cycle, mem::RecordKind::note, next("notes"), n, "control");
            if (decision.approved() && !decision.approves_terminate()) drain(cycle);

            status = controller_.check_termination(memory_->state(), static_cast<int>(cycle), &decision);
            write(cycle, mem::RecordKind::termination, mem::MemPath({"termination"}), scl::to_json(status), "control");
            end_cycle(cycle);
        }

        EpisodeRun run;
        run.final_snapshot = memory_->snapshot(cycle);
        outcome_.episode_id = spec_.id();
        outcome_.termination = status;
        outcome_.final_snapshot_hash = run.final_snapshot.content_hash;
        outcome_.cycles_used = static_cast<int>(cycle);
        trace_.append(cycle, Phase::terminate, json{{"outcome", to_json(outcome_)}});
        memory_->set_write_observer(nullptr);
        run.outcome = outcome_;
        run.trace = std::move(trace_);
        run.snapshots = std::move(snapshots_);
        run.memory = std::move(memory_);
        return run;
    }

private:
    mem::MemPath next(const std::string& root) {
        return mem::MemPath({root, std::to_string(memory_->next_index(root))});
    }

    void write(std::uint32_t cycle, mem::RecordKind kind, mem::MemPath path, json value, std::string source,
               json tags = json::object()) {
        mem::MemRecord r;
        r.path = std::move(path);
        r.kind = kind;
        r.value = std::move(value);
        r.source = std::move(source);
        r.t = memory_->tick(cycle);
        r.tags = std::move(tags);
        memory_->write(std::move(r));
    }

    void end_cycle(std::uint32_t cycle) {
        auto snap = memory_->snapshot(cycle);
        trace_.append(cycle, Phase::snapshot,
                      json{{"content_hash", snap.content_hash}, {"records", snap.records.size()}});
        if (keep_snapshots_) snapshots_.push_back(std::move(snap));
    }

    void close_pending(std::uint32_t cycle, const std::string& path, const std::string& status) {
        if (path.empty()) return;
        auto rec = memory_->read(mem::MemPath::parse(path));
        if (!rec || rec->value.contains("status")) return;
        auto value = rec->value;
        value["status"] = status;
        write(cycle, mem::RecordKind::pending_action, rec->path, value, "control");
    }

    void act(std::uint32_t cycle, const ToolCall& call) {
        const auto epoch = control::context_epoch(memory_->state());
        const auto result = action::execute(call, registry_, env_);
        trace_.append(cycle, Phase::act, json{{"result", action::to_json(result)}, {"epoch", epoch}});

        outcome_.attempts += result.attempts;
        outcome_.executed_calls.push_back(json{{"tool", call.tool},
                                               {"args", call.args},
                                               {"outcome", result.ok() ? "ok" : "failed"},
                                               {"attempts", result.attempts},
                                               {"cycle", cycle}});
        const json tags{{"call", scl::to_json(call)}, {"epoch", epoch}};
        const bool side_effect = scenarios::is_side_effect_tool(call.tool);
        if (result.ok()) {
            if (side_effect) {
                json value{{"name", call.tool}, {"args", call.args}, {"status", "executed"}};
                for (const auto& [k, v] : result.value.items()) {
                    value[k] = v;
                    if (v.is_string()) outcome_.artifacts.push_back(v.get<std::string>());
                }
                write(cycle, mem::RecordKind::approved_action, next("approved_actions"), value, call.tool, tags);
            } else {
                json obs_tags = tags;
                if (result.value.contains("temp_f")) obs_tags["unit"] = "f";
                write(cycle, mem::RecordKind::observation, observation_path(call), result.value, call.tool, obs_tags);
            }
            return;
        }
        if (side_effect) {
            write(cycle, mem::RecordKind::approved_action, next("approved_actions"),
                  json{{"name", call.tool}, {"args", call.args}, {"status", "failed"}, {"error", result.error}}, call.tool,
                  tags);
        }
        write(cycle, mem::RecordKind::failure_event, next("failures"),
              json{{"tool", call.tool}, {"args", call.args}, {"error", result.error}, {"attempts", result.attempts}},
              call.tool, tags);
        control::register_context_change(*memory_, "tool_failure", cycle);
    }

    /// Runs pending actions whose ordering constraint is now met, each
    /// through its own decision.
    void drain(std::uint32_t cycle) {
        std::set<std::string> tried;
        while (true) {
            const auto state = memory_->state();
            const mem::MemRecord* pick = nullptr;
            for (const auto& p : state.pending) {
                if (!tried.contains(p.path.str()) && control::pending_after_satisfied(p, state)) {
                    pick = &p;
                    break;
                }
            }
            if (!pick) return;
            tried.insert(pick->path.str());
            const auto d = controller_.release(*pick, state, control::DedupCache::from_state(state));
            trace_.append(cycle, Phase::decide,
                          json{{"source", "pending"}, {"pending", pick->path.str()}, {"decision", control::to_json(d)}});
            if (d.approved()) {
                act(cycle, *d.action);
                close_pending(cycle, d.releases, "released");
            } else if (d.verdict == control::Verdict::reject_duplicate) {
                close_pending(cycle, d.releases, "dropped");
            }
            for (const auto& n : d.notes) write(cycle, mem::RecordKind::note, next("notes"), n, "control");
        }
    }

    const scenarios::EpisodeSpec& spec_;
    AgentConfig config_;
    std::uint64_t run_seed_;
    const action::ToolRegistry& registry_;
    const cognition::Directives& directives_;
    bool keep_snapshots_;
    Trace trace_;
    std::unique_ptr<mem::EpisodeMemory> memory_;
    control::Controller controller_;
    action::ToolEnvironment env_;
    EpisodeOutcome outcome_;
    std::vector<mem::MemSnapshot> snapshots_;
};

}  // namespace detail

inline const action::ToolRegistry& default_registry() {
    static const action::ToolRegistry registry = action::builtin_registry();
    return registry;
}

/// Runs one episode to termination. Deterministic in (spec, config, seed).
inline EpisodeRun run_episode(const scenarios::EpisodeSpec& spec, const AgentConfig& config, std::uint64_t seed,
                              RunOptions options = {}) {
    const auto& registry = options.registry ? *options.registry : default_registry();
    const auto& directives = options.directives ? *options.directives : cognition::kDirectives;
    detail::EpisodeLoop loop(spec, config, seed, registry, directives, options.keep_snapshots);
    return loop.run();
}

/// Canned transport replaying the proposals an oracle run makes on the
/// same episode.
inline cognition::Transport oracle_replay_transport(const scenarios::EpisodeSpec& spec, std::uint64_t seed) {
    AgentConfig oracle;
    const auto run = run_episode(spec, oracle, seed);
    std::vector<std::string> responses;
    for (const auto& e : run.trace.events()) {
        if (e.phase == Phase::propose) responses.push_back(canonical_dump(e.payload.at("proposal")));
    }
    return cognition::canned_transport(std::move(responses));
}

namespace detail {

inline std::unique_ptr<cognition::CognitionPolicy> make_policy(const scenarios::EpisodeSpec& spec,
                                                               const AgentConfig& config, std::uint64_t run_seed) {
    switch (config.policy) {
        case PolicyKind::oracle: return std::make_unique<cognition::OraclePolicy>(spec);
        case PolicyKind::faulty:
            return std::make_unique<cognition::FaultyPolicy>(
                spec, config.faults, derive_seed(episode_seed(run_seed, spec), "cognition"));
        case PolicyKind::adapter: {
            auto transport = config.transport ? config.transport(spec, run_seed) : oracle_replay_transport(spec, run_seed);
            return std::make_unique<cognition::AdapterPolicy>(std::move(transport));
        }
    }
    throw ConfigError("unknown cognition policy");
}

}  // namespace detail

}  // namespace scl::loop
