#pragma once

#include <cstdint>
#include <string>

#include "scl/cognition/citation.hpp"
#include "scl/cognition/proposal.hpp"
#include "scl/control/decision.hpp"
#include "scl/control/dedup.hpp"
#include "scl/mem/episode_memory.hpp"
#include "scl/scenarios/rules.hpp"
#include "scl/termination.hpp"

namespace scl::control {

struct ControlConfig {
    bool enabled = true;
    double confidence_threshold = 0.99;
    int budget = 20;
};

/// Checks every citation of a proposal (or pending action) against the
/// state view.
inline std::vector<GuardCheck> guard_report(const std::vector<std::string>& because,
                                            const std::vector<cognition::Assertion>& assertions,
                                            const mem::StateView& state) {
    std::vector<GuardCheck> report;
    auto check = [&](const std::string& text, const char* role) {
        bool holds = false;
        try {
            holds = cognition::Citation::parse(text).holds(state);
        } catch (const ValidationError&) {
            holds = false;
        }
        report.push_back({text, role, holds});
    };
    for (const auto& c : because) check(c, "because");
    for (const auto& a : assertions) check(a.evidence, "assertion");
    return report;
}

inline bool pending_after_satisfied(const mem::MemRecord& pending, const mem::StateView& state) {
    const auto after = pending.value.value("after", std::string{});
    if (after.empty()) return true;
    return std::any_of(state.approved_actions.begin(), state.approved_actions.end(), [&](const mem::MemRecord& a) {
        return a.value.value("name", std::string{}) == after && a.value.value("status", std::string{}) == "executed";
    });
}

inline ToolCall pending_call(const mem::MemRecord& pending) {
    return ToolCall{pending.value.at("name").get<std::string>(), canonical_args(pending.value.at("args"))};
}

/// Guarded execution. One instance per episode; holds no mutable state,
/// everything it needs is in the proposal, the state view and the cache.
class Controller {
public:
    Controller(scenarios::EpisodeSpec spec, ControlConfig config) : spec_(std::move(spec)), config_(config) {}

    [[nodiscard]] const ControlConfig& config() const noexcept { return config_; }

    [[nodiscard]] Decision evaluate(const cognition::Proposal& proposal, const mem::StateView& state,
                                    const DedupCache& cache) const {
        Decision d;
        d.guard_report = guard_report(proposal.because, proposal.assertions, state);

        if (proposal.is_query()) {
            d.verdict = Verdict::query;
            d.notes.push_back(note("query", proposal.args.empty() ? "cognition asked for clarification"
                                                                 : proposal.args.at(0).get<std::string>()));
            return d;
        }

        if (!config_.enabled) {
            d.verdict = Verdict::approve;
            if (proposal.is_terminate()) {
                d.action = ToolCall{std::string(cognition::kTerminate), json::array()};
                d.termination = TerminationStatus{true, TerminationGuard::declared};
            } else {
                d.action = ToolCall{proposal.propose, canonical_args(proposal.args)};
                d.deferred = proposal.followups;
                d.releases = matching_pending(*d.action, state);
            }
            return d;
        }

        for (const auto& g : d.guard_report) {
            if (!cognition::is_parseable_citation(g.citation)) {
                d.verdict = Verdict::query;
                d.notes.push_back(note("clarify", "unparseable citation '" + g.citation + "'"));
                return d;
            }
        }
        if (proposal.is_terminate()) {
            if (!d.all_guards_hold()) {
                d.verdict = Verdict::defer;
                d.notes.push_back(note("defer", "terminate cites evidence that does not hold: " + failing(d)));
                return d;
            }
            if (scenarios::goal_met(spec_, state)) {
                d.termination = TerminationStatus{true, TerminationGuard::goal_satisfied};
            } else if (proposal.confidence >= config_.confidence_threshold) {
                d.termination = TerminationStatus{true, TerminationGuard::confidence_threshold};
            } else {
                d.verdict = Verdict::defer;
                d.notes.push_back(note("defer", "terminate deferred: goal not satisfied"));
                return d;
            }
            d.verdict = Verdict::approve;
            d.action = ToolCall{std::string(cognition::kTerminate), json::array()};
            return d;
        }

        if (!d.all_guards_hold()) {
            d.verdict = Verdict::query;
            d.notes.push_back(note("query", "preconditions do not hold: " + failing(d)));
            return d;
        }
        ToolCall call{proposal.propose, canonical_args(proposal.args)};
        const auto key = make_dedup_key(call, context_epoch(state));
        d.dedup_key = key;
        if (cache.contains(key)) {
            d.verdict = Verdict::reject_duplicate;
            d.notes.push_back(note("duplicate", "already executed in this context: " + call.canonical()));
            return d;
        }
        for (const auto& p : state.pending) {
            if (pending_call(p) == call && !pending_after_satisfied(p, state)) {
                d.verdict = Verdict::defer;
                d.notes.push_back(note("defer", call.tool + " waits for " + p.value.value("after", std::string{})));
                return d;
            }
        }
        d.verdict = Verdict::approve;
        d.action = call;
        d.deferred = proposal.followups;
        d.releases = matching_pending(call, state);
        return d;
    }

    /// Decision on a pending action whose ordering constraint may now be met.
    [[nodiscard]] Decision release(const mem::MemRecord& pending, const mem::StateView& state,
                                   const DedupCache& cache) const {
        Decision d;
        const auto because = pending.value.value("because", std::vector<std::string>{});
        d.guard_report = guard_report(because, {}, state);
        const auto call = pending_call(pending);
        d.releases = pending.path.str();
        if (!config_.enabled) {
            d.verdict = Verdict::approve;
            d.action = call;
            return d;
        }
        const auto key = make_dedup_key(call, context_epoch(state));
        d.dedup_key = key;
        if (!pending_after_satisfied(pending, state) || !d.all_guards_hold()) {
            d.verdict = Verdict::defer;
            d.releases.clear();
            d.notes.push_back(note("defer", call.tool + " stays pending"));
            return d;
        }
        if (cache.contains(key)) {
            d.verdict = Verdict::reject_duplicate;
            d.notes.push_back(note("duplicate", "pending action already executed: " + call.canonical()));
            return d;
        }
        d.verdict = Verdict::approve;
        d.action = call;
        return d;
    }

    /// Stop condition after a cycle. Precedence: goal satisfied, then
    /// confidence, then budget. The first two come from an approved
    /// terminate; the budget applies regardless of what was proposed.
    [[nodiscard]] TerminationStatus check_termination(const mem::StateView& state, int cycles_used,
                                                      const Decision* last_decision) const {
        (void)state;
        if (last_decision && last_decision->approves_terminate() && last_decision->termination) {
            return *last_decision->termination;
        }
        if (cycles_used >= config_.budget) return {true, TerminationGuard::budget_exhausted};
        return {};
    }

private:
    static json note(const std::string& type, const std::string& text) { return json{{"type", type}, {"text", text}}; }

    static std::string failing(const Decision& d) {
        std::string out;
        for (const auto& g : d.guard_report) {
            if (g.holds) continue;
            if (!out.empty()) out += ", ";
            out += g.citation;
        }
        return out;
    }

    static std::string matching_pending(const ToolCall& call, const mem::StateView& state) {
        for (const auto& p : state.pending) {
            if (pending_call(p) == call) return p.path.str();
        }
        return {};
    }

    scenarios::EpisodeSpec spec_;
    ControlConfig config_;
};

/// Bumps the context epoch by writing a context-change note. Calls made
/// after this no longer collide with earlier identical calls.
inline std::int64_t register_context_change(mem::EpisodeMemory& memory, const std::string& reason,
                                            std::uint32_t cycle) {
    const auto epoch = context_epoch(memory.state()) + 1;
    const auto index = memory.next_index("notes");
    mem::MemRecord r;
    r.path = mem::MemPath({"notes", std::to_string(index)});
    r.kind = mem::RecordKind::note;
    r.value = json{{"type", "context_change"}, {"reason", reason}, {"epoch", epoch}};
    r.source = "control";
    r.t = memory.tick(cycle);
    memory.write(std::move(r));
    return epoch;
}

}  // namespace scl::control
