#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "scl/cognition/citation.hpp"
#include "scl/cognition/policy.hpp"
#include "scl/metrics/trace_view.hpp"
#include "scl/scenarios/oracle.hpp"
#include "scl/scenarios/outcome.hpp"

namespace scl::metrics {

struct EpisodeScores {
    std::string episode_id;
    char scenario = 'A';
    bool success = false;
    double gfs = 0.0;
    int redundant_calls = 0;
    bool memory_faithful = false;
    int unsupported_assertions = 0;
    int tool_calls = 0;
    int cycles = 0;
    std::string guard;
    /// First divergent phase, for failed episodes only.
    std::string error_label;
    std::map<std::string, bool> rubric;
};

inline json to_json(const EpisodeScores& s) {
    json j{{"episode_id", s.episode_id},
           {"scenario", std::string(1, s.scenario)},
           {"success", s.success},
           {"gfs", s.gfs},
           {"redundant_calls", s.redundant_calls},
           {"memory_faithful", s.memory_faithful},
           {"unsupported_assertions", s.unsupported_assertions},
           {"tool_calls", s.tool_calls},
           {"cycles", s.cycles},
           {"guard", s.guard},
           {"rubric", s.rubric}};
    if (!s.error_label.empty()) j["error_label"] = s.error_label;
    return j;
}

inline EpisodeScores scores_from_json(const json& j) {
    EpisodeScores s;
    s.episode_id = j.at("episode_id").get<std::string>();
    s.scenario = j.at("scenario").get<std::string>().at(0);
    s.success = j.at("success").get<bool>();
    s.gfs = j.at("gfs").get<double>();
    s.redundant_calls = j.at("redundant_calls").get<int>();
    s.memory_faithful = j.at("memory_faithful").get<bool>();
    s.unsupported_assertions = j.at("unsupported_assertions").get<int>();
    s.tool_calls = j.at("tool_calls").get<int>();
    s.cycles = j.at("cycles").get<int>();
    s.guard = j.at("guard").get<std::string>();
    s.error_label = j.value("error_label", std::string{});
    s.rubric = j.at("rubric").get<std::map<std::string, bool>>();
    return s;
}

/// Executed calls that repeat an earlier executed call's (tool, canonical
/// args, context epoch).
inline int count_redundant(const std::vector<ActRecord>& acts) {
    std::set<control::DedupKey> seen;
    int redundant = 0;
    for (const auto& a : acts) {
        if (!seen.insert(a.key()).second) ++redundant;
    }
    return redundant;
}

/// Record holding the value a path resolves into (longest record prefix).
inline const mem::MemRecord* record_for(const mem::StateView& state, const mem::MemPath& path) {
    for (std::size_t n = path.size(); n >= 1; --n) {
        auto it = state.latest.find(path.prefix(n).str());
        if (it != state.latest.end()) return &it->second;
    }
    return nullptr;
}

/// Assertions whose evidence does not parse, names an absent path, or
/// disagrees with the value in memory when the proposal was made.
inline int count_unsupported(const std::vector<ProposeRecord>& proposals) {
    int n = 0;
    for (const auto& p : proposals) {
        for (const auto& a : p.proposal.value("assertions", json::array())) {
            const auto evidence = a.at("evidence").get<std::string>();
            bool ok = false;
            try {
                ok = cognition::Citation::parse(evidence).holds(p.state);
            } catch (const ValidationError&) {
                ok = false;
            }
            if (!ok) ++n;
        }
    }
    return n;
}

namespace detail {

struct SideEffect {
    ToolCall call;
    std::size_t order = 0;
};

inline std::vector<SideEffect> executed_side_effects(const TraceView& v) {
    std::vector<SideEffect> out;
    for (std::size_t i = 0; i < v.acts.size(); ++i) {
        const auto& a = v.acts[i];
        if (a.ok && scenarios::is_side_effect_tool(a.call.tool)) out.push_back({a.call, i});
    }
    return out;
}

inline bool body_contains(const ToolCall& c, const std::string& needle) {
    if (c.args.size() < 2 || !c.args[1].is_string()) return false;
    return c.args[1].get<std::string>().find(needle) != std::string::npos;
}

/// The proposal that formed the episode's decision: the first approved
/// side effect, else the approved terminate.
inline const DecideRecord* decision_forming(const TraceView& v) {
    for (const auto& d : v.decisions) {
        if (d.source != "proposal" || !d.decision.approved() || !d.decision.action) continue;
        if (scenarios::is_side_effect_tool(d.decision.action->tool)) return &d;
    }
    for (const auto& d : v.decisions) {
        if (d.source == "proposal" && d.decision.approves_terminate()) return &d;
    }
    return nullptr;
}

inline bool memory_faithful(const TraceView& v) {
    const auto* d = decision_forming(v);
    if (!d || !d->proposal) return false;
    int cited = 0;
    for (const auto& text : d->proposal->value("because", std::vector<std::string>{})) {
        cognition::Citation c;
        try {
            c = cognition::Citation::parse(text);
        } catch (const ValidationError&) {
            return false;
        }
        if (c.path.root() != "obs") continue;
        ++cited;
        const auto* rec = record_for(d->state, c.path);
        if (!rec || rec->t.cycle >= d->cycle) return false;
        if (!c.holds(d->state)) return false;
    }
    return cited > 0;
}

/// First divergent phase of a failed episode, found by recomputing the
/// oracle proposal on the state each proposal was made from.
inline std::string error_label(const TraceView& v) {
    const bool control_on = v.init.at("config").at("control_enabled").get<bool>();
    for (const auto& p : v.proposals) {
        const auto expected = cognition::oracle_policy(p.state, v.spec);
        const bool diverged = p.proposal.at("propose") != expected.propose || p.proposal.at("args") != expected.args;
        const DecideRecord* d = nullptr;
        for (const auto& dd : v.decisions) {
            if (dd.source == "proposal" && dd.cycle == p.cycle) d = &dd;
        }
        for (const auto& a : v.acts) {
            if (a.cycle == p.cycle && !a.ok) return "tool_failure";
        }
        if (!d) continue;
        if (diverged && d->decision.approved()) {
            if (d->decision.approves_terminate()) return "premature_termination";
            return control_on ? "wrong_decision" : "bad_proposal";
        }
        if (!diverged && !d->decision.approved()) return "wrong_decision";
    }
    const auto guard = v.final_state.termination.guard;
    if (guard == TerminationGuard::budget_exhausted) return "budget_exhausted";
    return "bad_proposal";
}

}  // namespace detail

/// Scores one verified trace against the episode it ran on.
inline EpisodeScores score_episode(const TraceView& v) {
    const auto& spec = v.spec;
    EpisodeScores s;
    s.episode_id = v.episode_id;
    s.scenario = scenarios::to_char(spec.scenario);
    s.tool_calls = static_cast<int>(v.acts.size());
    s.redundant_calls = count_redundant(v.acts);
    s.unsupported_assertions = count_unsupported(v.proposals);
    s.memory_faithful = detail::memory_faithful(v);
    s.cycles = v.outcome.value("cycles_used", 0);
    s.guard = std::string(to_string(v.final_state.termination.guard));

    const auto expected = scenarios::oracle_outcome(spec);
    const auto plan = scenarios::plan_effects(spec, expected);
    const auto effects = detail::executed_side_effects(v);
    int primary_count = 0;
    int followup_count = 0;
    bool stray = false;
    std::optional<std::size_t> primary_at;
    std::optional<std::size_t> followup_at;
    const scenarios::Effect* primary = plan.primary ? &*plan.primary : nullptr;
    const scenarios::Effect* followup = plan.followup ? &*plan.followup : nullptr;
    std::optional<ToolCall> primary_call;
    for (const auto& e : effects) {
        if (primary && primary->matches(e.call)) {
            ++primary_count;
            if (!primary_at) {
                primary_at = e.order;
                primary_call = e.call;
            }
        } else if (followup && followup->matches(e.call)) {
            ++followup_count;
            if (!followup_at) followup_at = e.order;
        } else {
            stray = true;
        }
    }
    const bool judged = !v.final_state.judgments.empty();
    const bool outcome_correct = !stray && (primary ? primary_count >= 1 : judged);
    const bool primary_once = primary ? primary_count == 1 : effects.empty();
    s.success = outcome_correct && primary_once && followup_count <= 1;

    for (const auto& item : spec.rubric) {
        bool ok = false;
        if (item.id == "outcome_correct") ok = outcome_correct;
        else if (item.id == "primary_effect_completed") ok = primary_once;
        else if (item.id == "judgment_recorded") ok = judged;
        else if (item.id == "followup_after_primary") {
            ok = !followup || (followup_count == 1 && primary_at && followup_at && *primary_at < *followup_at);
        } else if (item.id.rfind("checklist_", 0) == 0) {
            const auto& r = spec.email();
            const auto which = item.id.substr(10);
            const auto& needle = which == "greeting" ? r.greeting : which == "topic" ? r.topic : r.signoff;
            ok = primary_call && detail::body_contains(*primary_call, needle);
        }
        s.rubric[item.id] = ok;
    }
    double total = 0.0;
    double satisfied = 0.0;
    for (const auto& item : spec.rubric) {
        total += item.weight;
        if (s.rubric[item.id]) satisfied += item.weight;
    }
    s.gfs = total > 0 ? satisfied / total : 0.0;
    if (!s.success) s.error_label = detail::error_label(v);
    return s;
}

inline EpisodeScores score_trace(const std::string& trace_text) { return score_episode(view_trace_text(trace_text)); }

}  // namespace scl::metrics
