#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scl/mem/state_view.hpp"
#include "scl/scenarios/episode.hpp"
#include "scl/scenarios/outcome.hpp"

namespace scl::scenarios {

/// Where an episode stands when its rules are read against the observations
/// currently in memory (not the ground truth).
struct RuleProgress {
    bool complete = false;
    /// Queries still needed, in check order. Only the first is needed next
    /// unless `batch` is set, in which case all of them may be issued.
    std::vector<ToolCall> queries;
    bool batch = false;
    Outcome outcome;
    /// Minimal evidence for the outcome, in citation form.
    std::vector<std::string> because;
    /// `path=value` citations for every observation the outcome rests on.
    std::vector<std::string> evidence;
    std::string proposition;
};

namespace detail {

inline std::string weather_path(const std::string& city) { return "obs." + city + ".temp_f"; }
inline std::string contact_path(const std::string& name) { return "obs.contact." + name + ".found"; }
inline std::string score_path(const std::string& input) { return "obs.score." + input + ".value"; }

inline std::optional<int> observed_temp(const mem::StateView& s, const std::string& city) {
    const auto* rec = s.observation(city);
    if (!rec || !rec->value.contains("temp_f")) return std::nullopt;
    return rec->value.at("temp_f").get<int>();
}

inline std::string join(const std::vector<std::string>& items, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

inline RuleProgress travel_progress(const TravelRules& r, const mem::StateView& s) {
    RuleProgress p;
    const auto le = [](const std::string& city, int t) { return weather_path(city) + "<=" + std::to_string(t); };
    const auto gt = [](const std::string& city, int t) { return weather_path(city) + ">" + std::to_string(t); };
    const auto eq = [](const std::string& city, int v) { return weather_path(city) + "=" + std::to_string(v); };

    if (r.form == TravelRules::Form::chain) {
        std::vector<std::string> cold;
        for (const auto& check : r.checks) {
            const auto temp = observed_temp(s, check.city);
            if (!temp) {
                p.queries.push_back(ToolCall{"get_weather", json::array({check.city})});
                return p;
            }
            p.evidence.push_back(eq(check.city, *temp));
            if (*temp > check.threshold_f) {
                p.complete = true;
                p.outcome = {OutcomeKind::city, check.city};
                p.because.push_back(gt(check.city, check.threshold_f));
                p.proposition = check.city + " is above " + std::to_string(check.threshold_f) + "F";
                if (!cold.empty()) p.proposition += "; " + join(cold, ", ") + " not above threshold";
                return p;
            }
            p.because.push_back(le(check.city, check.threshold_f));
            cold.push_back(check.city);
        }
        p.complete = true;
        if (r.default_city) {
            p.outcome = {OutcomeKind::city, *r.default_city};
            p.proposition = "No checked city is above its threshold; default to " + *r.default_city;
        } else {
            p.outcome = {OutcomeKind::home, {}};
            p.proposition = "No checked city is above its threshold; stay home";
        }
        return p;
    }

    // compare: every city must be observed before deciding.
    std::vector<std::string> hot;
    std::map<std::string, int> temps;
    for (const auto& check : r.checks) {
        const auto temp = observed_temp(s, check.city);
        if (!temp) {
            p.queries.push_back(ToolCall{"get_weather", json::array({check.city})});
            continue;
        }
        temps[check.city] = *temp;
        if (*temp > check.threshold_f) hot.push_back(check.city);
    }
    if (!p.queries.empty()) {
        p.batch = true;
        return p;
    }
    p.complete = true;
    const auto threshold_of = [&](const std::string& city) {
        for (const auto& c : r.checks) {
            if (c.city == city) return c.threshold_f;
        }
        return 0;
    };
    if (hot.empty()) {
        p.outcome = {OutcomeKind::home, {}};
        for (const auto& c : r.checks) {
            p.because.push_back(le(c.city, c.threshold_f));
            p.evidence.push_back(eq(c.city, temps[c.city]));
        }
    } else if (std::find(hot.begin(), hot.end(), r.prefer) != hot.end()) {
        p.outcome = {OutcomeKind::city, r.prefer};
        p.because.push_back(gt(r.prefer, threshold_of(r.prefer)));
        p.evidence.push_back(eq(r.prefer, temps[r.prefer]));
    } else {
        const auto& pick = hot.front();
        p.outcome = {OutcomeKind::city, pick};
        std::size_t pick_index = 0;
        std::optional<std::size_t> prefer_index;
        for (std::size_t i = 0; i < r.checks.size(); ++i) {
            if (r.checks[i].city == pick) pick_index = i;
            if (r.checks[i].city == r.prefer) prefer_index = i;
        }
        for (std::size_t i = 0; i < pick_index; ++i) {
            p.because.push_back(le(r.checks[i].city, r.checks[i].threshold_f));
            p.evidence.push_back(eq(r.checks[i].city, temps[r.checks[i].city]));
        }
        if (prefer_index && *prefer_index > pick_index) {
            p.because.push_back(le(r.prefer, threshold_of(r.prefer)));
            p.evidence.push_back(eq(r.prefer, temps[r.prefer]));
        }
        p.because.push_back(gt(pick, threshold_of(pick)));
        p.evidence.push_back(eq(pick, temps[pick]));
    }
    if (r.checks.size() == 2) {
        const auto& a = r.checks[0].city;
        const auto& b = r.checks[1].city;
        if (hot.size() == 2) p.proposition = "Both " + a + " and " + b + " are hot";
        else if (hot.size() == 1) p.proposition = "Only " + hot.front() + " is hot";
        else p.proposition = "Neither " + a + " nor " + b + " is hot";
    } else {
        p.proposition = hot.empty() ? "No city is hot" : "Hot cities: " + join(hot, ", ");
    }
    return p;
}

inline RuleProgress email_progress(const EmailRules& r, const mem::StateView& s) {
    RuleProgress p;
    const auto* rec = s.observation("contact." + r.recipient);
    if (!rec) {
        p.queries.push_back(ToolCall{"lookup_contact", json::array({r.recipient})});
        return p;
    }
    p.complete = true;
    const bool found = rec->value.value("found", false);
    p.outcome = {found ? OutcomeKind::send : OutcomeKind::withhold, r.recipient};
    const auto cite = contact_path(r.recipient) + "==" + (found ? "true" : "false");
    p.because.push_back(cite);
    p.evidence.push_back(cite);
    p.proposition = r.recipient + (found ? " is in the contact store" : " is not in the contact store");
    return p;
}

inline RuleProgress image_progress(const ImageRules& r, const mem::StateView& s) {
    RuleProgress p;
    for (const auto& input : r.score_inputs) {
        const auto* rec = s.observation("score." + input);
        if (!rec) {
            p.queries.push_back(ToolCall{"compute_score", json::array({input})});
            return p;
        }
        const int value = rec->value.at("value").get<int>();
        p.evidence.push_back(score_path(input) + "=" + std::to_string(value));
        if (value <= r.threshold) {
            p.complete = true;
            p.outcome = {OutcomeKind::fallback, r.subject};
            p.because.push_back(score_path(input) + "<=" + std::to_string(r.threshold));
            p.proposition = "Score " + input + " is not above " + std::to_string(r.threshold);
            return p;
        }
        p.because.push_back(score_path(input) + ">" + std::to_string(r.threshold));
    }
    p.complete = true;
    p.outcome = {OutcomeKind::generate, r.subject};
    p.proposition = "All scores are above " + std::to_string(r.threshold);
    return p;
}

}  // namespace detail

inline RuleProgress rule_progress(const EpisodeSpec& spec, const mem::StateView& state) {
    switch (spec.scenario) {
        case Scenario::A: return detail::travel_progress(spec.travel(), state);
        case Scenario::B: return detail::email_progress(spec.email(), state);
        case Scenario::C: return detail::image_progress(spec.image(), state);
    }
    return {};
}

/// Visible approved-action record for an effect, if it was executed.
inline const mem::MemRecord* executed_effect(const mem::StateView& state, const Effect& effect) {
    for (const auto& a : state.approved_actions) {
        if (a.value.value("status", std::string{}) != "executed") continue;
        ToolCall c{a.value.at("name").get<std::string>(), a.value.at("args")};
        if (effect.matches(c)) return &a;
    }
    return nullptr;
}

/// Goal check used by Control: the rules resolve over observed state, the
/// required side effect has executed, no conflicting side effect has, and
/// nothing is left pending.
inline bool goal_met(const EpisodeSpec& spec, const mem::StateView& state) {
    const auto progress = rule_progress(spec, state);
    if (!progress.complete) return false;
    if (!state.pending.empty()) return false;
    const auto plan = plan_effects(spec, progress.outcome);
    if (plan.primary && !executed_effect(state, *plan.primary)) return false;
    for (const auto& a : state.approved_actions) {
        if (a.value.value("status", std::string{}) != "executed") continue;
        ToolCall c{a.value.at("name").get<std::string>(), a.value.at("args")};
        const bool allowed = (plan.primary && plan.primary->matches(c)) || (plan.followup && plan.followup->matches(c));
        if (!allowed) return false;
    }
    return true;
}

}  // namespace scl::scenarios
