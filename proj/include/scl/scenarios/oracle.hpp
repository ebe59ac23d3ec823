#pragma once

#include "scl/scenarios/episode.hpp"
#include "scl/scenarios/outcome.hpp"

namespace scl::scenarios {

/// Expected outcome of an episode, computed by evaluating its rule list
/// directly over the hidden ground truth. This is the reference that task
/// success is scored against; it never looks at observations.
inline Outcome oracle_outcome(const EpisodeSpec& spec) {
    const auto temp = [&](const std::string& city) {
        auto it = spec.truth.temps_f.find(city);
        if (it == spec.truth.temps_f.end()) throw ConfigError("no ground truth temperature for " + city);
        return it->second;
    };
    switch (spec.scenario) {
        case Scenario::A: {
            const auto& r = spec.travel();
            if (r.form == TravelRules::Form::chain) {
                for (const auto& check : r.checks) {
                    if (temp(check.city) > check.threshold_f) return {OutcomeKind::city, check.city};
                }
                if (r.default_city) return {OutcomeKind::city, *r.default_city};
                return {OutcomeKind::home, {}};
            }
            std::vector<std::string> hot;
            for (const auto& check : r.checks) {
                if (temp(check.city) > check.threshold_f) hot.push_back(check.city);
            }
            if (hot.empty()) return {OutcomeKind::home, {}};
            for (const auto& city : hot) {
                if (city == r.prefer) return {OutcomeKind::city, city};
            }
            return {OutcomeKind::city, hot.front()};
        }
        case Scenario::B: {
            const auto& r = spec.email();
            if (spec.truth.contacts.contains(r.recipient)) return {OutcomeKind::send, r.recipient};
            return {OutcomeKind::withhold, r.recipient};
        }
        case Scenario::C: {
            const auto& r = spec.image();
            bool all_above = true;
            for (const auto& input : r.score_inputs) {
                auto it = spec.truth.scores.find(input);
                if (it == spec.truth.scores.end()) throw ConfigError("no ground truth score for " + input);
                all_above = all_above && it->second > r.threshold;
            }
            if (all_above) return {OutcomeKind::generate, r.subject};
            return {OutcomeKind::fallback, r.subject};
        }
    }
    throw ConfigError("unknown scenario");
}

}  // namespace scl::scenarios
