#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scl/scenarios/episode.hpp"
#include "scl/tool_call.hpp"

namespace scl::scenarios {

enum class OutcomeKind { city, home, send, withhold, generate, fallback };

inline std::string_view to_string(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::city: return "city";
        case OutcomeKind::home: return "home";
        case OutcomeKind::send: return "send";
        case OutcomeKind::withhold: return "withhold";
        case OutcomeKind::generate: return "generate";
        case OutcomeKind::fallback: return "fallback";
    }
    return "?";
}

/// What an episode should end with: the branch taken and its target
/// (destination city, recipient, image subject).
struct Outcome {
    OutcomeKind kind = OutcomeKind::home;
    std::string target;

    friend bool operator==(const Outcome&, const Outcome&) = default;
};

inline json to_json(const Outcome& o) { return json{{"kind", std::string(to_string(o.kind))}, {"target", o.target}}; }

/// A side-effect call identified by its leading (key) arguments; free-text
/// arguments such as message bodies are not part of the identity.
struct Effect {
    ToolCall call;
    json key_args = json::array();

    [[nodiscard]] bool matches(const ToolCall& c) const { return c.matches(call.tool, key_args); }
};

/// Side effects an outcome requires (`primary`) and permits (`followup`).
struct EffectPlan {
    std::optional<Effect> primary;
    std::optional<Effect> followup;
};

inline bool is_side_effect_tool(const std::string& tool) {
    return tool == "book_flight" || tool == "send_email" || tool == "draft_note" || tool == "generate_image" ||
           tool == "draw_weather";
}

inline std::string compose_email_body(const EmailRules& r) {
    return r.greeting + " " + r.recipient + ",\n\nA short update on the " + r.topic + ".\n\n" + r.signoff + ",\n" +
           r.requester;
}

inline std::string compose_withheld_note(const EmailRules& r) {
    return r.greeting + " " + r.requester + ",\n\n" + r.recipient + " was not found in the contact store, so the " +
           r.topic + " email was not sent.\n\n" + r.signoff;
}

inline EffectPlan plan_effects(const EpisodeSpec& spec, const Outcome& outcome) {
    EffectPlan plan;
    auto effect = [](std::string tool, json args, std::size_t key_count) {
        Effect e{ToolCall{std::move(tool), args}, json::array()};
        for (std::size_t i = 0; i < key_count && i < args.size(); ++i) e.key_args.push_back(args[i]);
        return e;
    };
    switch (outcome.kind) {
        case OutcomeKind::city:
            plan.primary = effect("book_flight", json::array({outcome.target}), 1);
            if (spec.scenario == Scenario::A && spec.travel().draw_followup) {
                plan.followup = effect("draw_weather", json::array({outcome.target}), 1);
            }
            break;
        case OutcomeKind::home: {
            const auto& r = spec.travel();
            plan.primary = effect("draft_note",
                                  json::array({r.requester, "Staying home: no destination met its temperature threshold."}), 1);
            break;
        }
        case OutcomeKind::send: {
            const auto& r = spec.email();
            plan.primary = effect("send_email", json::array({r.recipient, compose_email_body(r)}), 1);
            break;
        }
        case OutcomeKind::withhold: {
            const auto& r = spec.email();
            plan.primary = effect("draft_note", json::array({r.requester, compose_withheld_note(r)}), 1);
            break;
        }
        case OutcomeKind::generate:
            plan.primary = effect("generate_image", json::array({spec.image().subject}), 1);
            break;
        case OutcomeKind::fallback: {
            const auto& r = spec.image();
            if (r.fallback == ImageRules::Fallback::note) {
                plan.primary = effect("draft_note",
                                      json::array({r.requester, "The " + r.subject + " image was not generated: score not above " +
                                                                    std::to_string(r.threshold) + "."}),
                                      1);
            }
            break;
        }
    }
    return plan;
}

}  // namespace scl::scenarios
