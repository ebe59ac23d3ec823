#pragma once

#include "scl/action/environment.hpp"
#include "scl/action/tool.hpp"

namespace scl::action {

namespace detail {

inline Attempt ok(json value) { return Attempt{true, std::move(value), {}, false}; }
inline Attempt fail(std::string error) { return Attempt{false, json::object(), std::move(error), false}; }
inline std::string arg(const ToolCall& c, std::size_t i) { return c.args.at(i).get<std::string>(); }

}  // namespace detail

inline ToolSpec get_weather_tool() {
    return {"get_weather", {{"city"}}, {"temp_f"}, Determinism::seeded_noisy, {"unknown_city"},
            [](const ToolCall& c, ToolEnvironment& env) {
                const auto city = detail::arg(c, 0);
                const auto& temps = env.spec().truth.temps_f;
                auto it = temps.find(city);
                if (it == temps.end()) return detail::fail("no weather data for '" + city + "'");
                const auto [lo, hi] = integer_noise_range(env.spec().noise_bound);
                const auto noise = env.noise().uniform_int(lo, hi);
                return detail::ok(json{{"temp_f", it->second + noise}});
            }};
}

inline ToolSpec lookup_contact_tool() {
    return {"lookup_contact", {{"name"}}, {"found", "address"}, Determinism::deterministic, {},
            [](const ToolCall& c, ToolEnvironment& env) {
                const auto name = detail::arg(c, 0);
                const auto& contacts = env.spec().truth.contacts;
                auto it = contacts.find(name);
                if (it == contacts.end()) return detail::ok(json{{"found", false}, {"address", nullptr}});
                env.mark_resolved(name);
                return detail::ok(json{{"found", true}, {"address", it->second}});
            }};
}

inline ToolSpec send_email_tool() {
    return {"send_email", {{"recipient"}, {"body"}}, {"receipt"}, Determinism::deterministic, {"unresolved_recipient"},
            [](const ToolCall& c, ToolEnvironment& env) {
                const auto to = detail::arg(c, 0);
                if (!env.resolved(to)) return detail::fail("recipient '" + to + "' was not resolved");
                return detail::ok(json{{"receipt", env.next_handle("send_email")}});
            }};
}

inline ToolSpec draft_note_tool() {
    return {"draft_note", {{"requester"}, {"body"}}, {"handle"}, Determinism::deterministic, {},
            [](const ToolCall&, ToolEnvironment& env) { return detail::ok(json{{"handle", env.next_handle("draft_note")}}); }};
}

inline ToolSpec book_flight_tool() {
    return {"book_flight", {{"city"}}, {"confirmation"}, Determinism::deterministic, {},
            [](const ToolCall& c, ToolEnvironment& env) {
                return detail::ok(json{{"confirmation", env.confirmation_code(detail::arg(c, 0))}});
            }};
}

inline ToolSpec generate_image_tool() {
    return {"generate_image", {{"subject"}}, {"handle"}, Determinism::deterministic, {},
            [](const ToolCall&, ToolEnvironment& env) { return detail::ok(json{{"handle", env.next_handle("generate_image")}}); }};
}

inline ToolSpec draw_weather_tool() {
    return {"draw_weather", {{"city"}}, {"handle"}, Determinism::deterministic, {},
            [](const ToolCall&, ToolEnvironment& env) { return detail::ok(json{{"handle", env.next_handle("draw_weather")}}); }};
}

inline ToolSpec compute_score_tool() {
    return {"compute_score", {{"input"}}, {"value"}, Determinism::deterministic, {"unknown_input"},
            [](const ToolCall& c, ToolEnvironment& env) {
                const auto input = detail::arg(c, 0);
                const auto& scores = env.spec().truth.scores;
                auto it = scores.find(input);
                if (it == scores.end()) return detail::fail("no score input '" + input + "'");
                return detail::ok(json{{"value", it->second}});
            }};
}

inline void register_builtin_tools(ToolRegistry& registry) {
    for (auto spec : {get_weather_tool(), lookup_contact_tool(), send_email_tool(), draft_note_tool(), book_flight_tool(),
                      generate_image_tool(), draw_weather_tool(), compute_score_tool()}) {
        registry.register_tool(std::move(spec));
    }
}

inline ToolRegistry builtin_registry(mem::LongTermMemory* ltm = nullptr) {
    ToolRegistry registry(ltm);
    register_builtin_tools(registry);
    return registry;
}

}  // namespace scl::action
