#pragma once

#include <string>

#include "scl/scl.hpp"

namespace scl::testing {

// Two-city travel walkthrough: SF 68, Miami 82, one hot threshold of 77.
inline scenarios::EpisodeSpec walkthrough_spec() {
    scenarios::TravelRules r;
    r.form = scenarios::TravelRules::Form::compare;
    r.checks = {{"San Francisco", 77}, {"Miami", 77}};
    r.prefer = "Miami";
    r.draw_followup = true;
    auto spec = scenarios::travel_episode(r, {{"San Francisco", 68}, {"Miami", 82}});
    spec.truth.confirmations["Miami"] = "ABC123";
    return spec;
}

// SF > 77 else Miami > 82 else New York; SF 74, Miami 84.
inline scenarios::EpisodeSpec episode_a() {
    scenarios::TravelRules r;
    r.checks = {{"San Francisco", 77}, {"Miami", 82}};
    r.default_city = "New York";
    return scenarios::travel_episode(r, {{"San Francisco", 74}, {"Miami", 84}, {"New York", 70}});
}

// Miami > 82 else SF > 77 else New York; Miami 81, SF 78.
inline scenarios::EpisodeSpec episode_b() {
    scenarios::TravelRules r;
    r.checks = {{"Miami", 82}, {"San Francisco", 77}};
    r.default_city = "New York";
    return scenarios::travel_episode(r, {{"Miami", 81}, {"San Francisco", 78}, {"New York", 70}});
}

// Small helper for hand-built episode memories.
class MemBuilder {
public:
    explicit MemBuilder(const scenarios::EpisodeSpec& spec, mem::StoreMode mode = mem::StoreMode::full_history())
        : memory_(spec.id(), mode) {
        put(0, mem::RecordKind::goal, mem::MemPath({"goal"}), spec.goal);
        for (const auto& [k, v] : spec.constraints.items()) {
            put(0, mem::RecordKind::constraint, mem::MemPath({"constraints", k}), v);
        }
    }

    MemBuilder& put(std::uint32_t cycle, mem::RecordKind kind, mem::MemPath path, json value,
                    json tags = json::object(), std::string source = "test") {
        mem::MemRecord r;
        r.path = std::move(path);
        r.kind = kind;
        r.value = std::move(value);
        r.source = std::move(source);
        r.t = memory_.tick(cycle);
        r.tags = std::move(tags);
        memory_.write(std::move(r));
        return *this;
    }

    MemBuilder& weather(std::uint32_t cycle, const std::string& city, int temp_f, std::int64_t epoch = 0) {
        const ToolCall call{"get_weather", json::array({city})};
        return put(cycle, mem::RecordKind::observation, mem::MemPath({"obs", city}), json{{"city", city}, {"temp_f", temp_f}},
                   json{{"call", to_json(call)}, {"epoch", epoch}, {"unit", "f"}}, "get_weather");
    }

    MemBuilder& executed(std::uint32_t cycle, const std::string& tool, json args, json extra = json::object()) {
        json v{{"name", tool}, {"args", args}, {"status", "executed"}};
        for (const auto& [k, x] : extra.items()) v[k] = x;
        const auto n = memory_.next_index("approved_actions");
        return put(cycle, mem::RecordKind::approved_action, mem::MemPath({"approved_actions", std::to_string(n)}), v,
                   json{{"call", to_json(ToolCall{tool, args})}, {"epoch", 0}}, tool);
    }

    mem::EpisodeMemory& memory() { return memory_; }
    [[nodiscard]] mem::StateView state() const { return memory_.state(); }

private:
    mem::EpisodeMemory memory_;
};

inline std::vector<std::string> weather_calls(const loop::EpisodeRun& run) {
    std::vector<std::string> v;
    for (const auto& c : run.outcome.executed_calls) {
        if (c.at("tool") == "get_weather") v.push_back(c.at("args").at(0).get<std::string>());
    }
    return v;
}

}  // namespace scl::testing
