#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "scl/canonical.hpp"
#include "scl/error.hpp"
#include "scl/mem/mem_store.hpp"
#include "scl/tool_call.hpp"

namespace scl::action {

enum class Determinism { deterministic, seeded_noisy };

struct ArgSpec {
    std::string name;
    std::string type = "string";  // string | integer
};

class ToolEnvironment;

struct ToolResult {
    enum class Outcome { ok, failed };
    ToolCall call;
    Outcome outcome = Outcome::failed;
    json value = json::object();
    int attempts = 0;
    std::vector<int> backoff_ms;
    std::string error;

    [[nodiscard]] bool ok() const noexcept { return outcome == Outcome::ok; }
};

inline json to_json(const ToolResult& r) {
    json j{{"call", scl::to_json(r.call)},
           {"outcome", r.ok() ? "ok" : "failed"},
           {"value", r.value},
           {"attempts", r.attempts},
           {"backoff_ms", r.backoff_ms}};
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

inline ToolResult tool_result_from_json(const json& j) {
    ToolResult r;
    r.call = tool_call_from_json(j.at("call"));
    r.outcome = j.at("outcome").get<std::string>() == "ok" ? ToolResult::Outcome::ok : ToolResult::Outcome::failed;
    r.value = j.at("value");
    r.attempts = j.at("attempts").get<int>();
    r.backoff_ms = j.value("backoff_ms", std::vector<int>{});
    r.error = j.value("error", std::string{});
    return r;
}

/// What a single attempt of a tool returns: a value, or a failure that is
/// either permanent or worth retrying.
struct Attempt {
    bool ok = false;
    json value = json::object();
    std::string error;
    bool transient = false;
};

using ToolFn = std::function<Attempt(const ToolCall&, ToolEnvironment&)>;

struct ToolSpec {
    std::string name;
    std::vector<ArgSpec> args;
    std::vector<std::string> result_fields;
    Determinism determinism = Determinism::deterministic;
    std::vector<std::string> failure_modes;
    ToolFn fn;
};

inline json schema_json(const ToolSpec& s) {
    json args = json::array();
    for (const auto& a : s.args) args.push_back(json{{"name", a.name}, {"type", a.type}});
    return json{{"name", s.name},
                {"args", args},
                {"result", s.result_fields},
                {"determinism", s.determinism == Determinism::deterministic ? "deterministic" : "seeded_noisy"},
                {"failure_modes", s.failure_modes}};
}

/// Returns an empty string when `call` satisfies the schema, else the reason.
inline std::string validate_args(const ToolSpec& spec, const ToolCall& call) {
    if (!call.args.is_array()) return "args must be a list";
    if (call.args.size() != spec.args.size()) {
        return spec.name + " takes " + std::to_string(spec.args.size()) + " argument(s), got " +
               std::to_string(call.args.size());
    }
    for (std::size_t i = 0; i < spec.args.size(); ++i) {
        const auto& a = call.args[i];
        if (spec.args[i].type == "string") {
            if (!a.is_string() || a.get<std::string>().empty()) return "argument '" + spec.args[i].name + "' must be a non-empty string";
        } else if (spec.args[i].type == "integer") {
            if (!a.is_number_integer()) return "argument '" + spec.args[i].name + "' must be an integer";
        }
    }
    return {};
}

/// Tool registry shared read-only by every episode once built.
class ToolRegistry {
public:
    ToolRegistry() = default;
    explicit ToolRegistry(mem::LongTermMemory* ltm) : ltm_(ltm) {}

    void register_tool(ToolSpec spec) {
        if (spec.name.empty()) throw ValidationError("tool needs a name");
        if (tools_.contains(spec.name)) throw ConfigError("tool '" + spec.name + "' is already registered");
        if (ltm_) ltm_->put_tool_schema(spec.name, schema_json(spec));
        auto name = spec.name;
        tools_.emplace(std::move(name), std::move(spec));
    }

    [[nodiscard]] bool contains(const std::string& name) const { return tools_.contains(name); }

    [[nodiscard]] const ToolSpec& at(const std::string& name) const {
        auto it = tools_.find(name);
        if (it == tools_.end()) throw ConfigError("unknown tool '" + name + "'");
        return it->second;
    }

    [[nodiscard]] std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto& [n, _] : tools_) out.push_back(n);
        return out;
    }

private:
    std::map<std::string, ToolSpec> tools_;
    mem::LongTermMemory* ltm_ = nullptr;
};

}  // namespace scl::action
