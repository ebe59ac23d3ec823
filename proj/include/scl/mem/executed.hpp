#pragma once

#include <cstdint>
#include <vector>

#include "scl/mem/state_view.hpp"
#include "scl/tool_call.hpp"

namespace scl::mem {

/// A tool call whose result (or failure) is visible in memory, with the
/// context epoch it ran in.
struct ExecutedCall {
    ToolCall call;
    std::int64_t epoch = 0;
};

/// Executed calls recoverable from visible memory: observation records
/// carry their producing call in `tags.call`, approved actions carry
/// name/args in the value, failure events carry the call in `tags.call`.
/// Order: approved actions, failures, observations (by path).
inline std::vector<ExecutedCall> executed_calls(const StateView& state) {
    std::vector<ExecutedCall> out;
    auto epoch_of = [](const MemRecord& r) { return r.tags.value("epoch", std::int64_t{0}); };
    for (const auto& a : state.approved_actions) {
        const auto status = a.value.value("status", std::string{});
        if (status != "executed" && status != "failed") continue;
        out.push_back({ToolCall{a.value.at("name").get<std::string>(), a.value.at("args")}, epoch_of(a)});
    }
    for (const auto& f : state.failures) {
        if (f.tags.contains("call")) out.push_back({tool_call_from_json(f.tags.at("call")), epoch_of(f)});
    }
    for (const auto& [_, o] : state.observations) {
        if (o.tags.contains("call")) out.push_back({tool_call_from_json(o.tags.at("call")), epoch_of(o)});
    }
    return out;
}

}  // namespace scl::mem
