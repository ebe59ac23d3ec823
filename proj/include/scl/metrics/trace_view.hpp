#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scl/action/tool.hpp"
#include "scl/control/decision.hpp"
#include "scl/control/dedup.hpp"
#include "scl/loop/trace.hpp"
#include "scl/mem/episode_memory.hpp"
#include "scl/scenarios/episode.hpp"

namespace scl::metrics {

/// One executed call as seen in the trace.
struct ActRecord {
    std::size_t index = 0;  // event index
    std::uint32_t cycle = 0;
    ToolCall call;
    bool ok = false;
    int attempts = 0;
    std::int64_t epoch = 0;

    [[nodiscard]] control::DedupKey key() const { return control::make_dedup_key(call, epoch); }
};

/// A decide event with the memory state Control saw.
struct DecideRecord {
    std::size_t index = 0;
    std::uint32_t cycle = 0;
    std::string source;  // proposal | pending
    control::Decision decision;
    /// Proposal behind a `proposal` decision.
    std::optional<json> proposal;
    mem::StateView state;
};

struct ProposeRecord {
    std::size_t index = 0;
    std::uint32_t cycle = 0;
    json proposal;
    mem::StateView state;  // state the proposal was made from
};

/// Parsed view of a verified trace, with the folded memory state at each
/// propose and decide event.
struct TraceView {
    std::string episode_id;
    json init;
    scenarios::EpisodeSpec spec;
    std::vector<ProposeRecord> proposals;
    std::vector<DecideRecord> decisions;
    std::vector<ActRecord> acts;
    mem::StateView final_state;
    json outcome;
    std::vector<loop::TraceEvent> events;
};

inline TraceView view_trace(std::vector<loop::TraceEvent> events) {
    TraceView v;
    if (events.empty() || events.front().phase != loop::Phase::init) throw ValidationError("trace does not start with init");
    v.episode_id = events.front().episode_id;
    v.init = events.front().payload;
    v.spec = scenarios::spec_from_json(v.init.at("spec"));
    mem::EpisodeMemory memory(v.episode_id, mem::store_mode_from_json(v.init.at("store_mode")));
    const json* last_proposal = nullptr;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& e = events[i];
        switch (e.phase) {
            case loop::Phase::mem_write: memory.write(mem::record_from_json(e.payload.at("record"))); break;
            case loop::Phase::propose:
                v.proposals.push_back({i, e.cycle, e.payload.at("proposal"), memory.state()});
                last_proposal = &e.payload.at("proposal");
                break;
            case loop::Phase::decide: {
                DecideRecord d{i, e.cycle, e.payload.at("source").get<std::string>(),
                               control::decision_from_json(e.payload.at("decision")), std::nullopt, memory.state()};
                if (d.source == "proposal" && last_proposal) d.proposal = *last_proposal;
                v.decisions.push_back(std::move(d));
                break;
            }
            case loop::Phase::act: {
                const auto r = action::tool_result_from_json(e.payload.at("result"));
                v.acts.push_back({i, e.cycle, r.call, r.ok(), r.attempts, e.payload.at("epoch").get<std::int64_t>()});
                break;
            }
            case loop::Phase::terminate: v.outcome = e.payload.at("outcome"); break;
            default: break;
        }
    }
    v.final_state = memory.state();
    v.events = std::move(events);
    return v;
}

inline TraceView view_trace_text(const std::string& text) { return view_trace(loop::verify_trace(text)); }

}  // namespace scl::metrics
