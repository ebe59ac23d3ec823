#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "scl/loop/trace.hpp"
#include "scl/mem/episode_memory.hpp"

namespace scl::loop {

struct ReplayResult {
    mem::MemSnapshot snapshot;
    std::string recorded_hash;

    [[nodiscard]] bool matches() const { return snapshot.content_hash == recorded_hash; }
};

/// Folds the mem_write events of `events[0, end)` into a fresh episode
/// memory with the store mode the run used. No tool is invoked.
inline mem::EpisodeMemory fold_writes(const std::vector<TraceEvent>& events, std::size_t end) {
    if (events.empty() || events.front().phase != Phase::init) throw ValidationError("trace does not start with init");
    const auto& init = events.front();
    mem::EpisodeMemory memory(init.episode_id, mem::store_mode_from_json(init.payload.at("store_mode")));
    for (std::size_t i = 0; i < end && i < events.size(); ++i) {
        if (events[i].phase == Phase::mem_write) memory.write(mem::record_from_json(events[i].payload.at("record")));
    }
    return memory;
}

/// Memory as it stood just before event `index` (i.e. after all writes
/// that precede it).
inline mem::EpisodeMemory memory_before(const std::vector<TraceEvent>& events, std::size_t index) {
    return fold_writes(events, index);
}

/// Verifies the chain, then rebuilds the final snapshot from the write
/// events and pairs it with the hash the run recorded.
inline ReplayResult replay(const std::string& trace_text) {
    const auto events = verify_trace(trace_text);
    const auto memory = fold_writes(events, events.size());
    const auto& last = events.back();
    ReplayResult r;
    r.snapshot = memory.snapshot(last.cycle);
    r.recorded_hash = last.payload.at("outcome").at("final_snapshot_hash").get<std::string>();
    return r;
}

}  // namespace scl::loop
