#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <tuple>

#include "scl/mem/executed.hpp"
#include "scl/mem/state_view.hpp"
#include "scl/tool_call.hpp"

namespace scl::control {

struct DedupKey {
    std::string tool;
    std::string args;  // canonical serialization of the canonicalized args
    std::int64_t context_epoch = 0;

    friend auto operator<=>(const DedupKey&, const DedupKey&) = default;
};

inline DedupKey make_dedup_key(const ToolCall& call, std::int64_t epoch) {
    return DedupKey{call.tool, canonical_dump(canonical_args(call.args)), epoch};
}

inline json to_json(const DedupKey& k) {
    return json{{"tool", k.tool}, {"args", json::parse(k.args)}, {"context_epoch", k.context_epoch}};
}

/// Current context epoch: the highest epoch announced by a context-change
/// note, or 0 when there has been none.
inline std::int64_t context_epoch(const mem::StateView& state) {
    std::int64_t epoch = 0;
    for (const auto& n : state.notes) {
        if (n.value.value("type", std::string{}) == "context_change") {
            epoch = std::max(epoch, n.value.value("epoch", std::int64_t{0}));
        }
    }
    return epoch;
}

/// Keys of every executed call still visible in memory. The cache is
/// rebuilt from the state view each cycle, so it forgets exactly what
/// memory forgets.
class DedupCache {
public:
    static DedupCache from_state(const mem::StateView& state) {
        DedupCache cache;
        for (const auto& e : mem::executed_calls(state)) cache.insert(make_dedup_key(e.call, e.epoch));
        return cache;
    }

    void insert(const DedupKey& key) { keys_.insert(key); }
    [[nodiscard]] bool contains(const DedupKey& key) const { return keys_.contains(key); }
    [[nodiscard]] std::size_t size() const noexcept { return keys_.size(); }

private:
    std::set<DedupKey> keys_;
};

}  // namespace scl::control
