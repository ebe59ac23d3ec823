#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scl/error.hpp"
#include "scl/mem/record.hpp"
#include "scl/mem/snapshot.hpp"
#include "scl/mem/state_view.hpp"

namespace scl::mem {

/// How an episode store retains history.
///
/// `full` keeps every record ever written. `windowed` is the degraded store
/// used by the no-memory ablation: one slot per path (later writes replace
/// earlier ones) and only the `window` most recently written observation
/// paths stay readable.
struct StoreMode {
    enum class Kind { full, windowed } kind = Kind::full;
    std::size_t window = 2;

    static StoreMode full_history() { return {}; }
    static StoreMode windowed_slots(std::size_t window) { return {Kind::windowed, window}; }

    [[nodiscard]] bool is_full() const noexcept { return kind == Kind::full; }

    friend bool operator==(const StoreMode&, const StoreMode&) = default;
};

inline json to_json(const StoreMode& m) {
    return json{{"kind", m.is_full() ? "full" : "windowed"}, {"window", m.window}};
}

inline StoreMode store_mode_from_json(const json& j) {
    StoreMode m;
    m.kind = j.at("kind").get<std::string>() == "full" ? StoreMode::Kind::full : StoreMode::Kind::windowed;
    m.window = j.at("window").get<std::size_t>();
    return m;
}

/// Memory of a single episode. Single writer: the episode's loop.
class EpisodeMemory {
public:
    using WriteObserver = std::function<void(const MemRecord&)>;

    explicit EpisodeMemory(std::string episode_id, StoreMode mode = StoreMode::full_history())
        : episode_id_(std::move(episode_id)), mode_(mode) {}

    [[nodiscard]] const std::string& episode_id() const noexcept { return episode_id_; }
    [[nodiscard]] const StoreMode& mode() const noexcept { return mode_; }

    /// Every accepted write is reported here (the loop forwards to the trace).
    void set_write_observer(WriteObserver observer) { observer_ = std::move(observer); }

    /// Next clock value for a write made during `cycle`.
    [[nodiscard]] Timestamp tick(std::uint32_t cycle) const {
        if (!last_) return Timestamp{cycle, 0};
        if (cycle > last_->cycle) return Timestamp{cycle, 0};
        return Timestamp{last_->cycle, last_->seq + 1};
    }

    [[nodiscard]] std::optional<Timestamp> last_timestamp() const { return last_; }

    MemPath write(MemRecord record) {
        check_kind_consistency(record);
        if (last_ && !(*last_ < record.t)) {
            throw OrderingError("non-monotonic write to '" + record.path.str() + "' at " + record.t.label() +
                                " (latest is " + last_->label() + ")");
        }
        last_ = record.t;
        const auto key = record.path.str();
        note_index(record.path);
        const bool observation = record.kind == RecordKind::observation;
        MemPath path = record.path;
        if (observer_) observer_(record);
        auto& slot = history_[key];
        if (mode_.is_full()) {
            slot.push_back(std::move(record));
        } else {
            slot.assign(1, std::move(record));
            if (observation) touch_observation(key);
        }
        return path;
    }

    /// Latest record at `path`; absence is a value.
    [[nodiscard]] std::optional<MemRecord> read(const MemPath& path) const {
        auto it = history_.find(path.str());
        if (it == history_.end() || it->second.empty()) return std::nullopt;
        return it->second.back();
    }

    /// Latest record at `path` with timestamp <= `at`.
    [[nodiscard]] std::optional<MemRecord> read_at(const MemPath& path, Timestamp at) const {
        auto it = history_.find(path.str());
        if (it == history_.end()) return std::nullopt;
        std::optional<MemRecord> found;
        for (const auto& r : it->second) {
            if (r.t <= at) found = r;
        }
        return found;
    }

    /// All retained records at `path`, oldest first.
    [[nodiscard]] std::vector<MemRecord> history(const MemPath& path) const {
        auto it = history_.find(path.str());
        return it == history_.end() ? std::vector<MemRecord>{} : it->second;
    }

    /// Next free integer child under `prefix` (e.g. judgments.N). Indices
    /// are never reused, even for slots a windowed store has dropped.
    [[nodiscard]] std::size_t next_index(const std::string& prefix) const {
        auto it = next_index_.find(prefix);
        return it == next_index_.end() ? 0 : it->second;
    }

    [[nodiscard]] StateView state() const {
        StateView v;
        v.episode_id = episode_id_;
        if (last_) v.now = *last_;
        std::map<std::size_t, MemRecord> judgments, actions, pending, notes, failures;
        for (const auto& [key, records] : history_) {
            if (records.empty()) continue;
            const auto& r = records.back();
            v.latest.emplace(key, r);
            const auto& segs = r.path.segments();
            switch (r.kind) {
                case RecordKind::goal:
                    v.goal = r.value.is_string() ? r.value.get<std::string>() : r.value.dump();
                    break;
                case RecordKind::constraint:
                    if (segs.size() >= 2) v.constraints[segs[1]] = r.value;
                    break;
                case RecordKind::observation:
                    if (segs.size() >= 2) v.observations.emplace(r.path.str().substr(4), r);
                    break;
                case RecordKind::termination:
                    v.termination = termination_from_json(r.value);
                    break;
                case RecordKind::judgment: judgments.emplace(index_of(r.path), r); break;
                case RecordKind::approved_action: actions.emplace(index_of(r.path), r); break;
                case RecordKind::pending_action:
                    if (!r.value.contains("status")) pending.emplace(index_of(r.path), r);
                    break;
                case RecordKind::note: notes.emplace(index_of(r.path), r); break;
                case RecordKind::failure_event: failures.emplace(index_of(r.path), r); break;
            }
        }
        auto flatten = [](std::map<std::size_t, MemRecord>& m, std::vector<MemRecord>& out) {
            for (auto& [_, r] : m) out.push_back(std::move(r));
        };
        flatten(judgments, v.judgments);
        flatten(actions, v.approved_actions);
        flatten(pending, v.pending);
        flatten(notes, v.notes);
        flatten(failures, v.failures);
        return v;
    }

    [[nodiscard]] std::vector<MemRecord> all_records() const {
        std::vector<MemRecord> out;
        for (const auto& [_, records] : history_) out.insert(out.end(), records.begin(), records.end());
        return out;
    }

    [[nodiscard]] MemSnapshot snapshot(std::uint32_t cycle) const {
        return make_snapshot(episode_id_, cycle, all_records());
    }

    /// True once a termination record with ready=true has been written.
    [[nodiscard]] bool terminated() const {
        auto r = read(MemPath({"termination"}));
        return r && r->value.value("ready", false);
    }

private:
    static std::size_t index_of(const MemPath& p) {
        if (p.size() < 2) return 0;
        try {
            return std::stoul(p.segments()[1]);
        } catch (const std::exception&) {
            return 0;
        }
    }

    void note_index(const MemPath& p) {
        if (p.size() < 2) return;
        const auto& seg = p.segments()[1];
        if (seg.empty() || !std::all_of(seg.begin(), seg.end(), [](char c) { return c >= '0' && c <= '9'; })) return;
        auto& next = next_index_[p.root()];
        next = std::max(next, std::stoul(seg) + 1);
    }

    void touch_observation(const std::string& key) {
        std::erase(obs_order_, key);
        obs_order_.push_back(key);
        while (obs_order_.size() > mode_.window) {
            history_.erase(obs_order_.front());
            obs_order_.pop_front();
        }
    }

    std::string episode_id_;
    StoreMode mode_;
    std::map<std::string, std::vector<MemRecord>> history_;
    std::map<std::string, std::size_t> next_index_;
    std::deque<std::string> obs_order_;
    std::optional<Timestamp> last_;
    WriteObserver observer_;
};

}  // namespace scl::mem
