#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "scl/error.hpp"
#include "scl/mem/episode_memory.hpp"

namespace scl::mem {

/// Cross-episode store: tool schemas, archived episode summaries, and
/// read-only seed data (user preferences). Read-mostly.
class LongTermMemory {
public:
    void put_tool_schema(const std::string& name, json schema) {
        std::lock_guard lock(mutex_);
        tool_schemas_[name] = std::move(schema);
    }

    [[nodiscard]] std::optional<json> tool_schema(const std::string& name) const {
        std::lock_guard lock(mutex_);
        auto it = tool_schemas_.find(name);
        if (it == tool_schemas_.end()) return std::nullopt;
        return it->second;
    }

    void put_summary(const std::string& episode_id, json summary) {
        std::lock_guard lock(mutex_);
        summaries_[episode_id] = std::move(summary);
    }

    [[nodiscard]] std::optional<json> summary(const std::string& episode_id) const {
        std::lock_guard lock(mutex_);
        auto it = summaries_.find(episode_id);
        if (it == summaries_.end()) return std::nullopt;
        return it->second;
    }

    [[nodiscard]] json summaries() const {
        std::lock_guard lock(mutex_);
        json j = json::object();
        for (const auto& [k, v] : summaries_) j[k] = v;
        return j;
    }

    /// Seed data is fixed at construction of the store; nothing updates it.
    void seed_preferences(json prefs) {
        std::lock_guard lock(mutex_);
        preferences_ = std::move(prefs);
    }

    [[nodiscard]] json preferences() const {
        std::lock_guard lock(mutex_);
        return preferences_;
    }

private:
    mutable std::mutex mutex_;
    std::map<std::string, json> tool_schemas_;
    std::map<std::string, json> summaries_;
    json preferences_ = json::object();
};

/// Registry of live episode memories plus long-term memory and archive.
///
/// Each EpisodeMemory has a single writer; the registry itself is locked so
/// episodes can be opened and archived from parallel runners.
class MemStore {
public:
    MemStore() = default;

    /// Archived snapshots and an index.json are also written under `dir`.
    explicit MemStore(std::filesystem::path archive_dir) : archive_dir_(std::move(archive_dir)) {}

    EpisodeMemory& open(const std::string& episode_id, StoreMode mode = StoreMode::full_history()) {
        std::lock_guard lock(mutex_);
        if (active_.contains(episode_id) || archived_.contains(episode_id)) {
            throw LifecycleError("episode '" + episode_id + "' already exists");
        }
        auto [it, _] = active_.emplace(episode_id, std::make_unique<EpisodeMemory>(episode_id, mode));
        return *it->second;
    }

    /// Takes ownership of a memory built elsewhere (e.g. by a finished loop).
    EpisodeMemory& adopt(std::unique_ptr<EpisodeMemory> memory) {
        std::lock_guard lock(mutex_);
        const auto id = memory->episode_id();
        if (active_.contains(id) || archived_.contains(id)) {
            throw LifecycleError("episode '" + id + "' already exists");
        }
        auto [it, _] = active_.emplace(id, std::move(memory));
        return *it->second;
    }

    EpisodeMemory& episode(const std::string& episode_id) {
        std::lock_guard lock(mutex_);
        return locate(episode_id);
    }

    MemPath write(const std::string& episode_id, MemRecord record) {
        return episode(episode_id).write(std::move(record));
    }

    [[nodiscard]] std::optional<MemRecord> read(const std::string& episode_id, const MemPath& path) {
        std::lock_guard lock(mutex_);
        auto it = active_.find(episode_id);
        if (it == active_.end()) return std::nullopt;
        return it->second->read(path);
    }

    [[nodiscard]] StateView retrieve_state(const std::string& episode_id) {
        return episode(episode_id).state();
    }

    [[nodiscard]] MemSnapshot snapshot(const std::string& episode_id) {
        auto& ep = episode(episode_id);
        const auto cycle = ep.last_timestamp() ? ep.last_timestamp()->cycle : 0;
        return ep.snapshot(cycle);
    }

    /// Moves a terminated episode into the archive and returns its
    /// long-term summary: goal, termination, confirmation codes, artifact
    /// handles and final content hash.
    json archive(const std::string& episode_id) {
        std::unique_ptr<EpisodeMemory> ep;
        {
            std::lock_guard lock(mutex_);
            if (archived_.contains(episode_id)) {
                throw LifecycleError("episode '" + episode_id + "' is already archived");
            }
            auto it = active_.find(episode_id);
            if (it == active_.end()) throw UnknownEpisodeError("unknown episode '" + episode_id + "'");
            if (!it->second->terminated()) {
                throw LifecycleError("episode '" + episode_id + "' is still live");
            }
            ep = std::move(it->second);
            active_.erase(it);
        }
        const auto state = ep->state();
        const auto snap = ep->snapshot(ep->last_timestamp() ? ep->last_timestamp()->cycle : 0);
        json confirmations = json::array();
        json artifacts = json::array();
        for (const auto& a : state.approved_actions) {
            if (a.value.contains("confirmation")) confirmations.push_back(a.value.at("confirmation"));
            if (a.value.contains("handle")) artifacts.push_back(a.value.at("handle"));
            if (a.value.contains("receipt")) artifacts.push_back(a.value.at("receipt"));
        }
        json summary{{"episode_id", episode_id},
                     {"goal", state.goal},
                     {"termination", scl::to_json(state.termination)},
                     {"confirmations", confirmations},
                     {"artifacts", artifacts},
                     {"content_hash", snap.content_hash},
                     {"snapshot", snapshot_file_name(episode_id, snap.cycle)}};
        long_term_.put_summary(episode_id, summary);

        std::lock_guard lock(mutex_);
        if (archive_dir_) {
            std::filesystem::create_directories(*archive_dir_);
            std::ofstream(*archive_dir_ / snapshot_file_name(episode_id, snap.cycle), std::ios::binary) << serialize(snap);
            std::ofstream(*archive_dir_ / "index.json", std::ios::binary)
                << canonical_dump(long_term_.summaries()) << "\n";
        }
        archived_.emplace(episode_id, snap);
        return summary;
    }

    [[nodiscard]] std::optional<MemSnapshot> archived_snapshot(const std::string& episode_id) const {
        std::lock_guard lock(mutex_);
        auto it = archived_.find(episode_id);
        if (it == archived_.end()) return std::nullopt;
        return it->second;
    }

    [[nodiscard]] std::vector<std::string> active_episodes() const {
        std::lock_guard lock(mutex_);
        std::vector<std::string> ids;
        for (const auto& [id, _] : active_) ids.push_back(id);
        return ids;
    }

    LongTermMemory& long_term() noexcept { return long_term_; }
    const LongTermMemory& long_term() const noexcept { return long_term_; }

private:
    EpisodeMemory& locate(const std::string& episode_id) {
        auto it = active_.find(episode_id);
        if (it == active_.end()) throw UnknownEpisodeError("unknown episode '" + episode_id + "'");
        return *it->second;
    }

    mutable std::mutex mutex_;
    std::map<std::string, std::unique_ptr<EpisodeMemory>> active_;
    std::map<std::string, MemSnapshot> archived_;
    LongTermMemory long_term_;
    std::optional<std::filesystem::path> archive_dir_;
};

}  // namespace scl::mem
