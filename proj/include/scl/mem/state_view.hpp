#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scl/mem/record.hpp"
#include "scl/termination.hpp"

namespace scl::mem {

/// Read-only projection of an episode's memory, as handed to Cognition
/// and Control each cycle. Only the latest record per path is visible.
struct StateView {
    std::string episode_id;
    std::string goal;
    json constraints = json::object();
    /// Keyed by the path below `obs`, e.g. "Miami" or "contact.Alice".
    std::map<std::string, MemRecord> observations;
    std::vector<MemRecord> judgments;
    std::vector<MemRecord> approved_actions;
    /// Deferred actions still open (no `status` yet).
    std::vector<MemRecord> pending;
    std::vector<MemRecord> notes;
    std::vector<MemRecord> failures;
    TerminationStatus termination;
    Timestamp now;

    /// Every visible record, keyed by canonical path.
    std::map<std::string, MemRecord> latest;

    /// Resolves a path to a value: the longest path prefix that names a
    /// record, then object keys / array indices into that record's value.
    [[nodiscard]] std::optional<json> resolve(const MemPath& path) const {
        for (std::size_t n = path.size(); n >= 1; --n) {
            auto it = latest.find(path.prefix(n).str());
            if (it == latest.end()) continue;
            const json* cur = &it->second.value;
            for (std::size_t i = n; i < path.size(); ++i) {
                const auto& seg = path.segments()[i];
                if (cur->is_object()) {
                    auto f = cur->find(seg);
                    if (f == cur->end()) return std::nullopt;
                    cur = &*f;
                } else if (cur->is_array() && !seg.empty() &&
                           std::all_of(seg.begin(), seg.end(), [](char c) { return c >= '0' && c <= '9'; })) {
                    const auto idx = std::stoul(seg);
                    if (idx >= cur->size()) return std::nullopt;
                    cur = &(*cur)[idx];
                } else {
                    return std::nullopt;
                }
            }
            return *cur;
        }
        return std::nullopt;
    }

    [[nodiscard]] const MemRecord* observation(const std::string& key) const {
        auto it = observations.find(key);
        return it == observations.end() ? nullptr : &it->second;
    }

    /// Shape of the compact MEM listing: goal, constraints, observations,
    /// judgments, approved_actions, pending, termination. Notes and
    /// failures appear only when present.
    [[nodiscard]] json to_json() const {
        json obs = json::object();
        for (const auto& [key, rec] : observations) {
            json entry = rec.value.is_object() ? rec.value : json{{"value", rec.value}};
            entry["source"] = rec.source;
            entry["t"] = rec.t.label();
            obs[key] = std::move(entry);
        }
        auto listing = [](const std::vector<MemRecord>& records) {
            json arr = json::array();
            for (const auto& r : records) {
                json entry = r.value.is_object() ? r.value : json{{"value", r.value}};
                entry["t"] = r.t.label();
                arr.push_back(std::move(entry));
            }
            return arr;
        };
        json pend = json::array();
        for (const auto& r : pending) {
            pend.push_back(json{{"t", r.t.label()}, {"name", r.value.at("name")}, {"args", r.value.at("args")}});
        }
        json j{{"goal", goal},
               {"constraints", constraints},
               {"observations", obs},
               {"judgments", listing(judgments)},
               {"approved_actions", listing(approved_actions)},
               {"pending", pend},
               {"termination", scl::to_json(termination)}};
        if (!notes.empty()) j["notes"] = listing(notes);
        if (!failures.empty()) j["failures"] = listing(failures);
        return j;
    }
};

}  // namespace scl::mem
