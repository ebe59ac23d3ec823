#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "scl/canonical.hpp"
#include "scl/hash.hpp"
#include "scl/mem/record.hpp"

namespace scl::mem {

struct MemSnapshot {
    std::string episode_id;
    std::uint32_t cycle = 0;
    /// Sorted by (canonical path, timestamp).
    std::vector<MemRecord> records;
    std::string content_hash;

    friend bool operator==(const MemSnapshot&, const MemSnapshot&) = default;
};

inline json records_json(const std::vector<MemRecord>& records) {
    json arr = json::array();
    for (const auto& r : records) arr.push_back(to_json(r));
    return arr;
}

/// Hash over episode id and records; the cycle number is excluded so equal
/// content hashes equal regardless of when the snapshot was taken.
inline std::string content_hash_of(const std::string& episode_id, const std::vector<MemRecord>& records) {
    return sha256_hex(canonical_dump(json{{"episode_id", episode_id}, {"records", records_json(records)}}));
}

inline MemSnapshot make_snapshot(std::string episode_id, std::uint32_t cycle, std::vector<MemRecord> records) {
    std::sort(records.begin(), records.end(), [](const MemRecord& a, const MemRecord& b) {
        const auto pa = a.path.str();
        const auto pb = b.path.str();
        if (pa != pb) return pa < pb;
        return a.t < b.t;
    });
    MemSnapshot s{std::move(episode_id), cycle, std::move(records), {}};
    s.content_hash = content_hash_of(s.episode_id, s.records);
    return s;
}

/// Canonical snapshot file body, newline terminated.
inline std::string serialize(const MemSnapshot& s) {
    return canonical_dump(json{{"episode_id", s.episode_id},
                               {"cycle", s.cycle},
                               {"records", records_json(s.records)},
                               {"content_hash", s.content_hash}}) +
           "\n";
}

inline MemSnapshot deserialize_snapshot(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("snapshot is not valid JSON: ") + e.what());
    }
    MemSnapshot s;
    s.episode_id = j.at("episode_id").get<std::string>();
    s.cycle = j.at("cycle").get<std::uint32_t>();
    for (const auto& r : j.at("records")) s.records.push_back(record_from_json(r));
    s.content_hash = j.at("content_hash").get<std::string>();
    if (content_hash_of(s.episode_id, s.records) != s.content_hash) {
        throw ValidationError("snapshot content hash does not match its records");
    }
    return s;
}

inline std::string snapshot_file_name(const std::string& episode_id, std::uint32_t cycle) {
    return episode_id + ".cycle" + std::to_string(cycle) + ".snap";
}

}  // namespace scl::mem
