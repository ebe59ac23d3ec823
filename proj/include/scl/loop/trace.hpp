#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "scl/canonical.hpp"
#include "scl/error.hpp"
#include "scl/hash.hpp"

namespace scl::loop {

enum class Phase { init, retrieve, propose, decide, act, mem_write, snapshot, terminate };

inline std::string_view to_string(Phase p) {
    switch (p) {
        case Phase::init: return "init";
        case Phase::retrieve: return "retrieve";
        case Phase::propose: return "propose";
        case Phase::decide: return "decide";
        case Phase::act: return "act";
        case Phase::mem_write: return "mem_write";
        case Phase::snapshot: return "snapshot";
        case Phase::terminate: return "terminate";
    }
    return "?";
}

inline Phase phase_from_string(std::string_view s) {
    for (auto p : {Phase::init, Phase::retrieve, Phase::propose, Phase::decide, Phase::act, Phase::mem_write,
                   Phase::snapshot, Phase::terminate}) {
        if (to_string(p) == s) return p;
    }
    throw ValidationError("unknown trace phase '" + std::string(s) + "'");
}

inline const std::string kGenesisHash(64, '0');

struct TraceEvent {
    std::uint64_t seq = 0;
    std::string episode_id;
    std::uint32_t cycle = 0;
    Phase phase = Phase::init;
    json payload = json::object();
    std::string prev_hash;
    std::string hash;
};

inline std::string event_hash(const TraceEvent& e) {
    return sha256_hex(canonical_dump(json{{"seq", e.seq},
                                          {"episode_id", e.episode_id},
                                          {"cycle", e.cycle},
                                          {"phase", std::string(to_string(e.phase))},
                                          {"payload", e.payload},
                                          {"prev_hash", e.prev_hash}}));
}

inline json to_json(const TraceEvent& e) {
    return json{{"seq", e.seq},
                {"episode_id", e.episode_id},
                {"cycle", e.cycle},
                {"phase", std::string(to_string(e.phase))},
                {"payload", e.payload},
                {"prev_hash", e.prev_hash},
                {"hash", e.hash}};
}

inline std::string to_line(const TraceEvent& e) { return canonical_dump(to_json(e)); }

inline TraceEvent event_from_json(const json& j) {
    TraceEvent e;
    e.seq = j.at("seq").get<std::uint64_t>();
    e.episode_id = j.at("episode_id").get<std::string>();
    e.cycle = j.at("cycle").get<std::uint32_t>();
    e.phase = phase_from_string(j.at("phase").get<std::string>());
    e.payload = j.at("payload");
    e.prev_hash = j.at("prev_hash").get<std::string>();
    e.hash = j.at("hash").get<std::string>();
    return e;
}

/// Append-only, hash-chained event log of one episode.
class Trace {
public:
    explicit Trace(std::string episode_id) : episode_id_(std::move(episode_id)) {}

    const TraceEvent& append(std::uint32_t cycle, Phase phase, json payload) {
        TraceEvent e;
        e.seq = events_.size();
        e.episode_id = episode_id_;
        e.cycle = cycle;
        e.phase = phase;
        e.payload = std::move(payload);
        e.prev_hash = events_.empty() ? kGenesisHash : events_.back().hash;
        e.hash = event_hash(e);
        events_.push_back(std::move(e));
        return events_.back();
    }

    [[nodiscard]] const std::vector<TraceEvent>& events() const noexcept { return events_; }
    [[nodiscard]] const std::string& episode_id() const noexcept { return episode_id_; }

    [[nodiscard]] std::string str() const {
        std::string out;
        for (const auto& e : events_) {
            out += to_line(e);
            out += '\n';
        }
        return out;
    }

private:
    std::string episode_id_;
    std::vector<TraceEvent> events_;
};

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

/// Checks canonical form, sequence numbers, and the hash chain, and that
/// the log ends with its terminate event. Throws TamperError naming the
/// first bad line; returns the parsed events otherwise.
inline std::vector<TraceEvent> verify_trace(const std::string& text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw TamperError("trace is empty", 0);
    std::vector<TraceEvent> events;
    std::string prev = kGenesisHash;
    std::string episode;
    auto bad = [](std::size_t i, const std::string& what) {
        std::string msg = "event " + std::to_string(i) + " " + what;
        msg += i == 0 ? " (no good events)" : " (last good event: " + std::to_string(i - 1) + ")";
        return TamperError(msg, static_cast<long long>(i));
    };
    for (std::size_t i = 0; i < lines.size(); ++i) {
        TraceEvent e;
        try {
            const auto j = json::parse(lines[i]);
            if (canonical_dump(j) != lines[i]) throw bad(i, "is not canonical");
            e = event_from_json(j);
        } catch (const TamperError&) {
            throw;
        } catch (const std::exception& ex) {
            throw bad(i, std::string("does not parse: ") + ex.what());
        }
        if (e.seq != i) throw bad(i, "has sequence " + std::to_string(e.seq));
        if (i == 0) episode = e.episode_id;
        if (e.episode_id != episode) throw bad(i, "belongs to another episode");
        if (e.prev_hash != prev) throw bad(i, "breaks the hash chain");
        if (event_hash(e) != e.hash) throw bad(i, "hash mismatch");
        prev = e.hash;
        events.push_back(std::move(e));
    }
    if (events.back().phase != Phase::terminate) {
        const auto last = static_cast<long long>(events.size()) - 1;
        throw TamperError("trace is truncated; last good event is " + std::to_string(last), last);
    }
    return events;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace scl::loop
