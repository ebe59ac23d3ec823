#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "scl/canonical.hpp"
#include "scl/error.hpp"
#include "scl/mem/path.hpp"

namespace scl::mem {

enum class RecordKind {
    observation,
    judgment,
    approved_action,
    pending_action,
    failure_event,
    note,
    goal,
    constraint,
    termination,
};

struct KindInfo {
    RecordKind kind;
    std::string_view name;
    std::string_view root;  // required first path segment
};

inline constexpr std::array<KindInfo, 9> kKinds{{
    {RecordKind::observation, "observation", "obs"},
    {RecordKind::judgment, "judgment", "judgments"},
    {RecordKind::approved_action, "approved_action", "approved_actions"},
    {RecordKind::pending_action, "pending_action", "pending"},
    {RecordKind::failure_event, "failure_event", "failures"},
    {RecordKind::note, "note", "notes"},
    {RecordKind::goal, "goal", "goal"},
    {RecordKind::constraint, "constraint", "constraints"},
    {RecordKind::termination, "termination", "termination"},
}};

inline std::string_view to_string(RecordKind k) {
    for (const auto& info : kKinds) {
        if (info.kind == k) return info.name;
    }
    return "?";
}

inline std::string_view root_of(RecordKind k) {
    for (const auto& info : kKinds) {
        if (info.kind == k) return info.root;
    }
    return "?";
}

inline RecordKind kind_from_string(std::string_view s) {
    for (const auto& info : kKinds) {
        if (info.name == s) return info.kind;
    }
    throw ValidationError("unknown record kind '" + std::string(s) + "'");
}

/// Logical episode clock: loop cycle, then write order inside the cycle.
struct Timestamp {
    std::uint32_t cycle = 0;
    std::uint32_t seq = 0;

    friend auto operator<=>(const Timestamp&, const Timestamp&) = default;

    [[nodiscard]] std::string label() const {
        return std::to_string(cycle) + "." + std::to_string(seq);
    }
};

/// One typed fact, judgment, or action result.
///
/// `tags` carries machine metadata that is not part of the value itself:
/// the producing tool call, its context epoch, the unit tag for
/// temperatures.
struct MemRecord {
    MemPath path;
    RecordKind kind = RecordKind::note;
    json value;
    std::string source;
    Timestamp t;
    json tags = json::object();

    friend bool operator==(const MemRecord&, const MemRecord&) = default;
};

/// Throws unless the record's kind matches its path namespace.
inline void check_kind_consistency(const MemRecord& r) {
    if (r.path.empty()) throw ValidationError("record has an empty path");
    if (r.path.root() != root_of(r.kind)) {
        throw ValidationError("record kind '" + std::string(to_string(r.kind)) +
                              "' does not match path '" + r.path.str() + "'");
    }
}

inline json to_json(const MemRecord& r) {
    return json{{"path", r.path.str()},
                {"kind", std::string(to_string(r.kind))},
                {"value", r.value},
                {"source", r.source},
                {"t", json::array({r.t.cycle, r.t.seq})},
                {"tags", r.tags}};
}

inline MemRecord record_from_json(const json& j) {
    try {
        MemRecord r;
        r.path = MemPath::parse(j.at("path").get<std::string>());
        r.kind = kind_from_string(j.at("kind").get<std::string>());
        r.value = j.at("value");
        r.source = j.at("source").get<std::string>();
        const auto& t = j.at("t");
        r.t = Timestamp{t.at(0).get<std::uint32_t>(), t.at(1).get<std::uint32_t>()};
        r.tags = j.value("tags", json::object());
        check_kind_consistency(r);
        return r;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed memory record: ") + e.what());
    }
}

}  // namespace scl::mem
