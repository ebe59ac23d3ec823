#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "scl/error.hpp"

namespace scl::mem {

/// Dot-separated address of a memory record, e.g. `obs.Miami.temp_f`.
///
/// The first segment is the namespace (`obs`, `judgments`, ...) and may
/// only hold `[A-Za-z0-9_]`. Later segments name entities or fields and
/// may additionally carry interior spaces and hyphens, so city names like
/// `San Francisco` address directly.
class MemPath {
public:
    MemPath() = default;

    explicit MemPath(std::vector<std::string> segments) : segments_(std::move(segments)) {
        validate();
    }

    static MemPath parse(std::string_view text) {
        std::vector<std::string> segments;
        std::size_t start = 0;
        while (true) {
            const auto dot = text.find('.', start);
            segments.emplace_back(text.substr(start, dot == std::string_view::npos ? dot : dot - start));
            if (dot == std::string_view::npos) break;
            start = dot + 1;
        }
        return MemPath(std::move(segments));
    }

    /// True when `text` parses as a path.
    static bool is_valid(std::string_view text) noexcept {
        try {
            (void)parse(text);
            return true;
        } catch (const ValidationError&) {
            return false;
        }
    }

    [[nodiscard]] const std::vector<std::string>& segments() const noexcept { return segments_; }
    [[nodiscard]] std::size_t size() const noexcept { return segments_.size(); }
    [[nodiscard]] bool empty() const noexcept { return segments_.empty(); }
    [[nodiscard]] const std::string& root() const { return segments_.front(); }

    [[nodiscard]] std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            if (i) out.push_back('.');
            out += segments_[i];
        }
        return out;
    }

    [[nodiscard]] MemPath child(std::string segment) const {
        auto segs = segments_;
        segs.push_back(std::move(segment));
        return MemPath(std::move(segs));
    }

    /// First `n` segments.
    [[nodiscard]] MemPath prefix(std::size_t n) const {
        return MemPath(std::vector<std::string>(segments_.begin(),
                                                segments_.begin() + static_cast<std::ptrdiff_t>(n)));
    }

    [[nodiscard]] bool starts_with(const MemPath& other) const {
        if (other.size() > size()) return false;
        for (std::size_t i = 0; i < other.size(); ++i) {
            if (segments_[i] != other.segments_[i]) return false;
        }
        return true;
    }

    friend bool operator==(const MemPath&, const MemPath&) = default;
    friend auto operator<=>(const MemPath& a, const MemPath& b) { return a.str() <=> b.str(); }

private:
    void validate() const {
        if (segments_.empty()) throw ValidationError("memory path has no segments");
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            const auto& seg = segments_[i];
            if (seg.empty()) throw ValidationError("memory path has an empty segment");
            const bool entity = i > 0;
            if (entity && (seg.front() == ' ' || seg.back() == ' ')) {
                throw ValidationError("memory path segment has leading or trailing space: '" + seg + "'");
            }
            for (char c : seg) {
                const bool word = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                                  (c >= '0' && c <= '9') || c == '_';
                if (word) continue;
                if (entity && (c == ' ' || c == '-')) continue;
                throw ValidationError("invalid character in memory path segment '" + seg + "'");
            }
        }
    }

    std::vector<std::string> segments_;
};

}  // namespace scl::mem
