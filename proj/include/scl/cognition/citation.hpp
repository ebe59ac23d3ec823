#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "scl/canonical.hpp"
#include "scl/error.hpp"
#include "scl/mem/path.hpp"
#include "scl/mem/state_view.hpp"

namespace scl::cognition {

enum class Comparator { ge, gt, le, lt, eq, exists };

inline std::string_view to_string(Comparator c) {
    switch (c) {
        case Comparator::ge: return ">=";
        case Comparator::gt: return ">";
        case Comparator::le: return "<=";
        case Comparator::lt: return "<";
        case Comparator::eq: return "==";
        case Comparator::exists: return " exists";
    }
    return "?";
}

/// Evidence assertion `path comparator literal`, e.g. `obs.Miami.temp_f>=77`,
/// `obs.Miami.temp_f=82` (same as `==`), or `goal exists`.
struct Citation {
    mem::MemPath path;
    Comparator op = Comparator::exists;
    json literal;

    static Citation parse(std::string_view text) {
        static constexpr std::string_view kExists = " exists";
        Citation c;
        if (text.size() > kExists.size() && text.substr(text.size() - kExists.size()) == kExists) {
            c.path = mem::MemPath::parse(text.substr(0, text.size() - kExists.size()));
            c.op = Comparator::exists;
            return c;
        }
        const auto pos = text.find_first_of("<>=");
        if (pos == std::string_view::npos || pos == 0) {
            throw ValidationError("citation has no comparator: '" + std::string(text) + "'");
        }
        std::size_t len = 1;
        const char first = text[pos];
        const bool two = pos + 1 < text.size() && text[pos + 1] == '=';
        if (first == '>') c.op = two ? Comparator::ge : Comparator::gt;
        else if (first == '<') c.op = two ? Comparator::le : Comparator::lt;
        else c.op = Comparator::eq;
        if (two) len = 2;
        c.path = mem::MemPath::parse(text.substr(0, pos));
        const auto lit = text.substr(pos + len);
        if (lit.empty()) throw ValidationError("citation has no literal: '" + std::string(text) + "'");
        c.literal = parse_literal(lit);
        return c;
    }

    [[nodiscard]] std::string str() const {
        if (op == Comparator::exists) return path.str() + " exists";
        return path.str() + std::string(to_string(op)) +
               (literal.is_string() ? literal.get<std::string>() : canonical_dump(literal));
    }

    /// Evaluates against memory. Absent paths make every comparator false.
    [[nodiscard]] bool holds(const mem::StateView& state) const {
        const auto value = state.resolve(path);
        if (!value) return false;
        return holds_for(*value);
    }

    [[nodiscard]] bool holds_for(const json& value) const {
        if (op == Comparator::exists) return true;
        if (op == Comparator::eq) {
            if (value.is_number() && literal.is_number()) return value.get<double>() == literal.get<double>();
            return value == literal;
        }
        if (!value.is_number() || !literal.is_number()) return false;
        const double lhs = value.get<double>();
        const double rhs = literal.get<double>();
        switch (op) {
            case Comparator::ge: return lhs >= rhs;
            case Comparator::gt: return lhs > rhs;
            case Comparator::le: return lhs <= rhs;
            case Comparator::lt: return lhs < rhs;
            default: return false;
        }
    }

private:
    static json parse_literal(std::string_view lit) {
        if (lit == "true") return true;
        if (lit == "false") return false;
        if (lit.size() >= 2 && lit.front() == '"' && lit.back() == '"') return std::string(lit.substr(1, lit.size() - 2));
        try {
            auto j = json::parse(lit);
            if (j.is_number()) return j;
        } catch (const json::exception&) {
        }
        return std::string(lit);
    }
};

inline bool is_parseable_citation(std::string_view text) {
    try {
        (void)Citation::parse(text);
        return true;
    } catch (const ValidationError&) {
        return false;
    }
}

}  // namespace scl::cognition
