#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scl/canonical.hpp"
#include "scl/error.hpp"
#include "scl/hash.hpp"

namespace scl::scenarios {

enum class Scenario { A, B, C };

inline char to_char(Scenario s) { return s == Scenario::A ? 'A' : s == Scenario::B ? 'B' : 'C'; }

inline Scenario scenario_from_char(char c) {
    switch (c) {
        case 'A': return Scenario::A;
        case 'B': return Scenario::B;
        case 'C': return Scenario::C;
        default: throw ValidationError(std::string("unknown scenario '") + c + "'");
    }
}

struct CityCheck {
    std::string city;
    int threshold_f = 0;

    friend bool operator==(const CityCheck&, const CityCheck&) = default;
};

/// Scenario A. A `chain` checks cities in order and picks the first one
/// strictly above its threshold, else the default city (or staying home).
/// A `compare` observes every listed city against one shared threshold and
/// picks the preferred city if hot, else the first hot city in list order,
/// else stays home; the chosen destination may get a follow-up drawing.
struct TravelRules {
    enum class Form { chain, compare };
    Form form = Form::chain;
    std::vector<CityCheck> checks;
    std::optional<std::string> default_city;
    std::string prefer;
    bool draw_followup = false;
    std::string requester = "requester";

    friend bool operator==(const TravelRules&, const TravelRules&) = default;
};

/// Scenario B: send only if the recipient resolves, otherwise note the
/// requester and stop.
struct EmailRules {
    std::string recipient;
    std::string requester = "requester";
    std::string topic;
    std::string greeting;
    std::string signoff;

    friend bool operator==(const EmailRules&, const EmailRules&) = default;
};

/// Scenario C: generate the image only when every score is strictly above
/// the threshold.
struct ImageRules {
    enum class Fallback { exit, note };
    std::vector<std::string> score_inputs;
    int threshold = 0;
    std::string subject;
    Fallback fallback = Fallback::exit;
    std::string requester = "requester";

    friend bool operator==(const ImageRules&, const ImageRules&) = default;
};

using Rules = std::variant<TravelRules, EmailRules, ImageRules>;

/// Hidden environment values, never visible to cognition directly.
struct GroundTruth {
    std::map<std::string, int> temps_f;
    std::map<std::string, std::string> contacts;  // name -> address
    std::map<std::string, int> scores;
    /// Fixed booking confirmation codes per city; unset cities get a
    /// seeded code.
    std::map<std::string, std::string> confirmations;

    friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

struct RubricItem {
    std::string id;
    std::string category;  // outcome | side_effect | format
    double weight = 0.0;

    friend bool operator==(const RubricItem&, const RubricItem&) = default;
};

struct EpisodeSpec {
    Scenario scenario = Scenario::A;
    int template_id = 0;
    std::uint64_t seed = 0;
    int city_count = 3;
    Rules rules;
    GroundTruth truth;
    std::vector<RubricItem> rubric;
    int budget = 20;
    double noise_bound = 1.0;
    std::string goal;
    json constraints = json::object();

    [[nodiscard]] std::string id() const {
        std::string out(1, to_char(scenario));
        if (scenario == Scenario::A && city_count != 3) out += std::to_string(city_count);
        out += "-t";
        if (template_id < 10) out += "0";
        out += std::to_string(template_id) + "-s" + std::to_string(seed);
        return out;
    }

    [[nodiscard]] const TravelRules& travel() const { return std::get<TravelRules>(rules); }
    [[nodiscard]] const EmailRules& email() const { return std::get<EmailRules>(rules); }
    [[nodiscard]] const ImageRules& image() const { return std::get<ImageRules>(rules); }

    friend bool operator==(const EpisodeSpec&, const EpisodeSpec&) = default;
};

inline json rules_to_json(const Rules& rules) {
    return std::visit(
        [](const auto& r) -> json {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, TravelRules>) {
                json checks = json::array();
                for (const auto& c : r.checks) checks.push_back(json{{"city", c.city}, {"threshold_f", c.threshold_f}});
                json j{{"type", "travel"},
                       {"form", r.form == TravelRules::Form::chain ? "chain" : "compare"},
                       {"checks", checks},
                       {"prefer", r.prefer},
                       {"draw_followup", r.draw_followup},
                       {"requester", r.requester}};
                j["default_city"] = r.default_city ? json(*r.default_city) : json(nullptr);
                return j;
            } else if constexpr (std::is_same_v<T, EmailRules>) {
                return json{{"type", "email"},     {"recipient", r.recipient}, {"requester", r.requester},
                            {"topic", r.topic},    {"greeting", r.greeting},   {"signoff", r.signoff}};
            } else {
                return json{{"type", "image"},
                            {"score_inputs", r.score_inputs},
                            {"threshold", r.threshold},
                            {"subject", r.subject},
                            {"fallback", r.fallback == ImageRules::Fallback::exit ? "exit" : "note"},
                            {"requester", r.requester}};
            }
        },
        rules);
}

inline Rules rules_from_json(const json& j) {
    const auto type = j.at("type").get<std::string>();
    if (type == "travel") {
        TravelRules r;
        r.form = j.at("form").get<std::string>() == "chain" ? TravelRules::Form::chain : TravelRules::Form::compare;
        for (const auto& c : j.at("checks")) r.checks.push_back({c.at("city").get<std::string>(), c.at("threshold_f").get<int>()});
        if (!j.at("default_city").is_null()) r.default_city = j.at("default_city").get<std::string>();
        r.prefer = j.at("prefer").get<std::string>();
        r.draw_followup = j.at("draw_followup").get<bool>();
        r.requester = j.at("requester").get<std::string>();
        return r;
    }
    if (type == "email") {
        return EmailRules{j.at("recipient").get<std::string>(), j.at("requester").get<std::string>(),
                          j.at("topic").get<std::string>(), j.at("greeting").get<std::string>(),
                          j.at("signoff").get<std::string>()};
    }
    if (type == "image") {
        ImageRules r;
        r.score_inputs = j.at("score_inputs").get<std::vector<std::string>>();
        r.threshold = j.at("threshold").get<int>();
        r.subject = j.at("subject").get<std::string>();
        r.fallback = j.at("fallback").get<std::string>() == "exit" ? ImageRules::Fallback::exit : ImageRules::Fallback::note;
        r.requester = j.at("requester").get<std::string>();
        return r;
    }
    throw ValidationError("unknown rules type '" + type + "'");
}

inline json to_json(const EpisodeSpec& s) {
    json rubric = json::array();
    for (const auto& item : s.rubric) rubric.push_back(json{{"id", item.id}, {"category", item.category}, {"weight", item.weight}});
    return json{{"scenario", std::string(1, to_char(s.scenario))},
                {"template_id", s.template_id},
                {"seed", s.seed},
                {"city_count", s.city_count},
                {"rules", rules_to_json(s.rules)},
                {"truth",
                 {{"temps_f", s.truth.temps_f},
                  {"contacts", s.truth.contacts},
                  {"scores", s.truth.scores},
                  {"confirmations", s.truth.confirmations}}},
                {"rubric", rubric},
                {"budget", s.budget},
                {"noise_bound", s.noise_bound},
                {"goal", s.goal},
                {"constraints", s.constraints}};
}

inline EpisodeSpec spec_from_json(const json& j) {
    try {
        EpisodeSpec s;
        s.scenario = scenario_from_char(j.at("scenario").get<std::string>().at(0));
        s.template_id = j.at("template_id").get<int>();
        s.seed = j.at("seed").get<std::uint64_t>();
        s.city_count = j.at("city_count").get<int>();
        s.rules = rules_from_json(j.at("rules"));
        const auto& t = j.at("truth");
        s.truth.temps_f = t.at("temps_f").get<std::map<std::string, int>>();
        s.truth.contacts = t.at("contacts").get<std::map<std::string, std::string>>();
        s.truth.scores = t.at("scores").get<std::map<std::string, int>>();
        s.truth.confirmations = t.at("confirmations").get<std::map<std::string, std::string>>();
        for (const auto& item : j.at("rubric")) {
            s.rubric.push_back({item.at("id").get<std::string>(), item.at("category").get<std::string>(),
                                item.at("weight").get<double>()});
        }
        s.budget = j.at("budget").get<int>();
        s.noise_bound = j.at("noise_bound").get<double>();
        s.goal = j.at("goal").get<std::string>();
        s.constraints = j.at("constraints");
        return s;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed episode spec: ") + e.what());
    }
}

inline std::string spec_hash(const EpisodeSpec& s) { return sha256_hex(canonical_dump(to_json(s))); }

/// Every tool the episode's instruction can lead to.
inline std::vector<std::string> referenced_tools(const EpisodeSpec& s) {
    switch (s.scenario) {
        case Scenario::A: {
            std::vector<std::string> tools{"get_weather", "book_flight", "draft_note"};
            if (s.travel().draw_followup) tools.push_back("draw_weather");
            return tools;
        }
        case Scenario::B: return {"lookup_contact", "send_email", "draft_note"};
        case Scenario::C: return {"compute_score", "generate_image", "draft_note"};
    }
    return {};
}

}  // namespace scl::scenarios
