#pragma once

#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "scl/noise.hpp"
#include "scl/random.hpp"
#include "scl/scenarios/episode.hpp"

namespace scl::scenarios {

inline constexpr int kTemplatesPerScenario = 12;
inline constexpr int kSeedsPerTemplate = 10;

inline const std::array<std::string, 5> kCityPool{"San Francisco", "Miami", "New York", "Chicago", "Seattle"};

struct GeneratorOptions {
    int city_count = 3;  // 3 or 5 (Scenario A only)
    double noise_bound = 1.0;
    int budget = 20;
};

/// True when every city's ground truth sits strictly further from every
/// rule threshold than the largest observable noise, so no noisy reading
/// can flip a branch.
inline bool margin_guarantee_holds(const EpisodeSpec& spec) {
    if (spec.scenario != Scenario::A) return true;
    const double margin = max_observed_deviation(spec.noise_bound);
    for (const auto& [city, temp] : spec.truth.temps_f) {
        for (const auto& check : spec.travel().checks) {
            if (std::abs(temp - check.threshold_f) <= margin) return false;
        }
    }
    return true;
}

namespace detail {

struct TravelTemplate {
    TravelRules::Form form;
    std::vector<CityCheck> checks;
    const char* default_city;  // nullptr: stay home
    const char* prefer;
};

inline const std::array<TravelTemplate, 12>& travel_templates() {
    using F = TravelRules::Form;
    static const std::array<TravelTemplate, 12> t{{
        {F::chain, {{"San Francisco", 73}, {"Miami", 77}}, "New York", ""},
        {F::chain, {{"San Francisco", 77}, {"Miami", 82}}, "New York", ""},
        {F::chain, {{"Miami", 82}, {"San Francisco", 77}}, "New York", ""},
        {F::chain, {{"New York", 73}, {"San Francisco", 77}}, "Miami", ""},
        {F::chain, {{"Miami", 77}, {"New York", 73}}, "San Francisco", ""},
        {F::chain, {{"San Francisco", 77}, {"Miami", 82}, {"New York", 73}}, nullptr, ""},
        {F::chain, {{"Miami", 82}, {"New York", 77}, {"San Francisco", 73}}, nullptr, ""},
        {F::chain, {{"New York", 82}, {"San Francisco", 73}, {"Miami", 77}}, nullptr, ""},
        {F::compare, {{"San Francisco", 77}, {"Miami", 77}}, nullptr, "Miami"},
        {F::compare, {{"Miami", 82}, {"New York", 82}}, nullptr, "New York"},
        {F::compare, {{"San Francisco", 73}, {"New York", 73}}, nullptr, "San Francisco"},
        {F::compare, {{"New York", 77}, {"Miami", 77}}, nullptr, "Miami"},
    }};
    return t;
}

inline constexpr std::array<int, 3> kThresholdFamily{73, 77, 82};

inline const std::array<std::string, 6> kRecipients{"Alice", "Bob", "Carol", "Dana Lee", "Evan", "Farah"};
inline const std::array<std::string, 6> kTopics{"budget review", "launch plan", "offsite agenda",
                                                "roadmap",       "hiring update", "quarterly report"};
inline const std::array<std::string, 3> kGreetings{"Hello", "Hi", "Dear"};
inline const std::array<std::string, 3> kSignoffs{"Best", "Regards", "Thanks"};
inline const std::array<std::string, 5> kScoreInputs{"reviews", "sales", "ratings", "engagement", "retention"};
inline const std::array<std::string, 4> kSubjects{"sunset over the bay", "city skyline", "mountain lake",
                                                  "harbor at dawn"};

inline std::uint64_t spec_seed(Scenario s, int template_id, std::uint64_t seed, int city_count) {
    auto h = derive_seed(0x5c15ce9a710ULL, std::string(1, to_char(s)));
    h = derive_seed(h, static_cast<std::uint64_t>(template_id) * 131 + static_cast<std::uint64_t>(city_count));
    return derive_seed(h, seed);
}

/// Balanced branch assignment: across any 10 consecutive seeds of a
/// template, exactly five take each branch.
inline bool balanced_branch(Scenario s, int template_id, std::uint64_t seed) {
    std::array<bool, kSeedsPerTemplate> slots{true, true, true, true, true, false, false, false, false, false};
    Rng rng(derive_seed(derive_seed(0xba1a9ceULL, std::string(1, to_char(s))), static_cast<std::uint64_t>(template_id)));
    rng.shuffle(slots);
    return slots[seed % kSeedsPerTemplate];
}

inline std::string address_of(const std::string& name) {
    std::string out;
    for (char c : name) out.push_back(c == ' ' ? '.' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return out + "@example.com";
}

inline void travel_rubric(EpisodeSpec& spec) {
    spec.rubric = {{"outcome_correct", "outcome", 0.6}, {"primary_effect_completed", "side_effect", 0.2}};
    if (spec.travel().draw_followup) {
        spec.rubric.push_back({"judgment_recorded", "format", 0.1});
        spec.rubric.push_back({"followup_after_primary", "format", 0.1});
    } else {
        spec.rubric.push_back({"judgment_recorded", "format", 0.2});
    }
}

inline void travel_constraints(EpisodeSpec& spec) {
    const auto& r = spec.travel();
    spec.goal = "Choose destination based on temperature thresholds";
    if (r.form == TravelRules::Form::compare) {
        spec.constraints = json{{"threshold_hot_f", r.checks.front().threshold_f}};
    } else {
        json thresholds = json::object();
        for (const auto& c : r.checks) thresholds[c.city] = c.threshold_f;
        spec.constraints = json{{"thresholds_f", thresholds}};
    }
}

}  // namespace detail

/// Builds a Scenario A spec from explicit rules and temperatures.
inline EpisodeSpec travel_episode(TravelRules rules, std::map<std::string, int> temps_f, double noise_bound = 0.0,
                                  int budget = 20, int template_id = 0, std::uint64_t seed = 0) {
    EpisodeSpec spec;
    spec.scenario = Scenario::A;
    spec.template_id = template_id;
    spec.seed = seed;
    spec.rules = std::move(rules);
    spec.truth.temps_f = std::move(temps_f);
    spec.noise_bound = noise_bound;
    spec.budget = budget;
    detail::travel_rubric(spec);
    detail::travel_constraints(spec);
    return spec;
}

/// Deterministic episode generator: same (scenario, template, seed,
/// options) always yields the same spec bytes.
inline EpisodeSpec generate_episode(Scenario scenario, int template_id, std::uint64_t seed,
                                    const GeneratorOptions& options = {}) {
    if (template_id < 0 || template_id >= kTemplatesPerScenario) {
        throw ValidationError("template id " + std::to_string(template_id) + " out of range");
    }
    if (scenario == Scenario::A && options.city_count != 3 && options.city_count != 5) {
        throw ValidationError("city count must be 3 or 5");
    }
    const int city_count = scenario == Scenario::A ? options.city_count : 3;
    Rng rng(detail::spec_seed(scenario, template_id, seed, city_count));

    EpisodeSpec spec;
    spec.scenario = scenario;
    spec.template_id = template_id;
    spec.seed = seed;
    spec.city_count = city_count;
    spec.budget = options.budget;
    spec.noise_bound = options.noise_bound;

    switch (scenario) {
        case Scenario::A: {
            const auto& tpl = detail::travel_templates()[static_cast<std::size_t>(template_id)];
            TravelRules r;
            r.form = tpl.form;
            r.checks = tpl.checks;
            if (tpl.default_city) r.default_city = tpl.default_city;
            r.prefer = tpl.prefer;
            r.draw_followup = tpl.form == TravelRules::Form::compare;
            if (city_count == 5) {
                const auto fam = detail::kThresholdFamily;
                const int shared = r.checks.front().threshold_f;
                const bool compare = tpl.form == TravelRules::Form::compare;
                r.checks.push_back({"Chicago", compare ? shared : fam[static_cast<std::size_t>(template_id) % 3]});
                r.checks.push_back({"Seattle", compare ? shared : fam[static_cast<std::size_t>(template_id + 1) % 3]});
            }
            spec.rules = r;
            const double margin = max_observed_deviation(options.noise_bound);
            for (int i = 0; i < city_count; ++i) {
                const auto& city = kCityPool[static_cast<std::size_t>(i)];
                int temp = 0;
                bool ok = false;
                while (!ok) {
                    temp = static_cast<int>(rng.uniform_int(55, 95));
                    ok = std::all_of(r.checks.begin(), r.checks.end(),
                                     [&](const CityCheck& c) { return std::abs(temp - c.threshold_f) > margin; });
                }
                spec.truth.temps_f[city] = temp;
            }
            detail::travel_rubric(spec);
            detail::travel_constraints(spec);
            break;
        }
        case Scenario::B: {
            const auto t = static_cast<std::size_t>(template_id);
            EmailRules r;
            r.recipient = detail::kRecipients[t % 6];
            r.topic = detail::kTopics[(t + t / 6) % 6];
            r.greeting = detail::kGreetings[t % 3];
            r.signoff = detail::kSignoffs[(t / 3) % 3];
            spec.rules = r;
            for (const auto& name : detail::kRecipients) {
                if (name != r.recipient && rng.bernoulli(0.5)) spec.truth.contacts[name] = detail::address_of(name);
            }
            if (detail::balanced_branch(scenario, template_id, seed)) {
                spec.truth.contacts[r.recipient] = detail::address_of(r.recipient);
            }
            spec.goal = "Email the " + r.topic + " update to " + r.recipient + " only if the contact is found";
            spec.constraints = json{{"recipient", r.recipient}, {"checklist", {"greeting", "topic", "signoff"}}};
            spec.rubric = {{"outcome_correct", "outcome", 0.6},
                           {"primary_effect_completed", "side_effect", 0.2},
                           {"checklist_greeting", "format", 0.2 / 3},
                           {"checklist_topic", "format", 0.2 / 3},
                           {"checklist_signoff", "format", 0.2 / 3}};
            break;
        }
        case Scenario::C: {
            const auto t = static_cast<std::size_t>(template_id);
            ImageRules r;
            const std::size_t k = 1 + t % 2;
            for (std::size_t i = 0; i < k; ++i) r.score_inputs.push_back(detail::kScoreInputs[(t + 2 * i) % 5]);
            r.fallback = (t / 2) % 2 ? ImageRules::Fallback::note : ImageRules::Fallback::exit;
            r.threshold = std::array<int, 3>{50, 60, 70}[t / 4];
            r.subject = detail::kSubjects[t % 4];
            spec.rules = r;
            const bool satisfied = detail::balanced_branch(scenario, template_id, seed);
            std::vector<bool> fails(k, false);
            if (!satisfied) {
                while (std::none_of(fails.begin(), fails.end(), [](bool b) { return b; })) {
                    for (std::size_t i = 0; i < k; ++i) fails[i] = rng.bernoulli(0.5);
                }
            }
            for (std::size_t i = 0; i < k; ++i) {
                spec.truth.scores[r.score_inputs[i]] = fails[i]
                                                           ? static_cast<int>(rng.uniform_int(r.threshold - 30, r.threshold))
                                                           : static_cast<int>(rng.uniform_int(r.threshold + 1, 100));
            }
            spec.goal = "Generate an image of " + r.subject + " only if every score is above " +
                        std::to_string(r.threshold);
            spec.constraints = json{{"threshold", r.threshold}};
            spec.rubric = {{"outcome_correct", "outcome", 0.6},
                           {"primary_effect_completed", "side_effect", 0.2},
                           {"judgment_recorded", "format", 0.2}};
            break;
        }
    }
    return spec;
}

/// All (template, seed) combinations of the given scenarios.
inline std::vector<EpisodeSpec> generate_suite(const std::vector<Scenario>& scenarios, int templates, int seeds,
                                               const GeneratorOptions& options = {}) {
    std::vector<EpisodeSpec> out;
    for (auto s : scenarios) {
        for (int t = 0; t < templates; ++t) {
            for (int seed = 0; seed < seeds; ++seed) {
                out.push_back(generate_episode(s, t, static_cast<std::uint64_t>(seed), options));
            }
        }
    }
    return out;
}

}  // namespace scl::scenarios
