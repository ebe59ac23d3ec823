#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scl/canonical.hpp"
#include "scl/error.hpp"
#include "scl/hash.hpp"
#include "scl/loop/config.hpp"
#include "scl/scenarios/generator.hpp"

namespace scl::suite {

/// Everything that determines a suite run's output bytes.
struct RunManifest {
    std::vector<scenarios::Scenario> scenarios{scenarios::Scenario::A, scenarios::Scenario::B, scenarios::Scenario::C};
    int templates = scenarios::kTemplatesPerScenario;
    int seeds = scenarios::kSeedsPerTemplate;
    /// Independent runs of the whole suite, each with its own run seed.
    int runs = 3;
    std::vector<std::string> systems{"scl"};
    loop::PolicyKind policy = loop::PolicyKind::oracle;
    cognition::FaultModel faults = cognition::FaultModel::defaults();
    int budget = 20;
    double noise_bound = 1.0;
    int cities = 3;
    double p_transient = 0.0;
    std::uint64_t seed = 0;
    std::string out_dir;
    bool all_snapshots = false;

    void validate() const {
        if (scenarios.empty()) throw ConfigError("manifest lists no scenarios");
        if (templates < 1 || templates > scenarios::kTemplatesPerScenario) {
            throw ConfigError("templates must be in 1.." + std::to_string(scenarios::kTemplatesPerScenario));
        }
        if (seeds < 1) throw ConfigError("manifest needs at least one seed");
        if (runs < 1) throw ConfigError("manifest needs at least one run");
        if (systems.empty()) throw ConfigError("manifest lists no systems");
        for (const auto& s : systems) (void)loop::config_for_system(s);
        if (budget < 0) throw ConfigError("budget must be non-negative");
        if (noise_bound < 0) throw ConfigError("noise bound must be non-negative");
        if (cities != 3 && cities != 5) throw ConfigError("cities must be 3 or 5");
        faults.validate();
        if (p_transient < 0 || p_transient >= 1) throw ConfigError("transient failure probability outside [0,1)");
    }

    [[nodiscard]] scenarios::GeneratorOptions generator_options() const { return {cities, noise_bound, budget}; }

    [[nodiscard]] loop::AgentConfig config(const std::string& system) const {
        auto c = loop::config_for_system(system);
        c.policy = policy;
        c.faults = faults;
        c.p_transient = p_transient;
        return c;
    }

    [[nodiscard]] std::uint64_t run_seed(int run) const { return derive_seed(seed, static_cast<std::uint64_t>(run)); }

    [[nodiscard]] std::vector<scenarios::EpisodeSpec> episodes() const {
        return scenarios::generate_suite(scenarios, templates, seeds, generator_options());
    }
};

inline json to_json(const RunManifest& m) {
    std::string sc;
    for (auto s : m.scenarios) sc += scenarios::to_char(s);
    return json{{"scenarios", sc},
                {"templates", m.templates},
                {"seeds", m.seeds},
                {"runs", m.runs},
                {"systems", m.systems},
                {"policy", std::string(loop::to_string(m.policy))},
                {"faults", cognition::to_json(m.faults)},
                {"budget", m.budget},
                {"noise_bound", m.noise_bound},
                {"cities", m.cities},
                {"p_transient", m.p_transient},
                {"seed", m.seed}};
}

inline RunManifest manifest_from_json(const json& j) {
    RunManifest m;
    try {
        m.scenarios.clear();
        for (char c : j.at("scenarios").get<std::string>()) m.scenarios.push_back(scenarios::scenario_from_char(c));
        m.templates = j.at("templates").get<int>();
        m.seeds = j.at("seeds").get<int>();
        m.runs = j.at("runs").get<int>();
        m.systems = j.at("systems").get<std::vector<std::string>>();
        m.policy = loop::policy_from_string(j.at("policy").get<std::string>());
        const auto& f = j.at("faults");
        m.faults = {f.at("p_redundant").get<double>(), f.at("p_forget").get<double>(), f.at("p_premature").get<double>(),
                    f.at("p_unsupported").get<double>()};
        m.budget = j.at("budget").get<int>();
        m.noise_bound = j.at("noise_bound").get<double>();
        m.cities = j.at("cities").get<int>();
        m.p_transient = j.at("p_transient").get<double>();
        m.seed = j.at("seed").get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed manifest: ") + e.what());
    }
    m.validate();
    return m;
}

/// Hash of the episode suite alone (which episodes, which run seeds),
/// shared by every system run on it.
inline std::string suite_hash(const RunManifest& m) {
    auto j = to_json(m);
    j.erase("systems");
    return sha256_hex(canonical_dump(j));
}

/// Suite listing: (scenario, template, seed, spec hash) per episode.
inline json episode_listing(const std::vector<scenarios::EpisodeSpec>& specs) {
    json arr = json::array();
    for (const auto& s : specs) {
        arr.push_back(json{{"id", s.id()},
                           {"scenario", std::string(1, scenarios::to_char(s.scenario))},
                           {"template", s.template_id},
                           {"seed", s.seed},
                           {"spec_hash", scenarios::spec_hash(s)}});
    }
    return arr;
}

}  // namespace scl::suite
