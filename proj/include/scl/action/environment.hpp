#pragma once

#include <array>
#include <cmath>
#include <set>
#include <string>

#include "scl/action/tool.hpp"
#include "scl/noise.hpp"
#include "scl/random.hpp"
#include "scl/scenarios/episode.hpp"

namespace scl::action {

struct RetryPolicy {
    int max_retries = 2;
    std::array<int, 2> backoff_ms{50, 100};
    /// Probability that any single attempt fails transiently.
    double p_transient = 0.0;
};

/// Hidden world of one episode: ground truth, seeded noise, and the
/// bookkeeping tools need (resolved contacts, artifact counter). Owned by
/// the episode's loop only.
class ToolEnvironment {
public:
    ToolEnvironment(scenarios::EpisodeSpec spec, std::uint64_t stream_seed, RetryPolicy retry = {})
        : spec_(std::move(spec)),
          episode_id_(spec_.id()),
          stream_seed_(stream_seed),
          noise_(derive_seed(stream_seed, "tool-noise")),
          transient_(derive_seed(stream_seed, "tool-transient")),
          retry_(retry) {}

    [[nodiscard]] const scenarios::EpisodeSpec& spec() const noexcept { return spec_; }
    [[nodiscard]] const std::string& episode_id() const noexcept { return episode_id_; }
    [[nodiscard]] const RetryPolicy& retry() const noexcept { return retry_; }

    Rng& noise() noexcept { return noise_; }
    Rng& transient() noexcept { return transient_; }

    [[nodiscard]] std::string next_handle(const std::string& tool) { return tool + ":" + episode_id_ + ":" + std::to_string(handle_seq_++); }

    void mark_resolved(const std::string& name) { resolved_.insert(name); }
    [[nodiscard]] bool resolved(const std::string& name) const { return resolved_.contains(name); }

    /// Six uppercase alphanumerics, fixed per (episode stream, city).
    [[nodiscard]] std::string confirmation_code(const std::string& city) const {
        if (auto it = spec_.truth.confirmations.find(city); it != spec_.truth.confirmations.end()) return it->second;
        static constexpr std::string_view kAlphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
        Rng rng(derive_seed(stream_seed_, "confirmation:" + city));
        std::string code;
        for (int i = 0; i < 6; ++i) code += kAlphabet[static_cast<std::size_t>(rng.uniform_int(0, kAlphabet.size() - 1))];
        return code;
    }

private:
    scenarios::EpisodeSpec spec_;
    std::string episode_id_;
    std::uint64_t stream_seed_;
    Rng noise_;
    Rng transient_;
    RetryPolicy retry_;
    std::set<std::string> resolved_;
    std::uint64_t handle_seq_ = 0;
};

/// Brings a tool payload to canonical units: temperatures become integer
/// °F under `temp_f`. Applying it twice changes nothing.
inline json normalize_value(const json& value) {
    if (!value.is_object()) return value;
    json out = value;
    if (out.contains("temp_c") && !out.contains("temp_f")) {
        const double c = out.at("temp_c").get<double>();
        out["temp_f"] = static_cast<std::int64_t>(std::llround(c * 9.0 / 5.0 + 32.0));
    }
    out.erase("temp_c");
    if (out.contains("temp_f") && out.at("temp_f").is_number_float()) {
        out["temp_f"] = static_cast<std::int64_t>(std::llround(out.at("temp_f").get<double>()));
    }
    return out;
}

/// Runs an approved call: validation, bounded retry with a recorded (not
/// waited) backoff schedule, normalization.
inline ToolResult execute(const ToolCall& call, const ToolRegistry& registry, ToolEnvironment& env) {
    const auto& spec = registry.at(call.tool);
    ToolResult result;
    result.call = call;
    if (auto why = validate_args(spec, call); !why.empty()) {
        result.attempts = 1;
        result.error = "invalid arguments: " + why;
        return result;
    }
    const auto& retry = env.retry();
    for (int attempt = 0; attempt <= retry.max_retries; ++attempt) {
        ++result.attempts;
        Attempt a;
        if (retry.p_transient > 0 && env.transient().bernoulli(retry.p_transient)) {
            a.error = "transient: " + call.tool + " timed out";
            a.transient = true;
        } else {
            a = spec.fn(call, env);
        }
        if (a.ok) {
            result.outcome = ToolResult::Outcome::ok;
            result.value = normalize_value(a.value);
            result.error.clear();
            return result;
        }
        result.error = a.error;
        if (!a.transient || attempt == retry.max_retries) break;
        result.backoff_ms.push_back(retry.backoff_ms[static_cast<std::size_t>(std::min(attempt, 1))]);
    }
    return result;
}

}  // namespace scl::action
