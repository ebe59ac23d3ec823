#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scl/cognition/directives.hpp"
#include "scl/cognition/proposal.hpp"
#include "scl/error.hpp"
#include "scl/mem/executed.hpp"
#include "scl/mem/state_view.hpp"
#include "scl/random.hpp"
#include "scl/scenarios/rules.hpp"

namespace scl::cognition {

/// Probabilities of the simulated cognition slips.
struct FaultModel {
    double p_redundant = 0.0;    // repeat an already executed call
    double p_forget = 0.0;       // re-query an existing observation
    double p_premature = 0.0;    // terminate before the goal is met
    double p_unsupported = 0.0;  // attach a claim citing a missing path

    static FaultModel defaults() { return {0.3, 0.2, 0.1, 0.1}; }

    void validate() const {
        for (double p : {p_redundant, p_forget, p_premature, p_unsupported}) {
            if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("fault probability outside [0,1]");
        }
    }

    friend bool operator==(const FaultModel&, const FaultModel&) = default;
};

inline json to_json(const FaultModel& f) {
    return json{{"p_redundant", f.p_redundant},
                {"p_forget", f.p_forget},
                {"p_premature", f.p_premature},
                {"p_unsupported", f.p_unsupported}};
}

/// A proposal plus, for the adapter, a failure to record in memory.
struct CognitionResult {
    Proposal proposal;
    std::optional<json> failure;
};

class CognitionPolicy {
public:
    virtual ~CognitionPolicy() = default;
    virtual CognitionResult propose(const mem::StateView& state, const Directives& directives) = 0;
};

namespace detail {

inline std::string claim_for(const std::string& evidence) {
    const auto eq = evidence.find('=');
    if (eq == std::string::npos) return evidence;
    return evidence.substr(0, eq) + " is " + evidence.substr(eq + 1);
}

inline bool has_judgment(const mem::StateView& state, const std::string& proposition) {
    return std::any_of(state.judgments.begin(), state.judgments.end(), [&](const mem::MemRecord& r) {
        return r.value.value("proposition", std::string{}) == proposition;
    });
}

inline const mem::MemRecord* open_pending(const mem::StateView& state, const scenarios::Effect& effect) {
    for (const auto& p : state.pending) {
        ToolCall c{p.value.at("name").get<std::string>(), p.value.at("args")};
        if (effect.matches(c)) return &p;
    }
    return nullptr;
}

inline std::string executed_citation(const mem::MemRecord& action) {
    return action.path.str() + ".status==executed";
}

}  // namespace detail

/// Deterministic reference cognition. Checks rules in order against the
/// latest observations, stops as soon as a branch is decided, never
/// proposes a call whose result is already in memory, and terminates
/// once the required side effects are confirmed.
inline Proposal oracle_policy(const mem::StateView& state, const scenarios::EpisodeSpec& spec) {
    const auto progress = scenarios::rule_progress(spec, state);
    Proposal p;
    p.confidence = 1.0;
    if (!progress.complete) {
        if (progress.queries.empty()) return query_proposal("rules reference no observable input");
        const auto& next = progress.queries.front();
        p.propose = next.tool;
        p.args = next.args;
        p.because = progress.because.empty() ? std::vector<std::string>{"goal exists"} : progress.because;
        if (progress.batch) {
            for (std::size_t i = 1; i < progress.queries.size(); ++i) {
                p.followups.push_back({progress.queries[i].tool, progress.queries[i].args, {"goal exists"}, {}});
            }
        }
        return p;
    }

    const auto plan = scenarios::plan_effects(spec, progress.outcome);
    const mem::MemRecord* primary_done = plan.primary ? scenarios::executed_effect(state, *plan.primary) : nullptr;
    if (plan.primary && !primary_done) {
        p.propose = plan.primary->call.tool;
        p.args = plan.primary->call.args;
        p.because = progress.because;
        if (p.because.empty()) p.because = {"goal exists"};
        for (const auto& e : progress.evidence) p.assertions.push_back({detail::claim_for(e), e});
        if (!detail::has_judgment(state, progress.proposition)) {
            p.judgment = Judgment{progress.proposition, progress.evidence};
        }
        if (plan.followup && !scenarios::executed_effect(state, *plan.followup) &&
            !detail::open_pending(state, *plan.followup)) {
            p.followups.push_back({plan.followup->call.tool, plan.followup->call.args, p.because, plan.primary->call.tool});
        }
        return p;
    }
    if (plan.followup && !scenarios::executed_effect(state, *plan.followup)) {
        p.propose = plan.followup->call.tool;
        p.args = plan.followup->call.args;
        p.because = {detail::executed_citation(*primary_done)};
        return p;
    }
    p.propose = std::string(kTerminate);
    p.because = {"goal exists"};
    if (primary_done) p.because.push_back(detail::executed_citation(*primary_done));
    if (plan.followup) {
        if (const auto* f = scenarios::executed_effect(state, *plan.followup)) {
            p.because.push_back(detail::executed_citation(*f));
        }
    }
    if (!plan.primary) p.because.insert(p.because.end(), progress.because.begin(), progress.because.end());
    if (!plan.primary && !detail::has_judgment(state, progress.proposition)) {
        p.judgment = Judgment{progress.proposition, progress.evidence};
        for (const auto& e : progress.evidence) p.assertions.push_back({detail::claim_for(e), e});
    }
    return p;
}

class OraclePolicy final : public CognitionPolicy {
public:
    explicit OraclePolicy(scenarios::EpisodeSpec spec) : spec_(std::move(spec)) {}

    CognitionResult propose(const mem::StateView& state, const Directives&) override {
        return {oracle_policy(state, spec_), std::nullopt};
    }

private:
    scenarios::EpisodeSpec spec_;
};

/// Oracle cognition with injected slips. Four uniforms are drawn per call
/// in a fixed order, so the stream position depends only on the number of
/// proposals made. Slips are tried in order redundant, forget, premature;
/// an unsupported claim is attached independently. Faulted proposals
/// report confidence 0.9; untouched ones are the oracle's, bit for bit.
inline Proposal faulty_policy(const mem::StateView& state, const scenarios::EpisodeSpec& spec,
                              const FaultModel& faults, Rng& rng) {
    Proposal p = oracle_policy(state, spec);
    const double u_redundant = rng.uniform01();
    const double u_forget = rng.uniform01();
    const double u_premature = rng.uniform01();
    const double u_unsupported = rng.uniform01();

    const auto executed = mem::executed_calls(state);
    std::vector<ToolCall> observed;
    for (const auto& [_, o] : state.observations) {
        if (o.tags.contains("call")) observed.push_back(tool_call_from_json(o.tags.at("call")));
    }
    auto pick = [&rng](const auto& items) -> const auto& {
        return items[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(items.size()) - 1))];
    };

    if (u_redundant < faults.p_redundant && !executed.empty()) {
        const auto& call = pick(executed).call;
        p = Proposal{};
        p.propose = call.tool;
        p.args = call.args;
        p.because = {"goal exists"};
        p.confidence = 0.9;
    } else if (u_forget < faults.p_forget && !observed.empty()) {
        const auto& call = pick(observed);
        p = Proposal{};
        p.propose = call.tool;
        p.args = call.args;
        p.because = {"goal exists"};
        p.confidence = 0.9;
    } else if (u_premature < faults.p_premature && !p.is_terminate()) {
        p = Proposal{};
        p.propose = std::string(kTerminate);
        p.because = {"goal exists"};
        p.confidence = 0.9;
    }
    if (u_unsupported < faults.p_unsupported) {
        p.assertions.push_back({"Boston is 91F", "obs.Boston.temp_f=91"});
        p.confidence = 0.9;
    }
    return p;
}

class FaultyPolicy final : public CognitionPolicy {
public:
    FaultyPolicy(scenarios::EpisodeSpec spec, FaultModel faults, std::uint64_t stream_seed)
        : spec_(std::move(spec)), faults_(faults), rng_(stream_seed) {
        faults_.validate();
    }

    CognitionResult propose(const mem::StateView& state, const Directives&) override {
        return {faulty_policy(state, spec_, faults_, rng_), std::nullopt};
    }

private:
    scenarios::EpisodeSpec spec_;
    FaultModel faults_;
    Rng rng_;
};

/// Request/response transport to an external cognition service.
using Transport = std::function<std::string(const std::string& request)>;

/// Canonical request document: directives plus the state view.
inline std::string adapter_request(const mem::StateView& state, const Directives& directives) {
    return canonical_dump(json{{"directives", {{"version", std::string(directives.version)}, {"text", std::string(directives.text)}}},
                               {"state", state.to_json()}});
}

/// Parses a response into a Proposal. Any failure yields a query proposal
/// plus a failure record for memory; the loop keeps running.
inline CognitionResult parse_adapter_response(const std::string& response) {
    try {
        if (response.empty()) throw ValidationError("empty response");
        json j;
        try {
            j = json::parse(response);
        } catch (const json::exception& e) {
            throw ValidationError(std::string("response is not JSON: ") + e.what());
        }
        return {proposal_from_json(j), std::nullopt};
    } catch (const ValidationError& e) {
        json failure{{"tool", "cognition_adapter"}, {"error", e.what()}, {"response", response.substr(0, 256)}};
        return {query_proposal(std::string("unparseable cognition response: ") + e.what()), failure};
    }
}

class AdapterPolicy final : public CognitionPolicy {
public:
    explicit AdapterPolicy(Transport transport) : transport_(std::move(transport)) {
        if (!transport_) throw ConfigError("adapter policy needs a transport");
    }

    CognitionResult propose(const mem::StateView& state, const Directives& directives) override {
        std::string response;
        try {
            response = transport_(adapter_request(state, directives));
        } catch (const std::exception& e) {
            json failure{{"tool", "cognition_adapter"}, {"error", std::string("transport: ") + e.what()}, {"response", ""}};
            return {query_proposal("cognition transport failed"), failure};
        }
        return parse_adapter_response(response);
    }

private:
    Transport transport_;
};

/// Stub transport that replays canned responses in order, then returns
/// empty responses.
inline Transport canned_transport(std::vector<std::string> responses) {
    auto queue = std::make_shared<std::vector<std::string>>(std::move(responses));
    auto next = std::make_shared<std::size_t>(0);
    return [queue, next](const std::string&) -> std::string {
        if (*next >= queue->size()) return {};
        return (*queue)[(*next)++];
    };
}

}  // namespace scl::cognition
