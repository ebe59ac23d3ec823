// Runs the two-city travel walkthrough under full SCL, prints the trace
// one event per line, then verifies, replays and scores it.

#include <iostream>

#include "scl/scl.hpp"

int main() {
    using namespace scl;

    scenarios::TravelRules rules;
    rules.form = scenarios::TravelRules::Form::compare;
    rules.checks = {{"San Francisco", 77}, {"Miami", 77}};
    rules.prefer = "Miami";
    rules.draw_followup = true;
    auto spec = scenarios::travel_episode(rules, {{"San Francisco", 68}, {"Miami", 82}});
    spec.truth.confirmations["Miami"] = "ABC123";

    const auto run = loop::run_episode(spec, loop::AgentConfig{}, 0);
    for (const auto& e : run.trace.events()) {
        std::cout << "cycle " << e.cycle << "  " << loop::to_string(e.phase);
        if (e.phase == loop::Phase::act) std::cout << "  " << canonical_dump(e.payload.at("result").at("call"));
        if (e.phase == loop::Phase::decide) std::cout << "  " << e.payload.at("decision").at("verdict").get<std::string>();
        std::cout << "\n";
    }

    const auto text = run.trace.str();
    const auto events = loop::verify_trace(text);
    const auto replayed = loop::replay(text);
    const auto scores = metrics::score_trace(text);
    std::cout << "\n" << events.size() << " events, chain ok, replay " << (replayed.matches() ? "matches" : "differs")
              << "\nguard " << scores.guard << ", cycles " << scores.cycles << ", success " << std::boolalpha
              << scores.success << ", redundant " << scores.redundant_calls << "\n";
    for (const auto& a : run.outcome.artifacts) std::cout << "artifact " << a << "\n";
}
