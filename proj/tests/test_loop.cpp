#include <gtest/gtest.h>

#include "support.hpp"

using namespace scl;
using namespace scl::loop;

namespace {

std::vector<std::string> calls_of(const EpisodeRun& run) {
    std::vector<std::string> out;
    for (const auto& c : run.outcome.executed_calls) {
        out.push_back(c.at("tool").get<std::string>() + canonical_dump(c.at("args")));
    }
    return out;
}

void expect_phase_order(const std::vector<TraceEvent>& events) {
    ASSERT_FALSE(events.empty());
    EXPECT_EQ(events.front().phase, Phase::init);
    EXPECT_EQ(events.back().phase, Phase::terminate);
    std::string last_verdict;
    for (std::size_t i = 1; i < events.size(); ++i) {
        const auto& prev = events[i - 1];
        const auto& e = events[i];
        ASSERT_GE(e.cycle, prev.cycle) << i;
        if (e.cycle != prev.cycle) {
            EXPECT_EQ(prev.phase, Phase::snapshot) << i;
            EXPECT_EQ(e.phase, Phase::retrieve) << i;
        }
        if (e.phase == Phase::propose) EXPECT_EQ(prev.phase, Phase::retrieve) << i;
        if (e.phase == Phase::decide) last_verdict = e.payload.at("decision").at("verdict").get<std::string>();
        if (e.phase == Phase::act) {
            EXPECT_EQ(last_verdict, "approve") << i;
            last_verdict.clear();
        }
    }
}

}  // namespace

TEST(Episode, WalkthroughTakesThreeCycles) {
    const auto run = run_episode(scl::testing::walkthrough_spec(), AgentConfig{}, 0);
    EXPECT_EQ(run.outcome.cycles_used, 3);
    EXPECT_EQ(calls_of(run), (std::vector<std::string>{R"(get_weather["San Francisco"])", R"(get_weather["Miami"])",
                                                      R"(book_flight["Miami"])", R"(draw_weather["Miami"])"}));
    EXPECT_EQ(run.outcome.artifacts.at(0), "ABC123");
    expect_phase_order(run.trace.events());
}

TEST(Episode, ZeroBudgetEndsBeforeAnyCall) {
    auto cfg = AgentConfig{};
    cfg.budget = 0;
    const auto run = run_episode(scl::testing::episode_a(), cfg, 0);
    EXPECT_EQ(run.outcome.termination.guard, TerminationGuard::budget_exhausted);
    EXPECT_TRUE(run.outcome.executed_calls.empty());
    EXPECT_EQ(run.outcome.cycles_used, 0);
    EXPECT_EQ(run.trace.events().back().phase, Phase::terminate);
}

TEST(Episode, EpisodeAChecksBothCitiesAndBooksMiami) {
    const auto run = run_episode(scl::testing::episode_a(), AgentConfig{}, 0);
    const auto calls = calls_of(run);
    ASSERT_EQ(calls.size(), 3u);
    EXPECT_EQ(calls[0], R"(get_weather["San Francisco"])");
    EXPECT_EQ(calls[1], R"(get_weather["Miami"])");
    EXPECT_EQ(calls[2], R"(book_flight["Miami"])");
}

TEST(Episode, EpisodeBBooksSanFrancisco) {
    const auto run = run_episode(scl::testing::episode_b(), AgentConfig{}, 0);
    const auto calls = calls_of(run);
    ASSERT_EQ(calls.size(), 3u);
    EXPECT_EQ(calls[0], R"(get_weather["Miami"])");
    EXPECT_EQ(calls[1], R"(get_weather["San Francisco"])");
    EXPECT_EQ(calls[2], R"(book_flight["San Francisco"])");
}

TEST(Episode, InvalidConfigIsRejected) {
    auto cfg = AgentConfig{};
    cfg.p_transient = 1.0;
    EXPECT_THROW((void)run_episode(scl::testing::episode_a(), cfg, 0), ConfigError);
    EXPECT_THROW((void)config_for_system("half"), ConfigError);
}

TEST(Trace, PhaseOrderHoldsAcrossSystems) {
    const auto specs = scenarios::generate_suite({scenarios::Scenario::A, scenarios::Scenario::B, scenarios::Scenario::C},
                                                 scenarios::kTemplatesPerScenario, 1);
    for (const auto* system : {"scl", "no-mem", "no-control", "none"}) {
        auto cfg = config_for_system(system);
        cfg.policy = PolicyKind::faulty;
        cfg.faults = cognition::FaultModel::defaults();
        for (const auto& spec : specs) expect_phase_order(run_episode(spec, cfg, 5).trace.events());
    }
}

TEST(Trace, TruncationNamesLastGoodEvent) {
    const auto text = run_episode(scl::testing::walkthrough_spec(), AgentConfig{}, 0).trace.str();
    auto lines = split_lines(text);
    std::string cut;
    for (std::size_t i = 0; i + 5 < lines.size(); ++i) cut += lines[i] + "\n";
    try {
        (void)verify_trace(cut);
        FAIL() << "truncated trace verified";
    } catch (const TamperError& e) {
        EXPECT_EQ(e.event_index(), static_cast<long long>(lines.size()) - 6);
        EXPECT_NE(std::string(e.what()).find("truncated"), std::string::npos);
    }
}

TEST(Trace, FlippedByteIsCaughtAtItsEvent) {
    const auto text = run_episode(scl::testing::walkthrough_spec(), AgentConfig{}, 0).trace.str();
    auto lines = split_lines(text);
    auto& target = lines[20];
    const auto at = target.find("Miami");
    ASSERT_NE(at, std::string::npos);
    target[at] = 'N';
    std::string tampered;
    for (const auto& l : lines) tampered += l + "\n";
    try {
        (void)verify_trace(tampered);
        FAIL() << "tampered trace verified";
    } catch (const TamperError& e) {
        EXPECT_EQ(e.event_index(), 20);
    }
    EXPECT_THROW((void)replay(tampered), TamperError);
}

TEST(Trace, ReorderedEventsFail) {
    auto lines = split_lines(run_episode(scl::testing::episode_a(), AgentConfig{}, 0).trace.str());
    std::swap(lines[3], lines[4]);
    std::string text;
    for (const auto& l : lines) text += l + "\n";
    EXPECT_THROW((void)verify_trace(text), TamperError);
}

TEST(Replay, ReconstructsFinalMemory) {
    auto cfg = config_for_system("none");
    cfg.policy = PolicyKind::faulty;
    cfg.faults = cognition::FaultModel::defaults();
    cfg.p_transient = 0.2;
    for (int t = 0; t < scenarios::kTemplatesPerScenario; ++t) {
        const auto spec = scenarios::generate_episode(scenarios::Scenario::C, t, 2);
        const auto run = run_episode(spec, cfg, 9);
        const auto r = replay(run.trace.str());
        EXPECT_TRUE(r.matches()) << spec.id();
        EXPECT_EQ(r.snapshot.content_hash, run.final_snapshot.content_hash);
    }
}

TEST(Replay, SnapshotsAreKeptWhenAsked) {
    const auto run = run_episode(scl::testing::walkthrough_spec(), AgentConfig{}, 0, {nullptr, nullptr, true});
    ASSERT_EQ(run.snapshots.size(), 4u);
    const auto events = run.trace.events();
    for (const auto& s : run.snapshots) {
        for (const auto& e : events) {
            if (e.phase == Phase::snapshot && e.cycle == s.cycle) {
                EXPECT_EQ(e.payload.at("content_hash"), s.content_hash);
            }
        }
    }
}

TEST(Determinism, SameInputsSameBytes) {
    auto cfg = config_for_system("no-control");
    cfg.policy = PolicyKind::faulty;
    cfg.faults = cognition::FaultModel::defaults();
    cfg.p_transient = 0.1;
    const auto spec = scenarios::generate_episode(scenarios::Scenario::A, 7, 4);
    EXPECT_EQ(run_episode(spec, cfg, 3).trace.str(), run_episode(spec, cfg, 3).trace.str());
    EXPECT_NE(run_episode(spec, cfg, 3).trace.str(), run_episode(spec, cfg, 4).trace.str());
}

// Without memory, the oracle loses observations older than its window and
// some chain templates end on the wrong branch.
TEST(Ablation, NoMemoryTakesTheWrongBranchSomewhere) {
    const auto specs = scenarios::generate_suite({scenarios::Scenario::A}, scenarios::kTemplatesPerScenario,
                                                 scenarios::kSeedsPerTemplate);
    const auto cfg = config_for_system("no-mem");
    int wrong = 0;
    for (const auto& spec : specs) {
        if (!suite::evaluate_episode(spec, cfg, 0).scores.success) ++wrong;
    }
    EXPECT_GT(wrong, 0);
    for (const auto& spec : specs) EXPECT_TRUE(suite::evaluate_episode(spec, AgentConfig{}, 0).scores.success) << spec.id();
}

TEST(Ablation, WithoutControlRedundantCallsExecute) {
    auto cfg = config_for_system("no-control");
    cfg.policy = PolicyKind::faulty;
    cfg.faults = cognition::FaultModel{1.0, 0, 0, 0};
    cfg.budget = 6;
    const auto run = run_episode(scl::testing::episode_a(), cfg, 0);
    const auto calls = calls_of(run);
    std::map<std::string, int> counts;
    for (const auto& c : calls) ++counts[c];
    int repeats = 0;
    for (const auto& [_, n] : counts) repeats += n - 1;
    EXPECT_GT(repeats, 0);

    auto guarded = config_for_system("scl");
    guarded.policy = PolicyKind::faulty;
    guarded.faults = cfg.faults;
    guarded.budget = 6;
    const auto safe = calls_of(run_episode(scl::testing::episode_a(), guarded, 0));
    EXPECT_EQ(std::set<std::string>(safe.begin(), safe.end()).size(), safe.size());
}
