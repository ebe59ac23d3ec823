#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace scl;
using namespace scl::action;

namespace {

scenarios::EpisodeSpec email_spec() { return scenarios::generate_episode(scenarios::Scenario::B, 0, 0); }

}  // namespace

TEST(Noise, RangeForFractionalBound) {
    EXPECT_EQ(integer_noise_range(1.5), (std::pair<std::int64_t, std::int64_t>{-1, 1}));
    EXPECT_EQ(integer_noise_range(1.0), (std::pair<std::int64_t, std::int64_t>{-1, 1}));
    EXPECT_EQ(integer_noise_range(2.0), (std::pair<std::int64_t, std::int64_t>{-2, 2}));
    EXPECT_EQ(integer_noise_range(0.0), (std::pair<std::int64_t, std::int64_t>{0, 0}));
}

TEST(GetWeather, NoisyReadingStaysWithinBound) {
    auto spec = scl::testing::walkthrough_spec();
    spec.noise_bound = 1.5;
    const auto registry = builtin_registry();
    std::set<int> seen;
    for (std::uint64_t s = 0; s < 200; ++s) {
        ToolEnvironment env(spec, s);
        const auto r = execute({"get_weather", json::array({"Miami"})}, registry, env);
        ASSERT_TRUE(r.ok());
        const int t = r.value.at("temp_f").get<int>();
        EXPECT_GE(t, 81);
        EXPECT_LE(t, 83);
        seen.insert(t);
    }
    EXPECT_EQ(seen, (std::set<int>{81, 82, 83}));
}

TEST(GetWeather, UnknownCityFails) {
    const auto registry = builtin_registry();
    ToolEnvironment env(scl::testing::walkthrough_spec(), 0);
    const auto r = execute({"get_weather", json::array({"Atlantis"})}, registry, env);
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(r.attempts, 1);
}

TEST(SendEmail, UnresolvedRecipientFails) {
    const auto spec = email_spec();
    const auto registry = builtin_registry();
    ToolEnvironment env(spec, 0);
    const auto r = execute({"send_email", json::array({spec.email().recipient, "hi"})}, registry, env);
    EXPECT_FALSE(r.ok());
    EXPECT_NE(r.error.find("not resolved"), std::string::npos);
}

TEST(SendEmail, FailureIsWrittenToMemory) {
    const auto spec = email_spec();
    auto cfg = loop::config_for_system("no-control");
    cfg.policy = loop::PolicyKind::adapter;
    cfg.budget = 1;
    const auto send = json{{"propose", "send_email"},
                           {"args", {spec.email().recipient, "hi"}},
                           {"because", {"goal exists"}}};
    cfg.transport = [send](const scenarios::EpisodeSpec&, std::uint64_t) {
        return cognition::canned_transport({send.dump()});
    };
    const auto run = loop::run_episode(spec, cfg, 0);
    const auto state = run.memory->state();
    ASSERT_EQ(state.failures.size(), 1u);
    EXPECT_EQ(state.failures[0].value.at("tool"), "send_email");
    EXPECT_EQ(state.failures[0].kind, mem::RecordKind::failure_event);
}

TEST(SendEmail, ResolvedRecipientGetsReceipt) {
    auto spec = email_spec();
    const auto& who = spec.email().recipient;
    spec.truth.contacts[who] = "someone@example.com";
    const auto registry = builtin_registry();
    ToolEnvironment env(spec, 0);
    const auto lookup = execute({"lookup_contact", json::array({who})}, registry, env);
    ASSERT_TRUE(lookup.ok());
    EXPECT_EQ(lookup.value.at("found"), true);
    const auto sent = execute({"send_email", json::array({who, "hi"})}, registry, env);
    ASSERT_TRUE(sent.ok());
    EXPECT_TRUE(sent.value.contains("receipt"));
}

TEST(BookFlight, ConfirmationIsSixAlphanumerics) {
    auto spec = scl::testing::episode_a();
    const auto registry = builtin_registry();
    ToolEnvironment env(spec, 42);
    const auto r = execute({"book_flight", json::array({"Miami"})}, registry, env);
    ASSERT_TRUE(r.ok());
    const auto code = r.value.at("confirmation").get<std::string>();
    ASSERT_EQ(code.size(), 6u);
    for (char c : code) EXPECT_TRUE(std::isupper(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)));
    ToolEnvironment again(spec, 42);
    EXPECT_EQ(execute({"book_flight", json::array({"Miami"})}, registry, again).value, r.value);
}

TEST(BookFlight, FixedConfirmationFromTruth) {
    const auto registry = builtin_registry();
    ToolEnvironment env(scl::testing::walkthrough_spec(), 0);
    EXPECT_EQ(execute({"book_flight", json::array({"Miami"})}, registry, env).value.at("confirmation"), "ABC123");
}

TEST(Registry, DuplicateRegistrationThrows) {
    auto registry = builtin_registry();
    EXPECT_THROW(registry.register_tool(get_weather_tool()), ConfigError);
    EXPECT_THROW((void)registry.at("teleport"), ConfigError);
}

TEST(Registry, SchemasLandInLongTermMemory) {
    mem::LongTermMemory ltm;
    const auto registry = builtin_registry(&ltm);
    EXPECT_EQ(registry.names().size(), 8u);
    EXPECT_TRUE(ltm.tool_schema("book_flight").has_value());
}

TEST(Registry, EpisodeNeedingUnregisteredToolFailsAtInit) {
    ToolRegistry partial;
    partial.register_tool(get_weather_tool());
    loop::RunOptions opts;
    opts.registry = &partial;
    EXPECT_THROW((void)loop::run_episode(scl::testing::episode_a(), loop::AgentConfig{}, 0, opts), ConfigError);
}

TEST(Validation, WrongArityIsRejectedWithoutCallingTheTool) {
    const auto registry = builtin_registry();
    ToolEnvironment env(scl::testing::episode_a(), 0);
    const auto r = execute({"get_weather", json::array({"Miami", "extra"})}, registry, env);
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(r.error.rfind("invalid arguments", 0), 0u);
}

TEST(Normalize, IsIdempotent) {
    const json celsius{{"temp_c", 28.0}};
    const auto once = normalize_value(celsius);
    EXPECT_EQ(once, (json{{"temp_f", 82}}));
    EXPECT_EQ(normalize_value(once), once);
    EXPECT_EQ(normalize_value(json{{"temp_f", 81.6}}), (json{{"temp_f", 82}}));
}

TEST(Retry, TransientFailuresRetryWithBackoff) {
    const auto registry = builtin_registry();
    RetryPolicy always;
    always.p_transient = 0.999999;
    ToolEnvironment env(scl::testing::episode_a(), 0, always);
    const auto r = execute({"get_weather", json::array({"Miami"})}, registry, env);
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(r.attempts, 3);
    EXPECT_EQ(r.backoff_ms, (std::vector<int>{50, 100}));
}

TEST(Retry, PermanentFailureIsNotRetried) {
    const auto registry = builtin_registry();
    RetryPolicy flaky;
    flaky.p_transient = 0.0;
    ToolEnvironment env(email_spec(), 0, flaky);
    const auto r = execute({"send_email", json::array({"Nobody", "x"})}, registry, env);
    EXPECT_EQ(r.attempts, 1);
    EXPECT_TRUE(r.backoff_ms.empty());
}
