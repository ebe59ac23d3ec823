#include <gtest/gtest.h>

#include <filesystem>

#include "support.hpp"

using namespace scl;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("scl-suite-" + name + "-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    return dir;
}

suite::RunManifest small(const fs::path& dir) {
    suite::RunManifest m;
    m.scenarios = {scenarios::Scenario::A, scenarios::Scenario::B};
    m.templates = 2;
    m.seeds = 2;
    m.runs = 2;
    m.systems = {"scl", "none"};
    m.policy = loop::PolicyKind::faulty;
    m.out_dir = dir.string();
    return m;
}

}  // namespace

TEST(Manifest, ValidationCatchesBadValues) {
    suite::RunManifest m;
    m.seeds = 0;
    EXPECT_THROW(m.validate(), ConfigError);
    m = {};
    m.systems = {"half"};
    EXPECT_THROW(m.validate(), ConfigError);
    m = {};
    m.cities = 4;
    EXPECT_THROW(m.validate(), ConfigError);
    m = {};
    m.faults.p_forget = 1.5;
    EXPECT_THROW(m.validate(), ValidationError);
    EXPECT_NO_THROW(suite::RunManifest{}.validate());
}

TEST(Manifest, JsonRoundTripAndHash) {
    auto m = small("x");
    const auto back = suite::manifest_from_json(suite::to_json(m));
    EXPECT_EQ(suite::to_json(back), suite::to_json(m));
    EXPECT_EQ(suite::suite_hash(back), suite::suite_hash(m));
    auto other = m;
    other.noise_bound = 2.0;
    EXPECT_NE(suite::suite_hash(other), suite::suite_hash(m));
    EXPECT_EQ(m.episodes().size(), 8u);
}

TEST(Runner, WritesArtifactsAndResumes) {
    const auto dir = scratch("resume");
    const auto m = small(dir);
    const auto first = suite::run_suite(m);
    EXPECT_EQ(first.executed, 32);
    EXPECT_EQ(first.resumed, 0);
    for (const auto* f : {"manifest.json", "suite.json", "report.txt", "report.json"}) EXPECT_TRUE(fs::exists(dir / f)) << f;
    const auto trace = dir / "none" / "run1" / "B-t01-s1.trace";
    ASSERT_TRUE(fs::exists(trace));
    EXPECT_TRUE(fs::exists(dir / "scl" / "run0" / "archive" / "index.json"));
    EXPECT_TRUE(fs::exists(dir / "scl" / "run0" / "scores.json"));
    EXPECT_FALSE(fs::is_empty(dir / "scl" / "run0" / "snapshots"));
    const auto bytes = loop::read_file(trace.string());

    const auto again = suite::run_suite(m, 2);
    EXPECT_EQ(again.executed, 0);
    EXPECT_EQ(again.resumed, 32);
    EXPECT_EQ(loop::read_file(trace.string()), bytes);
    EXPECT_EQ(metrics::to_json(again.report), metrics::to_json(first.report));
    EXPECT_EQ(metrics::to_json(suite::report_from_dir(dir.string())), metrics::to_json(first.report));
    fs::remove_all(dir);
}

TEST(Runner, DamagedTraceIsRerun) {
    const auto dir = scratch("damaged");
    auto m = small(dir);
    m.systems = {"scl"};
    m.runs = 1;
    const auto first = suite::run_suite(m);
    const auto trace = dir / "scl" / "run0" / "A-t00-s0.trace";
    const auto bytes = loop::read_file(trace.string());
    suite::write_file(trace, bytes.substr(0, bytes.size() / 2));
    const auto again = suite::run_suite(m);
    EXPECT_EQ(again.executed, 1);
    EXPECT_EQ(loop::read_file(trace.string()), bytes);
    fs::remove_all(dir);
}

TEST(Runner, JobsDoNotChangeResults) {
    const auto a = scratch("jobs1");
    const auto b = scratch("jobs3");
    auto ma = small(a);
    auto mb = small(b);
    const auto ra = suite::run_suite(ma, 1);
    const auto rb = suite::run_suite(mb, 3);
    EXPECT_EQ(metrics::to_json(ra.report), metrics::to_json(rb.report));
    EXPECT_EQ(loop::read_file((a / "scl" / "run1" / "A-t01-s0.trace").string()),
              loop::read_file((b / "scl" / "run1" / "A-t01-s0.trace").string()));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Runner, EpisodeOrderIsASeededPermutation) {
    const auto o = suite::episode_order(20, 5);
    EXPECT_EQ(o, suite::episode_order(20, 5));
    EXPECT_NE(o, suite::episode_order(20, 6));
    auto sorted = o;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) EXPECT_EQ(sorted[i], i);
}
