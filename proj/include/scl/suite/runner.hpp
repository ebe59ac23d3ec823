#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <mutex>
#include <ostream>
#include <thread>
#include <vector>

#include "scl/loop/replay.hpp"
#include "scl/loop/runtime.hpp"
#include "scl/mem/mem_store.hpp"
#include "scl/metrics/aggregate.hpp"
#include "scl/metrics/scores.hpp"
#include "scl/suite/manifest.hpp"

namespace scl::suite {

namespace fs = std::filesystem;

/// One episode run, verified and scored.
struct EpisodeResult {
    std::uint64_t run_seed = 0;
    std::string trace_text;
    loop::EpisodeOutcome outcome;
    metrics::EpisodeScores scores;
};

/// Runs, verifies and scores one episode in memory.
inline EpisodeResult evaluate_episode(const scenarios::EpisodeSpec& spec, const loop::AgentConfig& config,
                                      std::uint64_t run_seed) {
    auto run = loop::run_episode(spec, config, run_seed);
    EpisodeResult r;
    r.run_seed = run_seed;
    r.trace_text = run.trace.str();
    r.outcome = run.outcome;
    r.scores = metrics::score_trace(r.trace_text);
    return r;
}

/// Calls `fn(i)` for i in [0, n) on `jobs` threads.
template <class Fn>
void parallel_for(std::size_t n, int jobs, Fn fn) {
    if (jobs <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : workers) t.join();
    if (error) std::rethrow_exception(error);
}

/// Runs every spec under one configuration and run seed, in memory.
inline std::vector<EpisodeResult> evaluate_suite(const std::vector<scenarios::EpisodeSpec>& specs,
                                                 const loop::AgentConfig& config, std::uint64_t run_seed, int jobs = 1) {
    std::vector<EpisodeResult> out(specs.size());
    parallel_for(specs.size(), jobs, [&](std::size_t i) { out[i] = evaluate_episode(specs[i], config, run_seed); });
    return out;
}

inline void write_file(const fs::path& path, const std::string& bytes) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << bytes;
}

struct SuiteResult {
    metrics::SuiteReport report;
    int executed = 0;
    int resumed = 0;
};

/// Deterministic episode order of one run.
inline std::vector<std::size_t> episode_order(std::size_t n, std::uint64_t run_seed) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng(derive_seed(run_seed, "episode-order"));
    rng.shuffle(order);
    return order;
}

/// Executes a manifest and writes, under `out_dir`:
///   manifest.json, suite.json, report.txt, report.json,
///   <system>/run<r>/<episode>.trace, scores.json, snapshots/, archive/index.json.
/// Episodes whose trace file already verifies and replays are not rerun.
inline SuiteResult run_suite(const RunManifest& manifest, int jobs = 1, std::ostream* log = nullptr) {
    manifest.validate();
    if (manifest.out_dir.empty()) throw ConfigError("manifest has no output directory");
    const fs::path root(manifest.out_dir);
    const auto specs = manifest.episodes();
    const auto hash = suite_hash(manifest);
    write_file(root / "manifest.json", canonical_dump(to_json(manifest)) + "\n");
    write_file(root / "suite.json", canonical_dump(json{{"suite_hash", hash}, {"episodes", episode_listing(specs)}}) + "\n");

    SuiteResult result;
    std::vector<metrics::SystemScores> systems;
    for (const auto& system : manifest.systems) {
        metrics::SystemScores scored{system, hash, {}};
        const auto config = manifest.config(system);
        for (int r = 0; r < manifest.runs; ++r) {
            const auto run_seed = manifest.run_seed(r);
            const fs::path dir = root / system / ("run" + std::to_string(r));
            fs::create_directories(dir / "snapshots");
            const auto order = episode_order(specs.size(), run_seed);

            struct Slot {
                std::string trace;
                bool resumed = false;
                std::vector<mem::MemSnapshot> snapshots;
            };
            std::vector<Slot> slots(specs.size());
            parallel_for(order.size(), jobs, [&](std::size_t k) {
                const auto i = order[k];
                const auto trace_path = dir / (specs[i].id() + ".trace");
                if (fs::exists(trace_path)) {
                    try {
                        auto text = loop::read_file(trace_path.string());
                        if (loop::replay(text).matches()) {
                            slots[i] = {std::move(text), true, {}};
                            return;
                        }
                    } catch (const Error&) {
                    }
                }
                auto run = loop::run_episode(specs[i], config, run_seed, {nullptr, nullptr, manifest.all_snapshots});
                slots[i].trace = run.trace.str();
                slots[i].snapshots = std::move(run.snapshots);
                write_file(trace_path, slots[i].trace);
            });

            // Archive and score in sorted episode order.
            mem::MemStore store;
            json scores = json::array();
            for (std::size_t i = 0; i < specs.size(); ++i) {
                const auto& slot = slots[i];
                slot.resumed ? ++result.resumed : ++result.executed;
                const auto events = loop::verify_trace(slot.trace);
                auto memory = std::make_unique<mem::EpisodeMemory>(loop::fold_writes(events, events.size()));
                store.adopt(std::move(memory));
                store.archive(specs[i].id());
                const auto snap = *store.archived_snapshot(specs[i].id());
                write_file(dir / "snapshots" / mem::snapshot_file_name(snap.episode_id, snap.cycle), mem::serialize(snap));
                for (const auto& s : slot.snapshots) write_file(dir / "snapshots" / mem::snapshot_file_name(s.episode_id, s.cycle), mem::serialize(s));
                const auto sc = metrics::score_episode(metrics::view_trace(events));
                scores.push_back(metrics::to_json(sc));
                scored.episodes.emplace_back(run_seed, sc);
            }
            write_file(dir / "archive" / "index.json", canonical_dump(store.long_term().summaries()) + "\n");
            write_file(dir / "scores.json", canonical_dump(scores) + "\n");
            if (log) *log << system << " run" << r << ": " << specs.size() << " episodes\n";
        }
        systems.push_back(std::move(scored));
    }
    result.report = metrics::aggregate(systems, manifest.seed);
    write_file(root / "report.txt", metrics::render_table(result.report));
    write_file(root / "report.json", canonical_dump(metrics::to_json(result.report)) + "\n");
    return result;
}

/// Rebuilds the report of a finished run directory from its score files.
inline metrics::SuiteReport report_from_dir(const std::string& out_dir) {
    const fs::path root(out_dir);
    const auto manifest = manifest_from_json(json::parse(loop::read_file((root / "manifest.json").string())));
    const auto hash = suite_hash(manifest);
    std::vector<metrics::SystemScores> systems;
    for (const auto& system : manifest.systems) {
        metrics::SystemScores scored{system, hash, {}};
        for (int r = 0; r < manifest.runs; ++r) {
            const auto path = root / system / ("run" + std::to_string(r)) / "scores.json";
            for (const auto& j : json::parse(loop::read_file(path.string()))) {
                scored.episodes.emplace_back(manifest.run_seed(r), metrics::scores_from_json(j));
            }
        }
        systems.push_back(std::move(scored));
    }
    return metrics::aggregate(systems, manifest.seed);
}

}  // namespace scl::suite
