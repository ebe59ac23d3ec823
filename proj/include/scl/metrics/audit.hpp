#pragma once

#include <string>
#include <vector>

#include "scl/control/controller.hpp"
#include "scl/metrics/trace_view.hpp"
#include "scl/scenarios/rules.hpp"

namespace scl::metrics {

struct AuditReport {
    std::vector<std::string> violations;
    int executed = 0;
    int approvals_checked = 0;

    [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Trace auditor for guarded execution. Every act must directly follow an
/// approve decision for the same call in the same cycle whose guard
/// report, re-evaluated against the memory folded up to that decision, is
/// complete and all true. The stop must rest on a guard that actually
/// held. Cycle phases must appear in loop order.
inline AuditReport audit_trace(const TraceView& v) {
    AuditReport r;
    auto flag = [&](std::size_t index, const std::string& what) {
        r.violations.push_back("event " + std::to_string(index) + ": " + what);
    };
    const auto& events = v.events;

    std::map<std::size_t, const DecideRecord*> decide_at;
    for (const auto& d : v.decisions) decide_at[d.index] = &d;

    for (const auto& a : v.acts) {
        ++r.executed;
        if (a.index == 0 || events[a.index - 1].phase != loop::Phase::decide) {
            flag(a.index, "act without a preceding decision");
            continue;
        }
        const auto* d = decide_at.at(a.index - 1);
        if (d->cycle != a.cycle) flag(a.index, "approval from another cycle");
        if (!d->decision.approved() || !d->decision.action || !(*d->decision.action == a.call)) {
            flag(a.index, "executed call was not the approved action");
            continue;
        }
        ++r.approvals_checked;
        std::vector<std::string> because;
        std::vector<cognition::Assertion> assertions;
        if (d->proposal) {
            because = d->proposal->value("because", std::vector<std::string>{});
            for (const auto& x : d->proposal->value("assertions", json::array())) {
                assertions.push_back({x.at("claim").get<std::string>(), x.at("evidence").get<std::string>()});
            }
        } else {
            const auto pending = d->state.latest.find(d->decision.releases);
            if (pending == d->state.latest.end()) {
                flag(a.index, "released pending action is not in memory");
                continue;
            }
            because = pending->second.value.value("because", std::vector<std::string>{});
        }
        const auto recomputed = control::guard_report(because, assertions, d->state);
        if (recomputed != d->decision.guard_report) flag(a.index, "guard report does not match memory at approval");
        for (const auto& g : recomputed) {
            if (!g.holds) flag(a.index, "approved with failing guard '" + g.citation + "'");
        }
    }

    // Stop condition.
    const auto& term = v.final_state.termination;
    if (!term.ready) {
        flag(events.size() - 1, "episode ended without a ready termination status");
    } else if (term.guard == TerminationGuard::budget_exhausted) {
        const int budget = v.init.at("config").at("budget").is_null() ? v.spec.budget
                                                                       : v.init.at("config").at("budget").get<int>();
        if (v.outcome.value("cycles_used", 0) < budget) flag(events.size() - 1, "budget guard before the budget was used");
    } else {
        const DecideRecord* stop = nullptr;
        for (const auto& d : v.decisions) {
            if (d.decision.approves_terminate()) stop = &d;
        }
        if (!stop) {
            flag(events.size() - 1, "terminated without an approved terminate decision");
        } else if (term.guard == TerminationGuard::goal_satisfied) {
            if (!scenarios::goal_met(v.spec, stop->state)) flag(stop->index, "goal_satisfied guard but goal not met");
            if (!stop->decision.all_guards_hold()) flag(stop->index, "terminate cites evidence that does not hold");
        } else if (term.guard == TerminationGuard::confidence_threshold) {
            const double threshold = v.init.at("config").at("confidence_threshold").get<double>();
            if (!stop->proposal || stop->proposal->value("confidence", 0.0) < threshold) {
                flag(stop->index, "confidence guard below threshold");
            }
        } else {
            flag(stop->index, "termination guard '" + std::string(to_string(term.guard)) + "' is not a checked guard");
        }
    }

    // Phase order inside each cycle.
    std::uint32_t cycle = 0;
    int stage = 0;  // 0 retrieve, 1 propose, 2 decide/act/mem_write, 3 snapshot
    for (std::size_t i = 1; i < events.size(); ++i) {
        const auto& e = events[i];
        if (e.phase == loop::Phase::terminate) {
            if (i + 1 != events.size()) flag(i, "terminate is not the last event");
            continue;
        }
        if (e.cycle != cycle) {
            if (e.cycle != cycle + 1 || e.phase != loop::Phase::retrieve) flag(i, "cycle does not open with retrieve");
            cycle = e.cycle;
            stage = 0;
            continue;
        }
        if (cycle == 0) continue;
        switch (e.phase) {
            case loop::Phase::propose:
                if (stage != 0) flag(i, "propose out of order");
                stage = 1;
                break;
            case loop::Phase::decide:
            case loop::Phase::act:
            case loop::Phase::mem_write:
                if (stage < 1 || stage > 2) flag(i, std::string(loop::to_string(e.phase)) + " out of order");
                stage = 2;
                break;
            case loop::Phase::snapshot:
                if (stage != 2) flag(i, "snapshot out of order");
                stage = 3;
                break;
            default: flag(i, "unexpected phase " + std::string(loop::to_string(e.phase)));
        }
    }
    return r;
}

}  // namespace scl::metrics
