#pragma once

#include "scl/action/builtins.hpp"
#include "scl/action/environment.hpp"
#include "scl/action/tool.hpp"
#include "scl/cognition/citation.hpp"
#include "scl/cognition/directives.hpp"
#include "scl/cognition/policy.hpp"
#include "scl/cognition/proposal.hpp"
#include "scl/control/controller.hpp"
#include "scl/control/decision.hpp"
#include "scl/control/dedup.hpp"
#include "scl/loop/config.hpp"
#include "scl/loop/replay.hpp"
#include "scl/loop/runtime.hpp"
#include "scl/loop/trace.hpp"
#include "scl/mem/episode_memory.hpp"
#include "scl/mem/executed.hpp"
#include "scl/mem/mem_store.hpp"
#include "scl/metrics/aggregate.hpp"
#include "scl/metrics/audit.hpp"
#include "scl/metrics/scores.hpp"
#include "scl/scenarios/generator.hpp"
#include "scl/scenarios/oracle.hpp"
#include "scl/scenarios/rules.hpp"
#include "scl/suite/manifest.hpp"
#include "scl/suite/runner.hpp"
