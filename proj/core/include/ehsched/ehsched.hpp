#pragma once

// Umbrella header.

#include "ehsched/core.hpp"
#include "ehsched/exact.hpp"
#include "ehsched/experiments.hpp"
#include "ehsched/heuristics.hpp"
#include "ehsched/instance_io.hpp"
#include "ehsched/lp.hpp"
#include "ehsched/multicycle.hpp"
#include "ehsched/partial_cesi.hpp"
#include "ehsched/rng.hpp"
#include "ehsched/types.hpp"
