#pragma once

#include "ftcons/errors.hpp"
#include "ftcons/fixed_time_math.hpp"
#include "ftcons/graph_topology.hpp"
#include "ftcons/time_scaling.hpp"
#include "ftcons/integrators.hpp"
#include "ftcons/protocols.hpp"
#include "ftcons/sim_engine.hpp"
#include "ftcons/scenario.hpp"
#include "ftcons/analysis.hpp"
