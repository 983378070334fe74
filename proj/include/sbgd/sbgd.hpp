#pragma once

// Swarm-based gradient descent for non-convex global optimization: agents
// carry positions and masses, mass flows to the current minimizer each
// iteration, and every agent moves by its own mass-scaled backtracking step.

#include "sbgd/communication.hpp"
#include "sbgd/core.hpp"
#include "sbgd/diagnostics.hpp"
#include "sbgd/driver.hpp"
#include "sbgd/errors.hpp"
#include "sbgd/experiment.hpp"
#include "sbgd/line_search.hpp"
#include "sbgd/objective.hpp"
#include "sbgd/objectives.hpp"
#include "sbgd/oracle.hpp"
#include "sbgd/trajectory_io.hpp"
