#pragma once

// Umbrella header: torus percolation, Cheeger solvers, flip gradients,
// the H_n event system, and the Monte Carlo experiment harness.

#include "perciso/config.hpp"
#include "perciso/cuts.hpp"
#include "perciso/errors.hpp"
#include "perciso/events.hpp"
#include "perciso/exact_solver.hpp"
#include "perciso/experiments.hpp"
#include "perciso/flips.hpp"
#include "perciso/heuristic.hpp"
#include "perciso/io.hpp"
#include "perciso/percolation.hpp"
#include "perciso/rational.hpp"
#include "perciso/rng.hpp"
#include "perciso/torus.hpp"
