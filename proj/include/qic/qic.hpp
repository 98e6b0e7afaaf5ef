#pragma once

// Umbrella header for the interference search simulator.

#include "qic/engine.hpp"
#include "qic/errors.hpp"
#include "qic/json_io.hpp"
#include "qic/optics.hpp"
#include "qic/oracle.hpp"
#include "qic/parallel.hpp"
#include "qic/rng.hpp"
#include "qic/statevector.hpp"
#include "qic/version.hpp"
