#pragma once

// Dense statevector core: states, circuits, measures, sampling.

#include "oraclelab/qsim/apply.hpp"
#include "oraclelab/qsim/circuit.hpp"
#include "oraclelab/qsim/errors.hpp"
#include "oraclelab/qsim/measurement.hpp"
#include "oraclelab/qsim/measures.hpp"
#include "oraclelab/qsim/random.hpp"
#include "oraclelab/qsim/rng.hpp"
#include "oraclelab/qsim/serialize.hpp"
#include "oraclelab/qsim/state.hpp"
