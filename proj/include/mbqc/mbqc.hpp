#pragma once

// Umbrella header: exact simulation and fidelity analysis of
// measurement-based gates on weighted graph states produced by
// variable-range Ising evolution.

#include "mbqc/linalg.hpp"
#include "mbqc/operator_basis.hpp"
#include "mbqc/channel_repr.hpp"
#include "mbqc/geometry.hpp"
#include "mbqc/couplings.hpp"
#include "mbqc/measurement.hpp"
#include "mbqc/engine.hpp"
#include "mbqc/correction.hpp"
#include "mbqc/gates.hpp"
#include "mbqc/fidelity.hpp"
#include "mbqc/robustness.hpp"
#include "mbqc/io.hpp"
#include "mbqc/sweep.hpp"
#include "mbqc/validation.hpp"
