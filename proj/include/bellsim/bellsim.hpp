// bellsim.hpp
// Umbrella header.

#pragma once

#include "bellsim/matrix.hpp"
#include "bellsim/rng.hpp"
#include "bellsim/states.hpp"
#include "bellsim/measurements.hpp"
#include "bellsim/fixed_povm.hpp"
#include "bellsim/lhv.hpp"
#include "bellsim/stats.hpp"
#include "bellsim/config.hpp"
#include "bellsim/report.hpp"
#include "bellsim/scenario.hpp"
