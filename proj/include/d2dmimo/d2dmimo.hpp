// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "d2dmimo/analytic.hpp"
#include "d2dmimo/errors.hpp"
#include "d2dmimo/experiments.hpp"
#include "d2dmimo/model.hpp"
#include "d2dmimo/montecarlo.hpp"
#include "d2dmimo/rng.hpp"
#include "d2dmimo/units.hpp"
