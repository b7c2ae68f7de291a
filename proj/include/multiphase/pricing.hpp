// SPDX-License-Identifier: MIT
#pragma once

#include "multiphase/pricing/black_scholes.hpp"
#include "multiphase/pricing/surface.hpp"
#include "multiphase/pricing/terms.hpp"
#include "multiphase/pricing/two_phase_call.hpp"
