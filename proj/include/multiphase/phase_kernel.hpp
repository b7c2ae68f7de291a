// SPDX-License-Identifier: MIT
#pragma once

#include "multiphase/phase_kernel/density_grid.hpp"
#include "multiphase/phase_kernel/moments.hpp"
#include "multiphase/phase_kernel/monte_carlo.hpp"
#include "multiphase/phase_kernel/params.hpp"
#include "multiphase/phase_kernel/system.hpp"
#include "multiphase/phase_kernel/three_phase.hpp"
#include "multiphase/phase_kernel/two_phase.hpp"
