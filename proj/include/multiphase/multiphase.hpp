// SPDX-License-Identifier: MIT
#pragma once

// Everything except the command-line front end (multiphase/cli.hpp).

#include "multiphase/error.hpp"
#include "multiphase/inference.hpp"
#include "multiphase/numerics.hpp"
#include "multiphase/pde_oracle.hpp"
#include "multiphase/phase_kernel.hpp"
#include "multiphase/pricing.hpp"
