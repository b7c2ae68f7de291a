// SPDX-License-Identifier: MIT
#pragma once

#include "multiphase/numerics/hessian.hpp"
#include "multiphase/numerics/nelder_mead.hpp"
#include "multiphase/numerics/quadrature.hpp"
#include "multiphase/numerics/rng.hpp"
#include "multiphase/numerics/roots.hpp"
#include "multiphase/numerics/special.hpp"
