// SPDX-License-Identifier: MIT
#pragma once

#include "multiphase/pde_oracle/chapman_kolmogorov.hpp"
#include "multiphase/pde_oracle/flux.hpp"
#include "multiphase/pde_oracle/identities.hpp"
#include "multiphase/pde_oracle/solver.hpp"
