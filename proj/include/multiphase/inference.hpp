// SPDX-License-Identifier: MIT
#pragma once

#include "multiphase/inference/fit.hpp"
#include "multiphase/inference/likelihood.hpp"
#include "multiphase/inference/returns.hpp"
