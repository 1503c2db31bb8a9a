#pragma once

// Umbrella header: effective classical potential of hydrogen in a uniform
// magnetic field, first-order variational approximation.

#include "vpth/effective_potential.hpp"
#include "vpth/errors.hpp"
#include "vpth/ground_state.hpp"
#include "vpth/oscillator.hpp"
#include "vpth/quadrature.hpp"
#include "vpth/series.hpp"
#include "vpth/smearing.hpp"
#include "vpth/strong_field.hpp"
#include "vpth/units.hpp"
#include "vpth/variational.hpp"
#include "vpth/weak_field.hpp"
