#pragma once

#include "frx/errors.hpp"
#include "frx/types.hpp"
#include "frx/hyperbolic.hpp"
#include "frx/delta_shock.hpp"
#include "frx/wave_fan.hpp"
#include "frx/quadrature.hpp"
#include "frx/weak_form.hpp"
#include "frx/flux_limits.hpp"
#include "frx/fv_oracle.hpp"
