#pragma once

#include "convspec/char_fn.hpp"
#include "convspec/config.hpp"
#include "convspec/errors.hpp"
#include "convspec/forward_oracle.hpp"
#include "convspec/grid.hpp"
#include "convspec/inversion.hpp"
#include "convspec/main_equation.hpp"
#include "convspec/quadrature.hpp"
#include "convspec/recovery.hpp"
#include "convspec/spectrum.hpp"
#include "convspec/stability_lab.hpp"
