#pragma once

#include "exact_linalg.hpp"
#include "holonomy.hpp"
#include "klein_surface.hpp"
#include "orientability.hpp"
#include "real_torus.hpp"
#include "sw_localization.hpp"
#include "theta_forms.hpp"
