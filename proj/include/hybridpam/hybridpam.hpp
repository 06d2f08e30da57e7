#pragma once

#include "hybridpam/characterization.hpp"
#include "hybridpam/closed_chamber.hpp"
#include "hybridpam/equilibrium.hpp"
#include "hybridpam/errors.hpp"
#include "hybridpam/geometry.hpp"
#include "hybridpam/io.hpp"
#include "hybridpam/modes.hpp"
#include "hybridpam/multilayer.hpp"
#include "hybridpam/resistance.hpp"
#include "hybridpam/statics.hpp"
#include "hybridpam/types.hpp"
#include "hybridpam/units.hpp"
