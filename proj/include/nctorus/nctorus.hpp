#pragma once

#include "nctorus/errors.hpp"
#include "nctorus/core/deformation.hpp"
#include "nctorus/core/element.hpp"
#include "nctorus/core/kernel.hpp"
#include "nctorus/core/algebra.hpp"
#include "nctorus/gauge.hpp"
#include "nctorus/powers_rieffel.hpp"
#include "nctorus/spectral.hpp"
#include "nctorus/oracle.hpp"
#include "nctorus/io.hpp"
#include "nctorus/random.hpp"
#include "nctorus/invariants.hpp"
#include "nctorus/config.hpp"
#include "nctorus/commands.hpp"
