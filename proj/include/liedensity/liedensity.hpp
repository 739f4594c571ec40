#pragma once

#include "liedensity/bounds.hpp"
#include "liedensity/cache.hpp"
#include "liedensity/density.hpp"
#include "liedensity/engine.hpp"
#include "liedensity/ivpoly.hpp"
#include "liedensity/lattice_map.hpp"
#include "liedensity/numeric.hpp"
#include "liedensity/parallel.hpp"
#include "liedensity/report.hpp"
#include "liedensity/root_system.hpp"
#include "liedensity/verify.hpp"
