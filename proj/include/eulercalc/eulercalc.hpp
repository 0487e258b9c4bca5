#pragma once

#include "eulercalc/bundles.hpp"
#include "eulercalc/cellset.hpp"
#include "eulercalc/checked.hpp"
#include "eulercalc/complex.hpp"
#include "eulercalc/constructible.hpp"
#include "eulercalc/error.hpp"
#include "eulercalc/homology.hpp"
#include "eulercalc/raster.hpp"
#include "eulercalc/scene.hpp"
#include "eulercalc/simplicial_map.hpp"
#include "eulercalc/subdivision.hpp"
