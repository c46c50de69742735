#pragma once

#include "pcf/pcforbits/cyclo.hpp"
#include "pcf/pcforbits/exact_type.hpp"
#include "pcf/pcforbits/misiurewicz.hpp"
#include "pcf/pcforbits/orbit.hpp"
