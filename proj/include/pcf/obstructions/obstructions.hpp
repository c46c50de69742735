#pragma once

#include "pcf/obstructions/audit.hpp"
#include "pcf/obstructions/disc.hpp"
#include "pcf/obstructions/nonabelian.hpp"
#include "pcf/obstructions/norms.hpp"
#include "pcf/obstructions/replay.hpp"
