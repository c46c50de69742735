#pragma once

#include "pcf/numberfield/field.hpp"
#include "pcf/numberfield/irreducibility.hpp"
#include "pcf/numberfield/primes.hpp"
