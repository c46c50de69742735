#pragma once
#include "pcf/factorengine/certificate.hpp"
#include "pcf/factorengine/certificates.hpp"
#include "pcf/factorengine/factorization.hpp"
#include "pcf/factorengine/iterate.hpp"
#include "pcf/factorengine/modular.hpp"
