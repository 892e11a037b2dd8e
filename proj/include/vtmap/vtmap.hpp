#pragma once

#include "vtmap/approximant.hpp"
#include "vtmap/chebyshev.hpp"
#include "vtmap/errors.hpp"
#include "vtmap/maps.hpp"
#include "vtmap/resolution.hpp"
#include "vtmap/strategies.hpp"
