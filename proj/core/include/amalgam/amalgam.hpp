#pragma once

#include "amalgam/exponents.hpp"
#include "amalgam/extended_real.hpp"
#include "amalgam/field_io.hpp"
#include "amalgam/generators.hpp"
#include "amalgam/grid.hpp"
#include "amalgam/kernel.hpp"
#include "amalgam/log.hpp"
#include "amalgam/norm_result.hpp"
#include "amalgam/propagator.hpp"
#include "amalgam/property_suite.hpp"
#include "amalgam/report.hpp"
#include "amalgam/verify.hpp"
#include "amalgam/version.hpp"
#include "amalgam/wiener.hpp"
