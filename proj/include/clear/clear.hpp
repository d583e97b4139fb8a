#pragma once

// Umbrella header for the CLEAR techno-economic modeling library.

#include "clear/breakeven.hpp"
#include "clear/csv_io.hpp"
#include "clear/errors.hpp"
#include "clear/fom.hpp"
#include "clear/json_io.hpp"
#include "clear/models.hpp"
#include "clear/reconfig.hpp"
#include "clear/svg.hpp"
#include "clear/textutil.hpp"
#include "clear/trend.hpp"
