#pragma once

#include "optospring/analytic.hpp"
#include "optospring/budget.hpp"
#include "optospring/config.hpp"
#include "optospring/constants.hpp"
#include "optospring/csv.hpp"
#include "optospring/errors.hpp"
#include "optospring/fit.hpp"
#include "optospring/params.hpp"
#include "optospring/port.hpp"
#include "optospring/twophoton.hpp"
