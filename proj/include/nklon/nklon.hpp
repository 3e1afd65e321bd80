#pragma once

#include "nklon/basin.hpp"
#include "nklon/errors.hpp"
#include "nklon/experiment.hpp"
#include "nklon/lon.hpp"
#include "nklon/metrics.hpp"
#include "nklon/nk_model.hpp"
#include "nklon/rng.hpp"
#include "nklon/stats.hpp"
#include "nklon/validate.hpp"
