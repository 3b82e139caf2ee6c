#pragma once

#include "mfdfa/csv.hpp"
#include "mfdfa/errors.hpp"
#include "mfdfa/fluctuation.hpp"
#include "mfdfa/pipeline.hpp"
#include "mfdfa/report_io.hpp"
#include "mfdfa/scaling.hpp"
#include "mfdfa/segmentation.hpp"
#include "mfdfa/surrogate.hpp"
#include "mfdfa/synth.hpp"
#include "mfdfa/time_series.hpp"
#include "mfdfa/version.hpp"
