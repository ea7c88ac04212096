#pragma once

#include "erp/averaging.hpp"
#include "erp/capm.hpp"
#include "erp/date.hpp"
#include "erp/error.hpp"
#include "erp/historical.hpp"
#include "erp/implied.hpp"
#include "erp/ingest.hpp"
#include "erp/svg.hpp"
#include "erp/timeseries.hpp"
#include "erp/commands.hpp"
