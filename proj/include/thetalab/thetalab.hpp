#pragma once

#include "thetalab/bigfloat.hpp"
#include "thetalab/dav_chowla.hpp"
#include "thetalab/errors.hpp"
#include "thetalab/exact_arith.hpp"
#include "thetalab/gauss.hpp"
#include "thetalab/local_analysis.hpp"
#include "thetalab/parallel.hpp"
#include "thetalab/real_expr.hpp"
#include "thetalab/series.hpp"
