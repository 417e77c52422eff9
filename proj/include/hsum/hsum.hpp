#pragma once

#include "hsum/complex.hpp"
#include "hsum/continuation.hpp"
#include "hsum/error.hpp"
#include "hsum/exact_eval.hpp"
#include "hsum/expr.hpp"
#include "hsum/index.hpp"
#include "hsum/json_io.hpp"
#include "hsum/mellin_oracle.hpp"
#include "hsum/polylog.hpp"
#include "hsum/quasi_shuffle.hpp"
#include "hsum/rational.hpp"
#include "hsum/relations.hpp"
#include "hsum/series.hpp"
#include "hsum/special_fn.hpp"
