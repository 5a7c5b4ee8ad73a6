#pragma once

#include "fitscore/aggregate.hpp"
#include "fitscore/analysis.hpp"
#include "fitscore/big_matrix.hpp"
#include "fitscore/commands.hpp"
#include "fitscore/compose.hpp"
#include "fitscore/dfa.hpp"
#include "fitscore/error.hpp"
#include "fitscore/fixtures.hpp"
#include "fitscore/lts.hpp"
#include "fitscore/model_io.hpp"
#include "fitscore/numeric.hpp"
#include "fitscore/oracle.hpp"
#include "fitscore/product.hpp"
#include "fitscore/recurrence.hpp"
#include "fitscore/scaled.hpp"
#include "fitscore/score.hpp"
