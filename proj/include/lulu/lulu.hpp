#pragma once

// Umbrella header.

#include "lulu/analysis.hpp"
#include "lulu/cascade.hpp"
#include "lulu/distribution.hpp"
#include "lulu/event_calculus.hpp"
#include "lulu/exact.hpp"
#include "lulu/expr.hpp"
#include "lulu/filter.hpp"
#include "lulu/pbf.hpp"
#include "lulu/polynomial.hpp"
#include "lulu/simulate.hpp"
