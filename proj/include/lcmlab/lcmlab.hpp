#pragma once

#include "lcmlab/bigint.hpp"
#include "lcmlab/experiments.hpp"
#include "lcmlab/factor_cache.hpp"
#include "lcmlab/irreducibility.hpp"
#include "lcmlab/polynomial.hpp"
#include "lcmlab/primes.hpp"
#include "lcmlab/rational.hpp"
#include "lcmlab/report_io.hpp"
#include "lcmlab/tuples.hpp"
#include "lcmlab/valuation.hpp"
#include "lcmlab/zerosum.hpp"
