#pragma once

// abelsum: exact closed forms for slowly convergent classical series
// (periodic-coefficient harmonic sums, alternating lambda-series, digamma at
// rationals, Dirichlet L(1,chi)) with an independent numerical oracle.

#include "abelsum/alternating.hpp"
#include "abelsum/characters.hpp"
#include "abelsum/classics.hpp"
#include "abelsum/digamma.hpp"
#include "abelsum/errors.hpp"
#include "abelsum/json_io.hpp"
#include "abelsum/ntheory.hpp"
#include "abelsum/oracle.hpp"
#include "abelsum/periodic.hpp"
#include "abelsum/rational.hpp"
#include "abelsum/real.hpp"
#include "abelsum/symbolic.hpp"
