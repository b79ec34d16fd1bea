#pragma once

#include "electorate/error.hpp"
#include "electorate/model.hpp"
#include "electorate/combinatorics.hpp"
#include "electorate/distribution.hpp"
#include "electorate/ensemble.hpp"
#include "electorate/dynamics.hpp"
#include "electorate/montecarlo.hpp"
#include "electorate/analysis.hpp"
#include "electorate/tables.hpp"
#include "electorate/verify.hpp"
