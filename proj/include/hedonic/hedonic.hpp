#pragma once

// Everything except the command-line front end.

#include "hedonic/error.hpp"
#include "hedonic/partition.hpp"
#include "hedonic/formula.hpp"
#include "hedonic/parse.hpp"
#include "hedonic/logic.hpp"
#include "hedonic/deviation.hpp"
#include "hedonic/game.hpp"
#include "hedonic/cnf.hpp"
#include "hedonic/dpll.hpp"
#include "hedonic/solve.hpp"
#include "hedonic/concepts.hpp"
