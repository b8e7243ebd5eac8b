#pragma once

#include "pcog/error.hpp"
#include "pcog/rational.hpp"
#include "pcog/graph.hpp"
#include "pcog/goal.hpp"
#include "pcog/optima.hpp"
#include "pcog/game.hpp"
#include "pcog/lp.hpp"
#include "pcog/core.hpp"
#include "pcog/characterize.hpp"
#include "pcog/reductions.hpp"
