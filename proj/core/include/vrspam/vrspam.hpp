#pragma once

#include "vrspam/analysis.hpp"
#include "vrspam/cv.hpp"
#include "vrspam/dataio.hpp"
#include "vrspam/objective.hpp"
#include "vrspam/regularizer.hpp"
#include "vrspam/rng.hpp"
#include "vrspam/solvers.hpp"
#include "vrspam/types.hpp"
