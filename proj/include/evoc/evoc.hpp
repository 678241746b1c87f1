#pragma once

#include "evoc/action.hpp"
#include "evoc/engine.hpp"
#include "evoc/experiments.hpp"
#include "evoc/fitness.hpp"
#include "evoc/io.hpp"
#include "evoc/metrics.hpp"
#include "evoc/model.hpp"
#include "evoc/operators.hpp"
#include "evoc/rng.hpp"
#include "evoc/version.hpp"
