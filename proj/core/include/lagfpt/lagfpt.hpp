#pragma once

#include "lagfpt/errors.hpp"
#include "lagfpt/estimation.hpp"
#include "lagfpt/expansion.hpp"
#include "lagfpt/gbm.hpp"
#include "lagfpt/optimize.hpp"
#include "lagfpt/sampling.hpp"
#include "lagfpt/special_functions.hpp"
