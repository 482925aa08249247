#pragma once

#include "rr/bigint.hpp"
#include "rr/cf_core.hpp"
#include "rr/constructions.hpp"
#include "rr/experiments.hpp"
#include "rr/identities.hpp"
#include "rr/measure_bounds.hpp"
#include "rr/sampling.hpp"
#include "rr/stats.hpp"
#include "rr/theory.hpp"
