#pragma once

#include "exact.hpp"
#include "polygon.hpp"
#include "mutation.hpp"
#include "cusp.hpp"
#include "staircase.hpp"
#include "obstruction.hpp"
#include "perf_f1.hpp"
#include "tropical.hpp"
