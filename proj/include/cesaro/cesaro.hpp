#pragma once

#include "error.hpp"
#include "scalar.hpp"
#include "kernels.hpp"
#include "seqcalc.hpp"
#include "weights.hpp"
#include "special.hpp"
#include "matrix.hpp"
#include "opcalc.hpp"
#include "random.hpp"
