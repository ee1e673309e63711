#pragma once

#include "caterlab/batteries.hpp"
#include "caterlab/cyclic.hpp"
#include "caterlab/errors.hpp"
#include "caterlab/explorer.hpp"
#include "caterlab/lemmas.hpp"
#include "caterlab/numeric.hpp"
#include "caterlab/quadrature.hpp"
#include "caterlab/random.hpp"
#include "caterlab/rearrangement.hpp"
#include "caterlab/report.hpp"
#include "caterlab/tuple.hpp"

namespace caterlab {
inline constexpr const char* kVersion = "0.1.0";
}
