#pragma once

#include "latcount/lattice.hpp"

namespace latcount {

// max_m (prod_{i<=m} |b*_i|)^{-1} over the Gram-Schmidt lengths of an
// LLL-reduced basis; within 2^{d(d-1)/4} of alpha in both directions.
double alpha_proxy(const LatticeBasis& basis);

// Exact alpha for d = 2: max(1, 1/lambda_1), with lambda_1 found by scanning
// primitive coefficient vectors of a reduced basis up to `height`.
double exact_alpha_d2(const LatticeBasis& basis, int height = 100);

}  // namespace latcount
