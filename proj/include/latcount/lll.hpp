#pragma once

#include <vector>

#include "latcount/lattice.hpp"

namespace latcount {

struct LllResult {
  LatticeBasis basis;   // reduced basis
  IntMatrix transform;  // unimodular; reduced rows = transform * input rows
};

// LLL reduction (floating-point Gram-Schmidt) with Lovasz parameter delta.
// The reduced rows are recomputed from the integer transform with compensated
// arithmetic, so they are exact lattice vectors of the input basis.
LllResult lll_reduce(const LatticeBasis& basis, double delta = 0.99);

// Squared Gram-Schmidt norms |b*_i|^2 of the rows, in order.
std::vector<double> gram_schmidt_sq_norms(const RowMatrix& rows);

// Gram-Schmidt coefficients mu (strictly lower triangular part used) and
// squared norms of the rows.
void gram_schmidt(const RowMatrix& rows, RowMatrix& mu, std::vector<double>& sq_norms);

}  // namespace latcount
