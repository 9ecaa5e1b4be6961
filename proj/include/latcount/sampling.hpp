#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "latcount/lattice.hpp"

namespace latcount {

using Rng = std::mt19937_64;

bool is_prime(std::uint64_t p);

// One draw from the Hecke family: the index-p sublattice
// {m in Z^d : <a, m> = 0 mod p} for a uniform nonzero functional a over F_p
// (up to scalars). `basis` is the integer basis of that sublattice.
struct HeckeDraw {
  std::vector<std::int64_t> functional;  // last nonzero entry normalised to 1
  IntMatrix basis;                       // rows span the sublattice, det = p
};

HeckeDraw hecke_draw(int d, std::uint64_t p, Rng& rng);

// Unimodular lattice k p^{-1/d} L_a from a Hecke draw, LLL-reduced, where k
// is a Haar-random rotation (skipped when rotate is false). As p grows these
// become equidistributed in the space of unimodular lattices; the rotation
// keeps them off the coordinate hyperplanes, where region boundaries live.
LatticeBasis hecke_sample(int d, std::uint64_t p, Rng& rng, bool rotate = true);

// Haar-random element of SO(d).
RowMatrix random_rotation(int d, Rng& rng);

struct ExactSampleStats {
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;
};

// Exact Haar sample of a unimodular lattice in R^2: a point of the standard
// fundamental domain drawn by rejection from the hyperbolic measure, mapped
// to a basis and rotated by a uniform angle.
LatticeBasis exact_sample_d2(Rng& rng, ExactSampleStats* stats = nullptr);

}  // namespace latcount
