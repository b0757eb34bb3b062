#pragma once

#include <cstdint>
#include <random>

#include "bglab/linalg.hpp"

namespace bglab {

/// splitmix64 step; used to derive independent per-task seeds from one
/// user-facing seed so that parallel sweeps stay reproducible.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

using Rng = std::mt19937_64;

Rng make_rng(std::uint64_t seed, std::uint64_t salt = 0);

cplx random_phase(Rng& rng);

/// Standard complex Gaussian entries (real and imaginary N(0, 1/2)).
CMatrix random_ginibre(std::size_t dim, Rng& rng);

/// Haar-distributed unitary via QR of a Ginibre matrix with the usual
/// phase fix on the R diagonal.
CMatrix random_haar_unitary(std::size_t dim, Rng& rng);

CMatrix random_hermitian(std::size_t dim, Rng& rng);

/// Spectral projection of a random Hermitian matrix (kernel cut at 0);
/// rank is random but almost surely proper for dim >= 2.
CMatrix random_projection(std::size_t dim, Rng& rng);

}  // namespace bglab
