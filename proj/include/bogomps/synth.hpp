#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "bogomps/gaussian.hpp"

namespace bogomps {

// Haar-random n×n unitary.
ComplexMatrix random_unitary(int n, std::mt19937_64& rng);

// K1·diag(e^r, e^-r)·K2 with r_q uniform in [0, r_max).
RealMatrix random_symplectic(int n, std::mt19937_64& rng, double r_max);

// Squeezers on the first modes (x squeezed), then the interferometer (identity when no seed), then uniform loss.
CovarianceMatrix synthetic_gbs(int n_modes, const std::vector<double>& squeezers,
                               std::optional<std::uint64_t> interferometer_seed, double eta);

// exp(tanh r · a†_1 a†_2)|0>
CovarianceMatrix two_mode_squeezed(double r);

// Independent two-mode squeezed pairs on modes (0,1), (2,3), ...
CovarianceMatrix paired_chain(int n_pairs, double r);

}  // namespace bogomps
