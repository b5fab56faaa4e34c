#pragma once

#include "ktoep/types.hpp"

#include <cstdint>
#include <vector>

namespace ktoep {

/// Chiral tight-binding interface chain with 2k'-periodic base couplings
/// (a_1..a_k', b_1..b_k') and multiplicative disorder (1 + u), u ~ U(-d, d),
/// independent per bond, derived from (seed, trial, bond index).
struct DisorderConfig {
    CVector base_a;
    CVector base_b;
    double d = 0.0;   ///< disorder amplitude, in [0, 1) so coupling signs survive
    int m = 25;       ///< dimer cells per side
    std::uint64_t seed = 0;
    int trials = 1;

    int kp() const { return static_cast<int>(base_a.size()); }
};

void validate(const DisorderConfig& cfg);

/// Zero-diagonal chain of odd size 4 m kp' ... bonds alternate a/b couplings,
/// mirrored around a shared center site; disorder is drawn independently for
/// every bond of the given trial.
TridiagonalC build_disordered_chain(const DisorderConfig& cfg, int trial);

/// Eigenvalue closest to zero and its eigenvector. For zero-diagonal odd-n
/// chains chiral symmetry forces |lambda_0| <= 1e-12 ||M||.
struct ZeroMode {
    Complex lambda0{};
    CVector vector;
};

ZeroMode zero_mode(const TridiagonalC& chain);

/// The multiplicative extension factors z_i (z_0 = 1, z_i = -a_{i-1} z_{i-1} / b_i)
/// for the same coupling realization as build_disordered_chain's right half.
std::vector<Complex> floquet_process(const DisorderConfig& cfg, int trial, int steps);

/// Per-trial least-squares slope of ln|z~_i| vs i over the cell-block process
/// z~_i = z_{kp*i}; the theoretical rate is ln|a_1...a_k' / (b_1...b_k')|.
struct DecayStats {
    std::vector<double> per_trial;
    double mean = 0.0;
    double stddev = 0.0;
    double theoretical = 0.0;
};

DecayStats decay_rate_stats(const DisorderConfig& cfg);

/// Log-linear fit of the per-cell envelope max|w| on the right side of the
/// interface, skipping 2 cells at the interface and 2 at the boundary. The
/// envelope is taken over each k_block-site cell; exact zeros (the vanishing
/// sublattice) drop out of the fit.
double eigenvector_decay_fit(const CVector& vector, int k_block);

}  // namespace ktoep
