#pragma once

#include "ktoep/interface.hpp"

#include <cstdint>
#include <span>

namespace ktoep {

/// Dimer chain of 4m+1 unit-length resonators, mirror-symmetric about the
/// center resonator D0, with alternating gaps (s2 adjacent to D0).
struct ResonatorChain {
    int m = 10;           ///< dimers per side; N = 4m+1 resonators
    double s1 = 1.0;
    double s2 = 2.0;
    Complex v_b{1.0, 0.0};  ///< wave speed inside the resonators
    double delta = 1e-3;    ///< contrast
    int N() const { return 4 * m + 1; }
};

void validate(const ResonatorChain& chain);

/// N x N capacitance matrix: interior diagonal 1/s1 + 1/s2, boundary corners
/// 1/s1, center 2/s2, bonds alternating -1/s2 (center-adjacent), -1/s1.
TridiagonalR capacitance_matrix(const ResonatorChain& chain);

/// Generalized capacitance v_b^2 * C.
TridiagonalC generalized_capacitance(const ResonatorChain& chain);

/// Bulk unit cell of the right half (diagonal v_b^2*(1/s1+1/s2) twice,
/// couplings v_b^2*(-1/s1), v_b^2*(-1/s2)).
UnitCell bulk_cell(const ResonatorChain& chain);

/// Interface description equivalent to the capacitance matrix away from the
/// two boundary corners: shared_site(eta = 2/s2, q = s = -1/s2) over the bulk
/// cell, all scaled by v_b^2.
InterfaceSpec interface_spec(const ResonatorChain& chain);

/// Eigenvalues of the generalized capacitance matrix and the subwavelength
/// resonances omega_i = principal sqrt(delta * lambda_i), index-aligned.
/// Warns (via the returned flag) when eigenvalues are not simple.
struct ResonanceSet {
    CVector lambda;
    CVector omega;
    bool simple = true;
};

ResonanceSet resonances(const ResonatorChain& chain);

/// Capacitance matrix with the two spacings adjacent to D0 replaced by s_int
/// (center diagonal, center bonds, and the two neighbor diagonals all follow).
TridiagonalR capacitance_with_interface_spacing(const ResonatorChain& chain, double s_int);

/// Capacitance matrix from an explicit list of N-1 spacings.
TridiagonalR capacitance_from_spacings(std::span<const double> spacings);

/// The chain's unperturbed spacing list (mirror-symmetric, s2 at the center).
std::vector<double> chain_spacings(const ResonatorChain& chain);

struct SweepRow {
    double param = 0.0;
    int trial = 0;
    CVector values;  ///< spectrum of the generalized capacitance for this row
};

/// Replaces the interface spacings by each value in s_int_values.
std::vector<SweepRow> robustness_sweep_interface(const ResonatorChain& chain,
                                                 std::span<const double> s_int_values);

/// Multiplies every spacing by (1 + u), u ~ U(-level, level) i.i.d. per gap,
/// `trials` independent realizations per level, derived from `seed`.
std::vector<SweepRow> robustness_sweep_noise(const ResonatorChain& chain,
                                             std::span<const double> noise_levels, int trials,
                                             std::uint64_t seed);

}  // namespace ktoep
