#pragma once

#include "ktoep/unit_cell.hpp"

#include <span>
#include <vector>

namespace ktoep {

/// Sampled algebraic curve in the complex plane: k eigenvalue branches over a
/// uniform alpha grid on [-pi, pi). branches is k x samples, continuity-sorted
/// column to column by greedy nearest-neighbor matching.
struct SpectralCurve {
    RVector alpha;
    CMatrix branches;

    int branch_count() const { return static_cast<int>(branches.rows()); }
    int samples() const { return static_cast<int>(branches.cols()); }
    std::vector<Complex> points() const;
};

/// sigma_det: eigenvalues of f(e^{i alpha}) over the alpha grid.
SpectralCurve essential_spectrum(const UnitCell& cell, int samples = 512);

/// Gamma: eigenvalues of f(r e^{i alpha}) at the root radius r. Coincides
/// with essential_spectrum for symmetric cells.
SpectralCurve gamma_set(const UnitCell& cell, int samples = 512);

/// Winding number of alpha -> det(f(e^{i alpha}) - lambda) about 0.
/// lambda in the winding region <=> nonzero. Throws when lambda is within
/// 1e-6 of the sampled essential spectrum.
int winding_region_membership(const UnitCell& cell, Complex lambda, int samples = 512);

/// n = m*k truncation repeating (a, b, c) periodically.
TridiagonalC truncate(const UnitCell& cell, int m_cells);

/// Distance from a point to the curve treated as closed polylines per branch
/// (resolution-limited by the sampling).
double distance_to_curve(const SpectralCurve& curve, Complex lambda);

/// max over `points` of the distance to (curve union extra_points):
/// the directed Hausdorff distance from the point set to the limit set.
double directed_hausdorff(std::span<const Complex> points, const SpectralCurve& curve,
                          std::span<const Complex> extra_points = {});

}  // namespace ktoep
