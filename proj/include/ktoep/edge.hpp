#pragma once

#include "ktoep/spectra.hpp"

#include <functional>

namespace ktoep {

/// Tolerances for edge-mode detection. All defaults overridable.
struct EdgeOptions {
    int contour_samples = 1024;    ///< quadrature nodes for C0 (one doubling self-check on top)
    int gamma_samples = 1024;      ///< sampling of Gamma for distance checks
    double c0_zero_tol = 1e-6;     ///< |C0| below this classifies lambda into G0
    double gamma_margin = 1e-6;    ///< candidates closer than this to Gamma are skipped
    double z_margin = 1e-8;        ///< |z| within 1 +/- this is "marginal", no verdict forced
    double contour_self_check = 1e-9;  ///< allowed |C0| drift when doubling the node count
};

/// Bloch data of a sigma(B0) candidate: [f(z) - lambda] v = 0 with v_k = 0,
/// v unit-normalized with its first nonzero entry real-positive, and
/// z = -b_k v_1 / (c_{k-1} v_{k-1}).  v_{k-1} = 0 puts z at infinity.
struct BlochData {
    CVector v;
    Complex z{};
    bool z_at_infinity = false;
    double residual = 0.0;  ///< ||(f(z) - lambda) v||
};

/// Eigenvalues of B0 (empty for k = 1).
std::vector<Complex> edge_candidates(const UnitCell& cell);

/// Requires lambda within 1e-8 of sigma(B0) and off Gamma.
BlochData bloch_data(const UnitCell& cell, Complex lambda);

/// Contour criterion C0(lambda) = (-1)^{k+1} det((1/2 pi i) contour integral of
/// (f(z)-lambda)^{-1} dz/z) over the circle of radius sqrt(|z1 z2|). The sign
/// normalization makes the symmetric dimer value 1/b1^2 when |b1| > |b2|.
/// lambda in G0 <=> C0(lambda) = 0. Throws NumericalError near Gamma
/// (|z1| ~ |z2|: pole on the contour) or when the doubling self-check fails.
Complex c0_value(const UnitCell& cell, Complex lambda, const EdgeOptions& opt = {});

/// Subset of sigma(B0) union sigma(B1) where |C0| < tol, away from Gamma.
std::vector<Complex> g0_set(const UnitCell& cell, const EdgeOptions& opt = {});

enum class Membership { B0, B1, Both };

struct EdgeModeReport {
    Complex lambda;
    CVector bloch_vector;
    Complex floquet_z{};
    bool z_at_infinity = false;
    double abs_z = 0.0;
    Complex c0{};
    bool is_edge = false;
    bool marginal = false;  ///< |z| within tolerance of 1 (on-Gamma): no verdict
    Membership membership = Membership::B0;
};

/// One report per sigma(B0) candidate. The |z| > 1 criterion and the
/// G0-membership criterion are both evaluated and must agree; disagreement
/// for a non-marginal candidate throws ConsistencyError.
std::vector<EdgeModeReport> edge_spectrum(const UnitCell& cell, const EdgeOptions& opt = {});

/// Limit set of the n x n truncation spectra: Gamma union G0.
struct OpenLimitResult {
    SpectralCurve gamma;
    std::vector<Complex> g0_points;
};

OpenLimitResult open_limit(const UnitCell& cell, int samples = 512, const EdgeOptions& opt = {});

/// Tracks each sigma(B0) eigenvalue along a cell homotopy t -> cell_at(t):
/// nearest-neighbor continuation, |z| per path, and the distance of each path
/// value to the sampled Gamma(t) (the gap margin).
struct HomotopyTrace {
    RVector t;
    CMatrix paths;             ///< (k-1) x |t|
    RMatrix abs_z;             ///< (k-1) x |t|, NaN where z is at infinity
    RMatrix gap_margin;        ///< (k-1) x |t|
    std::vector<int> collisions;  ///< t-indices where two paths collided (tracking restarted)
};

HomotopyTrace homotopy_sweep(const std::function<UnitCell(double)>& cell_at, const RVector& t_grid,
                             int gamma_samples = 512);

}  // namespace ktoep
