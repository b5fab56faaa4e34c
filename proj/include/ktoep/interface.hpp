#pragma once

#include "ktoep/edge.hpp"

namespace ktoep {

enum class InterfaceKind { shared_site, common_coupling };

/// Mirror-symmetric interface operator: right bulk T_A from `cell`, left bulk
/// its entrywise reflection. shared_site carries a center site with diagonal
/// eta coupled by q to the left half and s to the right half; common_coupling
/// joins the two halves directly by the single bond q.
struct InterfaceSpec {
    UnitCell cell;
    InterfaceKind kind = InterfaceKind::shared_site;
    Complex eta{};
    Complex q{1.0};
    Complex s{1.0};
};

InterfaceSpec make_shared_site(UnitCell cell, Complex eta, Complex q, Complex s);
InterfaceSpec make_common_coupling(UnitCell cell, Complex q);

/// shared_site: size 2mk+1 (center index mk); common_coupling: size 2mk.
TridiagonalC assemble_interface(const InterfaceSpec& spec, int m);

struct TruncationSpectrum {
    int n = 0;
    CVector values;
    std::optional<CMatrix> vectors;
};

TruncationSpectrum interface_spectrum(const InterfaceSpec& spec, int m, bool want_vectors = false);

enum class Parity { monopole, dipole, none };

/// monopole: ||w - Rw|| <= tol ||w||;  dipole: ||w + Rw|| <= tol ||w||.
/// R reverses the vector (center site for odd n, mid-bond for even n).
Parity classify_parity(const CVector& w, double tol = 1e-6);

enum class InterfaceModeKind { edge_induced, matched };

struct InterfaceMode {
    Complex lambda{};
    InterfaceModeKind kind = InterfaceModeKind::matched;
    Parity parity = Parity::none;
    CVector vector;          ///< truncated eigenvector, indexed symmetric about the interface
    Complex floquet_z{};     ///< decaying-extension parameter (|z| > 1 edge-induced, z1 matched)
    double decay_rate = 0.0; ///< per-cell ln of the envelope decay
    double residual = 0.0;   ///< ||M w - lambda w|| / ||w|| on the truncation
    int sign_a = 0;          ///< common-coupling parity sign (+1 monopole, -1 dipole)
};

/// Builds the antisymmetric interface vector (w_0 = 0) from the quasiperiodic
/// edge extension of the bulk edge mode; requires shared_site with q = s and a
/// bulk cell that actually supports an edge mode.
InterfaceMode edge_induced_mode(const InterfaceSpec& spec, int m);

/// F(lambda) = 2 q^2 z1(lambda) v_1 / (b_k v_k) + eta - lambda, with v the
/// Bloch vector of f(1/z1) normalized to v_k = 1. Roots are the matched
/// interface eigenvalues. Throws NumericalError when v_k degenerates
/// (edge-type lambda: a mode cannot be both edge-induced and matched).
Complex interface_f(const InterfaceSpec& spec, Complex lambda);

/// Common-coupling matching value for sign a = +/-1:
/// v_2/v_1 + (a q + a_1 - lambda)/b_1 (zero at interface eigenvalues).
Complex common_matching_value(const InterfaceSpec& spec, int sign_a, Complex lambda);

struct SearchRegion {
    double re_min, re_max, im_min, im_max;
};

/// Bounding box of the sampled Gamma, inflated by 10%.
SearchRegion default_search_region(const UnitCell& cell, int samples = 512);

struct RootSearchOptions {
    int grid = 20;               ///< Newton starts per axis
    int max_iter = 60;
    double f_tol = 1e-9;         ///< accept |F| below this at a converged root
    double merge_tol = 1e-7;     ///< duplicate roots merged within this distance
    double gamma_margin = 1e-3;  ///< roots closer than this to Gamma are rejected
    int verify_m = 100;          ///< truncation size (cells per side) for verification
    double verify_tol = 1e-6;    ///< max distance to a truncation eigenvalue
};

/// Newton from a coarse grid of starts over the region; every surviving root
/// is verified: |F| <= f_tol, off Gamma, eigenvector residual small, and an
/// eigenvalue of the m-cell truncation within verify_tol.
std::vector<InterfaceMode> matched_interface_roots(const InterfaceSpec& spec, const SearchRegion& region,
                                                   const RootSearchOptions& opt = {});

/// Same strategy for the common-coupling matching condition, both signs.
std::vector<InterfaceMode> common_coupling_match(const InterfaceSpec& spec, const SearchRegion& region,
                                                 const RootSearchOptions& opt = {});

}  // namespace ktoep
