#pragma once

#include "ktoep/interface.hpp"

#include <span>
#include <vector>

namespace ktoep {

/// Finite-difference discretization of -(1/mu0) d/dx((1/eps) du/dx) on a unit
/// cell with piecewise-constant permittivity: eps_inside on the resonator
/// intervals, eps_outside elsewhere. Grid of k cells, material interfaces
/// snapped to the nearest cell face (O(dx) geometric error).
struct FdmConfig {
    int k = 20;
    double eps_inside = 1.0;
    double eps_outside = 4.0;
    double mu0 = 1.0;
    /// Resonator intervals within [0, 1); may wrap when given beyond 1.
    std::vector<std::pair<double, double>> intervals{{0.2, 0.4}, {0.6, 0.8}};
};

void validate(const FdmConfig& cfg);

/// Real symmetric k-periodic cell: central differences with harmonic-mean
/// face coefficients of 1/eps. Bands of the homogeneous medium reduce to
/// (2 - 2 cos alpha)/(mu0 eps dx^2).
UnitCell assemble_fdm_cell(const FdmConfig& cfg);

/// Same discretization with the sampling origin shifted so the cut sits at
/// the center of the first resonator; this is the bulk cell seen from an
/// interface that mirrors the medium through a resonator center.
UnitCell fdm_interface_cell(const FdmConfig& cfg);

/// Band intervals [min, max] per branch of the (Hermitian-on-the-torus)
/// symbol, sorted ascending.
std::vector<std::pair<double, double>> band_intervals(const UnitCell& cell, int samples = 601);

struct B0ConvergenceRow {
    int k = 0;
    int index = 0;          ///< which sigma(B0) value (ascending)
    double value = 0.0;
    double distance = 0.0;  ///< distance to the nearest band
};

/// Distances of sigma(B0) values to the bands for each grid resolution.
/// Only values below window_max are reported (the continuum-relevant range);
/// window_max < 0 selects the top of band 2 at the coarsest k.
std::vector<B0ConvergenceRow> b0_convergence(const FdmConfig& cfg, std::span<const int> k_list,
                                             double window_max = -1.0);

struct ImpedanceRow {
    double omega2 = 0.0;
    double re_f = 0.0;
    double im_f = 0.0;
};

/// The matched-interface function F evaluated over omega^2 on the given grid,
/// for the resonator-centered mirror interface (eta and q taken from the
/// local coefficients at the cut). Throws when a grid point lies on a band.
std::vector<ImpedanceRow> impedance_curve(const FdmConfig& cfg, std::span<const double> gap_grid);

/// First spectral gap (top of band 1, bottom of band 2) of the cell.
std::pair<double, double> first_gap(const UnitCell& cell, int samples = 601);

}  // namespace ktoep
