#pragma once

#include "ktoep/types.hpp"

#include <array>
#include <utility>

namespace ktoep {

/// One period of a tridiagonal k-Toeplitz operator: diagonal a_1..a_k,
/// superdiagonal b_1..b_k, subdiagonal c_1..c_k (1-based in all docs).
/// b_k and c_k are the couplings that wrap into the next cell.
struct UnitCell {
    CVector a;
    CVector b;
    CVector c;

    int k() const { return static_cast<int>(a.size()); }
    bool symmetric(double tol = 1e-12) const { return (b - c).norm() <= tol * (1.0 + b.norm()); }
};

/// Validates lengths and nonzero couplings.
UnitCell make_unit_cell(CVector a, CVector b, CVector c);
inline UnitCell make_unit_cell(CVector a, CVector b) { return make_unit_cell(a, b, b); }

/// Blocks of the symbol f(z) = Am1 z^-1 + A0 + Ap1 z.
/// A0 is the k x k tridiagonal core; Am1 carries b_k at (k,1); Ap1 carries
/// c_k at (1,k). For k = 1 the three blocks are the scalars a1, b1, c1.
struct SymbolBlocks {
    CMatrix A0;
    CMatrix Am1;
    CMatrix Ap1;
};

SymbolBlocks symbol_blocks(const UnitCell& cell);

/// f(z) for z != 0. Corners: (1,k) = c_k z, (k,1) = b_k / z;
/// the k = 1 symbol is the scalar a1 + b1/z + c1 z.
CMatrix symbol_at(const UnitCell& cell, Complex z);

/// Leading/trailing (k-1) x (k-1) principal submatrices of A0.
/// Both are 0 x 0 for k = 1 (empty spectrum, not an error).
std::pair<CMatrix, CMatrix> principal_submatrices(const UnitCell& cell);

/// g(lambda) = det(A0 - lambda) - b_k^2 p(lambda) for symmetric cells, where
/// p is the inner continuant (0 for k=1, 1 for k=2, the (k-2) x (k-2)
/// tridiagonal determinant with diagonal a_2..a_{k-1} and couplings
/// b_2..b_{k-2} otherwise). Throws for non-symmetric cells.
Complex g_poly(const UnitCell& cell, Complex lambda);

/// A = (-1)^{k+1} prod b_i and the root radius r = sqrt(prod |b_i/c_i|).
/// The sign of A is pinned by det(f(e^{-i alpha}) - lambda) = 2 A cos(alpha) + g(lambda).
struct VieteData {
    Complex a_prod;
    double r;
};

VieteData viete_data(const UnitCell& cell);

/// Coefficients {C2, C1, C0} of the quadratic z det(f(z) - lambda) =
/// C2 z^2 + C1 z + C0, with C2 = (-1)^{k+1} prod c_i, C0 = (-1)^{k+1} prod b_i.
std::array<Complex, 3> floquet_coefficients(const UnitCell& cell, Complex lambda);

/// The two roots of z det(f(z) - lambda), |z1| <= |z2|.
std::pair<Complex, Complex> floquet_roots(const UnitCell& cell, Complex lambda);

/// Diagonal similarity onto the symmetric cell b'_i = c'_i = sqrt(b_i c_i)
/// (principal branch). `scaling` holds the in-cell weights d_1..d_k with
/// d_1 = 1; across cells the weights continue as d_{j+k} = cell_factor * d_j.
struct SymmetrizeResult {
    UnitCell cell;
    CVector scaling;
    Complex cell_factor;
};

SymmetrizeResult symmetrize(const UnitCell& cell);

/// Cell with indices shifted cyclically by `shift` (a_i -> a_{i+shift}).
UnitCell cyclic_shift(const UnitCell& cell, int shift);

}  // namespace ktoep
