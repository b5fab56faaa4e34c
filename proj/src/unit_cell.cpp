#include "ktoep/unit_cell.hpp"

#include "ktoep/numerics.hpp"

#include <cmath>

namespace ktoep {

UnitCell make_unit_cell(CVector a, CVector b, CVector c) {
    if (a.size() < 1) throw std::invalid_argument("make_unit_cell: k must be >= 1");
    if (b.size() != a.size() || c.size() != a.size())
        throw std::invalid_argument("make_unit_cell: a, b, c must have equal length");
    if (!a.allFinite() || !b.allFinite() || !c.allFinite())
        throw std::invalid_argument("make_unit_cell: non-finite entries");
    for (Eigen::Index i = 0; i < b.size(); ++i) {
        if (b(i) == Complex(0.0, 0.0) || c(i) == Complex(0.0, 0.0))
            throw std::invalid_argument("make_unit_cell: zero coupling b_" + std::to_string(i + 1) +
                                        " or c_" + std::to_string(i + 1));
    }
    return UnitCell{std::move(a), std::move(b), std::move(c)};
}

SymbolBlocks symbol_blocks(const UnitCell& cell) {
    const int k = cell.k();
    SymbolBlocks blocks;
    blocks.A0 = CMatrix::Zero(k, k);
    blocks.Am1 = CMatrix::Zero(k, k);
    blocks.Ap1 = CMatrix::Zero(k, k);
    for (int i = 0; i < k; ++i) blocks.A0(i, i) = cell.a(i);
    for (int i = 0; i + 1 < k; ++i) {
        blocks.A0(i, i + 1) = cell.b(i);
        blocks.A0(i + 1, i) = cell.c(i);
    }
    blocks.Am1(k - 1, 0) = cell.b(k - 1);
    blocks.Ap1(0, k - 1) = cell.c(k - 1);
    return blocks;
}

CMatrix symbol_at(const UnitCell& cell, Complex z) {
    if (z == Complex(0.0, 0.0)) throw std::invalid_argument("symbol_at: z must be nonzero");
    const int k = cell.k();
    CMatrix f = CMatrix::Zero(k, k);
    for (int i = 0; i < k; ++i) f(i, i) = cell.a(i);
    for (int i = 0; i + 1 < k; ++i) {
        f(i, i + 1) = cell.b(i);
        f(i + 1, i) = cell.c(i);
    }
    f(k - 1, 0) += cell.b(k - 1) / z;
    f(0, k - 1) += cell.c(k - 1) * z;
    return f;
}

std::pair<CMatrix, CMatrix> principal_submatrices(const UnitCell& cell) {
    const int k = cell.k();
    const CMatrix a0 = symbol_blocks(cell).A0;
    CMatrix b0 = a0.topLeftCorner(k - 1, k - 1);
    CMatrix b1 = a0.bottomRightCorner(k - 1, k - 1);
    return {std::move(b0), std::move(b1)};
}

Complex g_poly(const UnitCell& cell, Complex lambda) {
    if (!cell.symmetric())
        throw std::invalid_argument("g_poly: cell must be symmetric (b = c); symmetrize first");
    const int k = cell.k();
    // det(A0 - lambda) by the standard continuant recurrence.
    auto tridet = [&](int first, int last) -> Complex {
        // determinant of the symmetric tridiagonal slice a_first..a_last (0-based)
        Complex dm2 = 1.0, dm1 = 1.0;
        for (int i = first; i <= last; ++i) {
            Complex d = (cell.a(i) - lambda) * dm1;
            if (i > first) d -= cell.b(i - 1) * cell.b(i - 1) * dm2;
            dm2 = dm1;
            dm1 = d;
        }
        return dm1;
    };
    const Complex det_a0 = tridet(0, k - 1);
    Complex p;
    if (k == 1)
        p = 0.0;
    else if (k == 2)
        p = 1.0;
    else
        p = tridet(1, k - 2);
    return det_a0 - cell.b(k - 1) * cell.b(k - 1) * p;
}

VieteData viete_data(const UnitCell& cell) {
    const int k = cell.k();
    Complex prod_b = 1.0;
    double r2 = 1.0;
    for (int i = 0; i < k; ++i) {
        prod_b *= cell.b(i);
        r2 *= std::abs(cell.b(i)) / std::abs(cell.c(i));
    }
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;  // (-1)^{k+1}
    return {sign * prod_b, std::sqrt(r2)};
}

std::array<Complex, 3> floquet_coefficients(const UnitCell& cell, Complex lambda) {
    const int k = cell.k();
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    Complex prod_b = 1.0, prod_c = 1.0;
    for (int i = 0; i < k; ++i) {
        prod_b *= cell.b(i);
        prod_c *= cell.c(i);
    }
    const Complex c2 = sign * prod_c;
    const Complex c0 = sign * prod_b;
    // middle coefficient from two symbol evaluations: P(z) = z det(f(z)-lambda)
    auto p = [&](Complex z) {
        return z * (symbol_at(cell, z) - lambda * CMatrix::Identity(k, k)).determinant();
    };
    const Complex c1 = 0.5 * (p(Complex(1.0)) - p(Complex(-1.0)));
    return {c2, c1, c0};
}

std::pair<Complex, Complex> floquet_roots(const UnitCell& cell, Complex lambda) {
    const auto c = floquet_coefficients(cell, lambda);
    return quadratic_roots(c[0], c[1], c[2]);
}

SymmetrizeResult symmetrize(const UnitCell& cell) {
    const int k = cell.k();
    SymmetrizeResult out;
    CVector b(k);
    for (int i = 0; i < k; ++i) b(i) = std::sqrt(cell.b(i) * cell.c(i));
    out.cell = make_unit_cell(cell.a, b, b);
    out.scaling = CVector(k);
    out.scaling(0) = 1.0;
    Complex d = 1.0;
    for (int i = 0; i + 1 < k; ++i) {
        d *= std::sqrt(cell.b(i) / cell.c(i));
        out.scaling(i + 1) = d;
    }
    out.cell_factor = d * std::sqrt(cell.b(k - 1) / cell.c(k - 1));
    return out;
}

UnitCell cyclic_shift(const UnitCell& cell, int shift) {
    const int k = cell.k();
    const int s = ((shift % k) + k) % k;
    CVector a(k), b(k), c(k);
    for (int i = 0; i < k; ++i) {
        a(i) = cell.a((i + s) % k);
        b(i) = cell.b((i + s) % k);
        c(i) = cell.c((i + s) % k);
    }
    return UnitCell{std::move(a), std::move(b), std::move(c)};
}

}  // namespace ktoep
