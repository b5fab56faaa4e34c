#include "ktoep/numerics.hpp"
#include "ktoep/rng.hpp"
#include "ktoep/unit_cell.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace ktoep;

namespace {

UnitCell dimer(Complex a1, Complex a2, Complex b1, Complex b2) {
    CVector a(2), b(2);
    a << a1, a2;
    b << b1, b2;
    return make_unit_cell(a, b, b);
}

UnitCell random_symmetric_cell(int k, std::uint64_t seed) {
    CVector a(k), b(k);
    for (int i = 0; i < k; ++i) {
        a(i) = Complex(2.0 * rng::uniform01(seed, 0, i) - 1.0, 2.0 * rng::uniform01(seed, 1, i) - 1.0);
        b(i) = Complex(2.0 * rng::uniform01(seed, 2, i) - 1.0, 2.0 * rng::uniform01(seed, 3, i) - 1.0) +
               Complex(1.5, 0.0);
    }
    return make_unit_cell(a, b, b);
}

}  // namespace

TEST_CASE("make_unit_cell validation") {
    CVector one = CVector::Ones(1), zero = CVector::Zero(1);
    CHECK_NOTHROW(make_unit_cell(zero, one, one));  // discrete Laplacian hop
    CHECK_NOTHROW(dimer(1.2, 2.0, Complex(0.8, -0.4), Complex(1.2, -0.2)));
    CHECK_THROWS_AS(make_unit_cell(zero, zero, one), std::invalid_argument);
    CHECK_THROWS_AS(make_unit_cell(CVector::Zero(2), one, one), std::invalid_argument);
}

TEST_CASE("symbol_at scalar and dimer forms") {
    const UnitCell lap = make_unit_cell(CVector::Zero(1), CVector::Ones(1), CVector::Ones(1));
    const double alpha = 0.37;
    CHECK(std::abs(symbol_at(lap, std::polar(1.0, alpha))(0, 0) - 2.0 * std::cos(alpha)) < 1e-14);

    const UnitCell d = dimer(0.4, -0.7, Complex(1.0, 0.5), Complex(2.0, -0.25));
    const CMatrix f1 = symbol_at(d, Complex(1.0));
    CHECK(std::abs(f1(0, 1) - (d.b(0) + d.b(1))) < 1e-14);
    CHECK(std::abs(f1(1, 0) - (d.b(0) + d.b(1))) < 1e-14);

    // the dimer symbol is [[a1, b1 + b2 z],[b1 + b2/z, a2]]
    const Complex z(0.3, 1.1);
    const CMatrix f = symbol_at(d, z);
    CHECK(std::abs(f(0, 0) - d.a(0)) < 1e-14);
    CHECK(std::abs(f(0, 1) - (d.b(0) + d.b(1) * z)) < 1e-14);
    CHECK(std::abs(f(1, 0) - (d.b(0) + d.b(1) / z)) < 1e-14);
    CHECK(std::abs(f(1, 1) - d.a(1)) < 1e-14);

    CHECK_THROWS_AS(symbol_at(d, Complex(0.0)), std::invalid_argument);
}

TEST_CASE("symbol blocks carry the wrap couplings in the corners") {
    const UnitCell c = random_symmetric_cell(4, 5);
    const auto blocks = symbol_blocks(c);
    CHECK(std::abs(blocks.Am1(3, 0) - c.b(3)) < 1e-15);
    CHECK(std::abs(blocks.Ap1(0, 3) - c.c(3)) < 1e-15);
    CHECK(blocks.Am1.norm() == doctest::Approx(std::abs(c.b(3))));
    CHECK(blocks.Ap1.norm() == doctest::Approx(std::abs(c.c(3))));
    const Complex z(0.7, -0.2);
    const CMatrix f = blocks.Am1 / z + blocks.A0 + blocks.Ap1 * z;
    CHECK((f - symbol_at(c, z)).norm() < 1e-14);
}

TEST_CASE("principal submatrices") {
    const UnitCell d = dimer(1.2, 2.0, 1.0, 2.0);
    const auto [b0, b1] = principal_submatrices(d);
    CHECK(b0.rows() == 1);
    CHECK(std::abs(b0(0, 0) - Complex(1.2)) < 1e-15);
    CHECK(std::abs(b1(0, 0) - Complex(2.0)) < 1e-15);

    CVector a3 = CVector::Zero(3), b3 = CVector::Ones(3);
    const auto [t0, t1] = principal_submatrices(make_unit_cell(a3, b3, b3));
    const auto vals = eigs_dense(t0, false).values;
    CHECK(std::abs(vals(0) + 1.0) < 1e-12);
    CHECK(std::abs(vals(1) - 1.0) < 1e-12);

    const UnitCell lap = make_unit_cell(CVector::Zero(1), CVector::Ones(1), CVector::Ones(1));
    CHECK(principal_submatrices(lap).first.rows() == 0);
}

TEST_CASE("g_poly closed forms") {
    const UnitCell lap = make_unit_cell(CVector::Constant(1, Complex(0.4, 0.1)), CVector::Ones(1),
                                        CVector::Ones(1));
    const Complex lam(0.2, -0.3);
    CHECK(std::abs(g_poly(lap, lam) - (Complex(0.4, 0.1) - lam)) < 1e-14);

    // equal-diagonal dimer: g = lam^2 - 2 a1 lam + a1^2 - b1^2 - b2^2
    const Complex a1(0.3, 0.8), b1(1.0, -0.2), b2(0.5, 0.6);
    const UnitCell d = dimer(a1, a1, b1, b2);
    const Complex expected = lam * lam - 2.0 * a1 * lam + a1 * a1 - b1 * b1 - b2 * b2;
    CHECK(std::abs(g_poly(d, lam) - expected) < 1e-13);
}

TEST_CASE("g_poly k = 3 against a brute-force determinant") {
    const UnitCell c = random_symmetric_cell(3, 17);
    const Complex lam(0.4, 0.2);
    const CMatrix a0 = symbol_blocks(c).A0;
    const Complex det_a0 = (a0 - lam * CMatrix::Identity(3, 3)).determinant();
    const Complex p = c.a(1) - lam;  // inner 1x1 block
    CHECK(std::abs(g_poly(c, lam) - (det_a0 - c.b(2) * c.b(2) * p)) < 1e-12);

    CVector cc = c.b;
    cc(0) += 0.5;
    CHECK_THROWS_AS(g_poly(UnitCell{c.a, c.b, cc}, lam), std::invalid_argument);
}

TEST_CASE("viete_data radius and product") {
    CHECK(viete_data(random_symmetric_cell(3, 23)).r == doctest::Approx(1.0));

    CVector a = CVector::Zero(2), b(2), c(2);
    b << 2.0, 2.0;
    c << 1.0, 1.0;
    CHECK(viete_data(make_unit_cell(a, b, c)).r == doctest::Approx(2.0));

    const UnitCell d = dimer(0.0, 0.0, 1.0, 2.0);
    CHECK(std::abs(viete_data(d).a_prod - Complex(-2.0)) < 1e-15);  // (-1)^{k+1} prod b at k = 2
}

TEST_CASE("collapsed symbol identity det(f(e^{-ia}) - lam) = 2 A cos(a) + g(lam)") {
    for (const int k : {1, 2, 3, 4}) {
        const UnitCell c = random_symmetric_cell(k, 31 + static_cast<std::uint64_t>(k));
        const auto vd = viete_data(c);
        for (std::uint64_t s = 0; s < 5; ++s) {
            const double alpha = 2.0 * std::numbers::pi * rng::uniform01(41, s, k);
            const Complex lam(2.0 * rng::uniform01(43, s, k) - 1.0, 2.0 * rng::uniform01(47, s, k) - 1.0);
            const Complex lhs =
                (symbol_at(c, std::polar(1.0, -alpha)) - lam * CMatrix::Identity(k, k)).determinant();
            const Complex rhs = 2.0 * vd.a_prod * std::cos(alpha) + g_poly(c, lam);
            CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(rhs)));
        }
    }
}

TEST_CASE("floquet coefficients match the determinant expansion") {
    for (const int k : {1, 2, 3, 5}) {
        CVector a(k), b(k), c(k);
        for (int i = 0; i < k; ++i) {
            a(i) = Complex(rng::uniform01(53, 0, i), rng::uniform01(53, 1, i));
            b(i) = Complex(rng::uniform01(53, 2, i) + 0.5, rng::uniform01(53, 3, i));
            c(i) = Complex(rng::uniform01(53, 4, i) + 0.5, -rng::uniform01(53, 5, i));
        }
        const UnitCell cell = make_unit_cell(a, b, c);
        const Complex lam(0.3, -0.4);
        const auto coeff = floquet_coefficients(cell, lam);
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        CHECK(std::abs(coeff[0] - sign * c.prod()) < 1e-12 * (1.0 + std::abs(c.prod())));
        CHECK(std::abs(coeff[2] - sign * b.prod()) < 1e-12 * (1.0 + std::abs(b.prod())));
        // P(z) = C2 z^2 + C1 z + C0 reproduces z det(f(z) - lam) at random z
        for (std::uint64_t s = 0; s < 4; ++s) {
            const Complex z = std::polar(0.5 + rng::uniform01(59, s, k), 6.0 * rng::uniform01(61, s, k));
            const Complex direct =
                z * (symbol_at(cell, z) - lam * CMatrix::Identity(k, k)).determinant();
            const Complex via = coeff[0] * z * z + coeff[1] * z + coeff[2];
            CHECK(std::abs(direct - via) < 1e-10 * (1.0 + std::abs(direct)));
        }
    }
}

TEST_CASE("symmetrize produces sqrt(b c) couplings and preserves truncation spectra") {
    {
        const UnitCell sym = random_symmetric_cell(3, 71);
        const auto res = symmetrize(sym);
        CHECK((res.scaling - CVector::Ones(3)).norm() < 1e-14);
        CHECK((res.cell.b - sym.b).norm() < 1e-14);
    }
    {
        CVector a = CVector::Zero(2), b(2), c(2);
        b << 4.0, 1.0;
        c << 1.0, 1.0;
        const auto res = symmetrize(make_unit_cell(a, b, c));
        CHECK(std::abs(res.cell.b(0) - Complex(2.0)) < 1e-14);
        CHECK(std::abs(res.cell.b(1) - Complex(1.0)) < 1e-14);
    }
    {
        CVector a(2), b(2), c(2);
        a << Complex(0.1, 0.2), Complex(-0.3, 0.1);
        b << Complex(1.0, 0.7), Complex(0.4, -0.8);
        c << Complex(0.9, -0.1), Complex(1.3, 0.5);
        const UnitCell cell = make_unit_cell(a, b, c);
        const auto res = symmetrize(cell);

        // spectra of the n = 20 truncations agree (similarity transform)
        auto truncated = [](const UnitCell& u, int m) {
            const int k = u.k();
            CMatrix t = CMatrix::Zero(m * k, m * k);
            for (int i = 0; i < m * k; ++i) t(i, i) = u.a(i % k);
            for (int i = 0; i + 1 < m * k; ++i) {
                t(i, i + 1) = u.b(i % k);
                t(i + 1, i) = u.c(i % k);
            }
            return t;
        };
        const auto v1 = eigs_dense(truncated(cell, 10), false).values;
        const auto v2 = eigs_dense(truncated(res.cell, 10), false).values;
        for (Eigen::Index i = 0; i < v1.size(); ++i) CHECK(std::abs(v1(i) - v2(i)) < 1e-9);
    }
}

TEST_CASE("cyclic_shift rotates the cell arrays") {
    const UnitCell c = random_symmetric_cell(3, 83);
    const UnitCell s = cyclic_shift(c, 1);
    CHECK(std::abs(s.a(0) - c.a(1)) < 1e-15);
    CHECK(std::abs(s.a(2) - c.a(0)) < 1e-15);
    const UnitCell full = cyclic_shift(c, 3);
    CHECK((full.a - c.a).norm() < 1e-15);
}
