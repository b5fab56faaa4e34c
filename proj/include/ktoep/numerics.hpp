#pragma once

#include "ktoep/types.hpp"

#include <functional>
#include <span>
#include <utility>

namespace ktoep {

/// Eigendecomposition of a general complex dense matrix.
/// Residual guarantee (checked): max_i ||M v_i - w_i v_i||_2 <= 1e-10 * ||M||_F.
EigenDecomposition eigs_dense(const CMatrix& m, bool want_vectors);

/// Specialized path for tridiagonal matrices. Real symmetric input is routed
/// through the self-adjoint solver; everything else goes dense.
EigenDecomposition eigs_tridiagonal(const TridiagonalC& t, bool want_vectors);
EigenDecomposition eigs_tridiagonal(const TridiagonalR& t, bool want_vectors);

/// Roots of c2 z^2 + c1 z + c0, |z1| <= |z2|; equal-magnitude ties break
/// by smaller principal argument. Throws std::invalid_argument for c2 = 0.
std::pair<Complex, Complex> quadratic_roots(Complex c2, Complex c1, Complex c0);

/// (1/2*pi*i) * contour integral of g(z) dz/z over the circle, evaluated by the
/// periodic trapezoid rule (exact for Laurent polynomials up to the Nyquist
/// degree). Throws NumericalError if g is non-finite at any node.
CMatrix contour_integral_mean(const std::function<CMatrix(Complex)>& g, const ClosedContour& contour);

/// Winding number of a closed sampled curve about `target`: total argument
/// change / 2*pi rounded to the nearest integer. Throws NumericalError when a
/// sample lies on the target or an adjacent-sample argument jump exceeds pi/2
/// (the curve needs refinement).
int winding_number(std::span<const Complex> samples, Complex target);

}  // namespace ktoep
