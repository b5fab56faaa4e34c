#include "ktoep/numerics.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace ktoep {

namespace {

bool lex_less(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// Sort values (and vector columns) by (Re, Im) so output order is stable.
EigenDecomposition sorted(CVector values, std::optional<CMatrix> vectors) {
    const Eigen::Index n = values.size();
    std::vector<Eigen::Index> idx(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return lex_less(values(a), values(b)); });
    EigenDecomposition out;
    out.values.resize(n);
    if (vectors) out.vectors = CMatrix(vectors->rows(), n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values(i) = values(idx[static_cast<size_t>(i)]);
        if (vectors) out.vectors->col(i) = vectors->col(idx[static_cast<size_t>(i)]);
    }
    return out;
}

void check_residuals(const CMatrix& m, const EigenDecomposition& d) {
    if (!d.vectors) return;
    const double scale = std::max(m.norm(), 1e-300);
    for (Eigen::Index i = 0; i < d.values.size(); ++i) {
        const double res = (m * d.vectors->col(i) - d.values(i) * d.vectors->col(i)).norm();
        if (!(res <= 1e-10 * scale))
            throw NumericalError("eigs_dense: residual " + std::to_string(res / scale) +
                                 " exceeds 1e-10 relative bound");
    }
}

}  // namespace

EigenDecomposition eigs_dense(const CMatrix& m, bool want_vectors) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eigs_dense: matrix must be square");
    if (!m.allFinite()) throw std::invalid_argument("eigs_dense: non-finite entries");
    const Eigen::Index n = m.rows();
    if (n == 0) return {};
    if (n == 1) {
        EigenDecomposition d;
        d.values = CVector::Constant(1, m(0, 0));
        if (want_vectors) d.vectors = CMatrix::Identity(1, 1);
        return d;
    }
    // Hermitian input goes through the self-adjoint solver: tighter residuals
    // and real eigenvalues without imaginary dust.
    if (m.isApprox(m.adjoint(), 1e-14)) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(m, want_vectors ? Eigen::ComputeEigenvectors
                                                                  : Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw NumericalError("eigs_dense: self-adjoint solver failed");
        CVector vals = es.eigenvalues().cast<Complex>();
        std::optional<CMatrix> vecs;
        if (want_vectors) vecs = es.eigenvectors();
        auto d = sorted(std::move(vals), std::move(vecs));
        check_residuals(m, d);
        return d;
    }
    Eigen::ComplexEigenSolver<CMatrix> es(m, want_vectors);
    if (es.info() != Eigen::Success) throw NumericalError("eigs_dense: QR iteration did not converge");
    CVector vals = es.eigenvalues();
    std::optional<CMatrix> vecs;
    if (want_vectors) {
        vecs = es.eigenvectors();
        for (Eigen::Index i = 0; i < vecs->cols(); ++i) vecs->col(i).normalize();
    }
    auto d = sorted(std::move(vals), std::move(vecs));
    check_residuals(m, d);
    return d;
}

EigenDecomposition eigs_tridiagonal(const TridiagonalR& t, bool want_vectors) {
    if (!t.valid()) throw std::invalid_argument("eigs_tridiagonal: inconsistent band lengths");
    if (t.lower.isApprox(t.upper, 1e-14)) {
        Eigen::SelfAdjointEigenSolver<RMatrix> es(t.dense(), want_vectors ? Eigen::ComputeEigenvectors
                                                                          : Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw NumericalError("eigs_tridiagonal: self-adjoint solver failed");
        EigenDecomposition d;
        d.values = es.eigenvalues().cast<Complex>();
        if (want_vectors) d.vectors = es.eigenvectors().cast<Complex>();
        return d;
    }
    return eigs_dense(to_complex(t).dense(), want_vectors);
}

EigenDecomposition eigs_tridiagonal(const TridiagonalC& t, bool want_vectors) {
    if (!t.valid()) throw std::invalid_argument("eigs_tridiagonal: inconsistent band lengths");
    const bool real = t.diag.imag().isZero(0.0) && t.lower.imag().isZero(0.0) && t.upper.imag().isZero(0.0);
    if (real) {
        TridiagonalR r(t.size());
        r.diag = t.diag.real();
        r.lower = t.lower.real();
        r.upper = t.upper.real();
        return eigs_tridiagonal(r, want_vectors);
    }
    return eigs_dense(t.dense(), want_vectors);
}

std::pair<Complex, Complex> quadratic_roots(Complex c2, Complex c1, Complex c0) {
    if (c2 == Complex(0.0, 0.0))
        throw std::invalid_argument("quadratic_roots: degenerate (c2 = 0), root at infinity");
    // q-form: pick the sign that avoids cancellation in -c1 -/+ sqrt(disc).
    const Complex disc = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
    const Complex sum = (std::norm(c1 - disc) > std::norm(c1 + disc)) ? c1 - disc : c1 + disc;
    Complex z1, z2;
    if (sum == Complex(0.0, 0.0)) {  // c1 = 0 and c0 = 0
        z1 = Complex(0.0, 0.0);
        z2 = -c1 / c2;
    } else {
        const Complex q = -0.5 * sum;
        z1 = q / c2;
        z2 = c0 / q;
    }
    const double m1 = std::abs(z1), m2 = std::abs(z2);
    const double tol = 1e-12 * std::max(m1, m2);
    bool swap = m1 > m2 + tol;
    if (!swap && std::abs(m1 - m2) <= tol && std::arg(z1) > std::arg(z2)) swap = true;
    if (swap) std::swap(z1, z2);
    return {z1, z2};
}

CMatrix contour_integral_mean(const std::function<CMatrix(Complex)>& g, const ClosedContour& contour) {
    if (contour.radius <= 0.0) throw std::invalid_argument("contour_integral_mean: radius must be positive");
    if (contour.samples < 16 || contour.samples % 2 != 0)
        throw std::invalid_argument("contour_integral_mean: samples must be even and >= 16");
    const int n = contour.samples;
    CMatrix acc;
    for (int j = 0; j < n; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / n;
        const Complex e = std::polar(1.0, theta);
        const Complex z = contour.center + contour.radius * e;
        // dz/(2*pi*i*z) with dz = i*r*e^{i t} dt  ->  weight r*e^{i t}/(n*z)
        const Complex w = contour.radius * e / (static_cast<double>(n) * z);
        CMatrix gz = g(z);
        if (!gz.allFinite())
            throw NumericalError("contour_integral_mean: non-finite integrand (pole on or near contour)");
        if (acc.size() == 0)
            acc = w * gz;
        else
            acc += w * gz;
    }
    return acc;
}

int winding_number(std::span<const Complex> samples, Complex target) {
    if (samples.size() < 3) throw std::invalid_argument("winding_number: need at least 3 samples");
    double total = 0.0;
    const size_t n = samples.size();
    // treat the polyline cyclically; a duplicated endpoint just adds a zero increment
    for (size_t j = 0; j < n; ++j) {
        const Complex a = samples[j] - target;
        const Complex b = samples[(j + 1) % n] - target;
        if (std::abs(a) < 1e-12 || std::abs(b) < 1e-12)
            throw NumericalError("winding_number: target lies on the sampled curve");
        const double jump = std::arg(b / a);
        if (std::abs(jump) > 0.5 * std::numbers::pi)
            throw NumericalError("winding_number: argument jump exceeds pi/2, refine the sampling");
        total += jump;
    }
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

}  // namespace ktoep
