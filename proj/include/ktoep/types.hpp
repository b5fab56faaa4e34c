#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <stdexcept>

namespace ktoep {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Thrown when an iterative kernel fails to converge or a quadrature /
/// sampling rule cannot certify its result. CLI maps this to exit code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when two independent criteria that must agree do not
/// (e.g. the two edge-mode tests). CLI maps this to exit code 4.
struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite tridiagonal matrix stored as three bands.
/// diag has n entries, lower/upper have n-1; lower(i) sits at (i+1, i).
template <typename Scalar>
struct Tridiagonal {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    Vector diag;
    Vector lower;
    Vector upper;

    Tridiagonal() = default;
    explicit Tridiagonal(Eigen::Index n) : diag(n), lower(n > 0 ? n - 1 : 0), upper(n > 0 ? n - 1 : 0) {
        diag.setZero();
        lower.setZero();
        upper.setZero();
    }

    Eigen::Index size() const { return diag.size(); }

    bool valid() const {
        return diag.size() >= 1 && lower.size() == diag.size() - 1 && upper.size() == diag.size() - 1;
    }

    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> dense() const {
        const Eigen::Index n = size();
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m(n, n);
        m.setZero();
        for (Eigen::Index i = 0; i < n; ++i) m(i, i) = diag(i);
        for (Eigen::Index i = 0; i + 1 < n; ++i) {
            m(i + 1, i) = lower(i);
            m(i, i + 1) = upper(i);
        }
        return m;
    }
};

using TridiagonalC = Tridiagonal<Complex>;
using TridiagonalR = Tridiagonal<double>;

inline TridiagonalC to_complex(const TridiagonalR& t) {
    TridiagonalC c(t.size());
    c.diag = t.diag.cast<Complex>();
    c.lower = t.lower.cast<Complex>();
    c.upper = t.upper.cast<Complex>();
    return c;
}

/// Eigenvalues (with multiplicity) plus optional unit-norm eigenvectors,
/// columns paired with values. Values are sorted by (Re, Im).
struct EigenDecomposition {
    CVector values;
    std::optional<CMatrix> vectors;
};

/// Counter-clockwise circle for quadrature of contour integrals.
struct ClosedContour {
    Complex center{0.0, 0.0};
    double radius{1.0};
    int samples{1024};
};

}  // namespace ktoep
