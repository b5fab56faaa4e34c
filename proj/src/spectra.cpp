#include "ktoep/spectra.hpp"

#include "ktoep/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace ktoep {

namespace {

// Greedy nearest-neighbor assignment of the new column against the previous
// one. Band crossings are measure-zero in alpha, so greedy is adequate.
void match_column(const CVector& prev, CVector& next) {
    const int k = static_cast<int>(prev.size());
    std::vector<bool> used(static_cast<size_t>(k), false);
    CVector out(k);
    for (int i = 0; i < k; ++i) {
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (int j = 0; j < k; ++j) {
            if (used[static_cast<size_t>(j)]) continue;
            const double d = std::abs(prev(i) - next(j));
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        used[static_cast<size_t>(best)] = true;
        out(i) = next(best);
    }
    next = out;
}

SpectralCurve sample_circle(const UnitCell& cell, double radius, int samples) {
    if (samples < 64) throw std::invalid_argument("spectral curve: samples must be >= 64");
    const int k = cell.k();
    SpectralCurve curve;
    curve.alpha.resize(samples);
    curve.branches.resize(k, samples);
    for (int j = 0; j < samples; ++j) {
        const double alpha = -std::numbers::pi + 2.0 * std::numbers::pi * j / samples;
        curve.alpha(j) = alpha;
        const CMatrix f = symbol_at(cell, std::polar(radius, alpha));
        CVector vals = eigs_dense(f, false).values;
        if (j > 0) match_column(curve.branches.col(j - 1), vals);
        curve.branches.col(j) = vals;
    }
    return curve;
}

double point_segment_distance(Complex p, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p - a) * std::conj(ab)).real() / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

}  // namespace

std::vector<Complex> SpectralCurve::points() const {
    std::vector<Complex> out;
    out.reserve(static_cast<size_t>(branches.size()));
    for (Eigen::Index i = 0; i < branches.rows(); ++i)
        for (Eigen::Index j = 0; j < branches.cols(); ++j) out.push_back(branches(i, j));
    return out;
}

SpectralCurve essential_spectrum(const UnitCell& cell, int samples) {
    return sample_circle(cell, 1.0, samples);
}

SpectralCurve gamma_set(const UnitCell& cell, int samples) {
    return sample_circle(cell, viete_data(cell).r, samples);
}

int winding_region_membership(const UnitCell& cell, Complex lambda, int samples) {
    if (distance_to_curve(essential_spectrum(cell, samples), lambda) <= 1e-6)
        throw std::invalid_argument("winding_region_membership: lambda lies on the essential spectrum");
    const int k = cell.k();
    int n = samples;
    for (int attempt = 0; attempt < 6; ++attempt) {
        std::vector<Complex> dets(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            const double alpha = -std::numbers::pi + 2.0 * std::numbers::pi * j / n;
            dets[static_cast<size_t>(j)] =
                (symbol_at(cell, std::polar(1.0, alpha)) - lambda * CMatrix::Identity(k, k)).determinant();
        }
        try {
            return winding_number(dets, Complex(0.0, 0.0));
        } catch (const NumericalError&) {
            n *= 2;  // refine and retry
        }
    }
    throw NumericalError("winding_region_membership: sampling did not stabilize");
}

TridiagonalC truncate(const UnitCell& cell, int m_cells) {
    if (m_cells < 1) throw std::invalid_argument("truncate: m must be >= 1");
    const int k = cell.k();
    const Eigen::Index n = static_cast<Eigen::Index>(m_cells) * k;
    TridiagonalC t(n);
    for (Eigen::Index i = 0; i < n; ++i) t.diag(i) = cell.a(static_cast<int>(i % k));
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        t.upper(i) = cell.b(static_cast<int>(i % k));
        t.lower(i) = cell.c(static_cast<int>(i % k));
    }
    return t;
}

double distance_to_curve(const SpectralCurve& curve, Complex lambda) {
    double best = std::numeric_limits<double>::infinity();
    const int m = curve.samples();
    for (int i = 0; i < curve.branch_count(); ++i) {
        for (int j = 0; j < m; ++j) {
            const Complex a = curve.branches(i, j);
            const Complex b = curve.branches(i, (j + 1) % m);
            // branch polylines close over the alpha period
            best = std::min(best, point_segment_distance(lambda, a, b));
        }
    }
    return best;
}

double directed_hausdorff(std::span<const Complex> points, const SpectralCurve& curve,
                          std::span<const Complex> extra_points) {
    double worst = 0.0;
    for (const Complex p : points) {
        double d = distance_to_curve(curve, p);
        for (const Complex q : extra_points) d = std::min(d, std::abs(p - q));
        worst = std::max(worst, d);
    }
    return worst;
}

}  // namespace ktoep
