#include "ktoep/edge.hpp"

#include "ktoep/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ktoep {

namespace {

// First entry with |v_i| above a relative floor, for phase normalization.
Eigen::Index first_nonzero(const CVector& v) {
    const double floor = 1e-12 * v.norm();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) > floor) return i;
    return 0;
}

void normalize_phase(CVector& v) {
    v.normalize();
    const Complex lead = v(first_nonzero(v));
    if (std::abs(lead) > 0.0) v *= std::conj(lead) / std::abs(lead);
}

}  // namespace

std::vector<Complex> edge_candidates(const UnitCell& cell) {
    if (cell.k() < 2) return {};
    const auto [b0, b1] = principal_submatrices(cell);
    const CVector vals = eigs_dense(b0, false).values;
    return {vals.begin(), vals.end()};
}

BlochData bloch_data(const UnitCell& cell, Complex lambda) {
    const int k = cell.k();
    if (k < 2) throw std::invalid_argument("bloch_data: k must be >= 2");
    const auto [b0, b1] = principal_submatrices(cell);
    const EigenDecomposition d = eigs_dense(b0, true);
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < d.values.size(); ++i)
        if (std::abs(d.values(i) - lambda) < std::abs(d.values(best) - lambda)) best = i;
    if (std::abs(d.values(best) - lambda) > 1e-8 * (1.0 + std::abs(lambda)))
        throw std::invalid_argument("bloch_data: lambda is not an eigenvalue of B0");

    BlochData out;
    out.v = CVector::Zero(k);
    out.v.head(k - 1) = d.vectors->col(best);
    normalize_phase(out.v);

    const Complex v1 = out.v(0);
    const Complex vkm1 = out.v(k - 2);
    if (std::abs(vkm1) <= 1e-12) {
        out.z_at_infinity = true;
        return out;
    }
    out.z = -cell.b(k - 1) * v1 / (cell.c(k - 2) * vkm1);
    out.residual =
        ((symbol_at(cell, out.z) - lambda * CMatrix::Identity(k, k)) * out.v).norm();
    if (out.residual > 1e-8)
        throw NumericalError("bloch_data: Bloch residual " + std::to_string(out.residual));
    return out;
}

Complex c0_value(const UnitCell& cell, Complex lambda, const EdgeOptions& opt) {
    const int k = cell.k();
    const auto [z1, z2] = floquet_roots(cell, lambda);
    if (std::abs(z2) - std::abs(z1) <= 1e-9 * std::abs(z2))
        throw NumericalError("c0_value: |z1| ~ |z2|, lambda is effectively on Gamma");
    const double radius = std::sqrt(std::abs(z1) * std::abs(z2));
    const CMatrix id = CMatrix::Identity(k, k);
    auto integrand = [&](Complex z) -> CMatrix {
        return (symbol_at(cell, z) - lambda * id).inverse();
    };
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;  // (-1)^{k+1}
    const Complex v1 =
        sign * contour_integral_mean(integrand, {Complex(0.0), radius, opt.contour_samples}).determinant();
    const Complex v2 =
        sign * contour_integral_mean(integrand, {Complex(0.0), radius, 2 * opt.contour_samples}).determinant();
    if (std::abs(v1 - v2) > opt.contour_self_check * (1.0 + std::abs(v2)))
        throw NumericalError("c0_value: quadrature self-check failed, contour too close to a root");
    return v2;
}

std::vector<Complex> g0_set(const UnitCell& cell, const EdgeOptions& opt) {
    if (cell.k() < 2) return {};  // the 1-periodic case has empty G0
    const auto [b0, b1] = principal_submatrices(cell);
    std::vector<Complex> candidates;
    {
        const CVector v0 = eigs_dense(b0, false).values;
        const CVector v1 = eigs_dense(b1, false).values;
        candidates.assign(v0.begin(), v0.end());
        for (const Complex x : v1) {
            bool dup = false;
            for (const Complex y : candidates)
                if (std::abs(x - y) < 1e-10) dup = true;
            if (!dup) candidates.push_back(x);
        }
    }
    const SpectralCurve gamma = gamma_set(cell, opt.gamma_samples);
    std::vector<Complex> out;
    for (const Complex lam : candidates) {
        if (distance_to_curve(gamma, lam) <= opt.gamma_margin) continue;
        if (std::abs(c0_value(cell, lam, opt)) < opt.c0_zero_tol) out.push_back(lam);
    }
    return out;
}

std::vector<EdgeModeReport> edge_spectrum(const UnitCell& cell, const EdgeOptions& opt) {
    const int k = cell.k();
    if (k < 2) return {};
    const auto [b0m, b1m] = principal_submatrices(cell);
    const CVector b1_vals = eigs_dense(b1m, false).values;
    const SpectralCurve gamma = gamma_set(cell, opt.gamma_samples);

    std::vector<EdgeModeReport> reports;
    for (const Complex lam : edge_candidates(cell)) {
        EdgeModeReport rep;
        rep.lambda = lam;

        bool in_b1 = false;
        for (const Complex x : b1_vals)
            if (std::abs(x - lam) < 1e-8 * (1.0 + std::abs(lam))) in_b1 = true;
        rep.membership = in_b1 ? Membership::Both : Membership::B0;

        const double gap = distance_to_curve(gamma, lam);
        if (gap <= opt.gamma_margin) {
            rep.marginal = true;  // candidate sits on Gamma: no decaying extension either way
            reports.push_back(std::move(rep));
            continue;
        }

        const BlochData bd = bloch_data(cell, lam);
        rep.bloch_vector = bd.v;
        rep.z_at_infinity = bd.z_at_infinity;
        // z at infinity: no finite Bloch parameter, no decaying extension
        const bool z_verdict = !bd.z_at_infinity && std::abs(bd.z) > 1.0 + opt.z_margin;
        if (!bd.z_at_infinity) {
            rep.floquet_z = bd.z;
            rep.abs_z = std::abs(bd.z);
            if (std::abs(rep.abs_z - 1.0) <= opt.z_margin) {
                rep.marginal = true;
                reports.push_back(std::move(rep));
                continue;
            }
        }

        rep.c0 = c0_value(cell, lam, opt);
        const bool g0_verdict = std::abs(rep.c0) < opt.c0_zero_tol;
        if (z_verdict != g0_verdict)
            throw ConsistencyError("edge_spectrum: |z| and C0 criteria disagree at lambda = (" +
                                   std::to_string(lam.real()) + ", " + std::to_string(lam.imag()) +
                                   "), |z| = " + std::to_string(rep.abs_z) +
                                   ", |C0| = " + std::to_string(std::abs(rep.c0)));
        rep.is_edge = z_verdict;
        reports.push_back(std::move(rep));
    }
    return reports;
}

OpenLimitResult open_limit(const UnitCell& cell, int samples, const EdgeOptions& opt) {
    OpenLimitResult out;
    out.gamma = gamma_set(cell, samples);
    out.g0_points = g0_set(cell, opt);
    return out;
}

HomotopyTrace homotopy_sweep(const std::function<UnitCell(double)>& cell_at, const RVector& t_grid,
                             int gamma_samples) {
    if (t_grid.size() < 1) throw std::invalid_argument("homotopy_sweep: empty t grid");
    const UnitCell first = cell_at(t_grid(0));
    const int paths = first.k() - 1;
    if (paths < 1) throw std::invalid_argument("homotopy_sweep: k must be >= 2");

    HomotopyTrace trace;
    trace.t = t_grid;
    trace.paths.resize(paths, t_grid.size());
    trace.abs_z.resize(paths, t_grid.size());
    trace.gap_margin.resize(paths, t_grid.size());

    CVector prev(paths);
    for (Eigen::Index j = 0; j < t_grid.size(); ++j) {
        const UnitCell cell = cell_at(t_grid(j));
        if (cell.k() - 1 != paths)
            throw std::invalid_argument("homotopy_sweep: cell_at changed k along the homotopy");
        const auto cands = edge_candidates(cell);
        CVector cur(paths);
        for (int i = 0; i < paths; ++i) cur(i) = cands[static_cast<size_t>(i)];

        if (j > 0) {
            // continue each tracked path to its nearest new candidate
            std::vector<bool> used(static_cast<size_t>(paths), false);
            CVector matched(paths);
            for (int i = 0; i < paths; ++i) {
                int best = -1;
                double best_d = std::numeric_limits<double>::infinity();
                for (int l = 0; l < paths; ++l) {
                    if (used[static_cast<size_t>(l)]) continue;
                    const double d = std::abs(prev(i) - cur(l));
                    if (d < best_d) {
                        best_d = d;
                        best = l;
                    }
                }
                used[static_cast<size_t>(best)] = true;
                matched(i) = cur(best);
            }
            cur = matched;
            for (int i = 0; i < paths; ++i)
                for (int l = i + 1; l < paths; ++l)
                    if (std::abs(cur(i) - cur(l)) < 1e-6) trace.collisions.push_back(static_cast<int>(j));
        }

        const SpectralCurve gamma = gamma_set(cell, gamma_samples);
        for (int i = 0; i < paths; ++i) {
            trace.paths(i, j) = cur(i);
            trace.gap_margin(i, j) = distance_to_curve(gamma, cur(i));
            double az = std::numeric_limits<double>::quiet_NaN();
            if (trace.gap_margin(i, j) > 1e-9) {
                try {
                    const BlochData bd = bloch_data(cell, cur(i));
                    if (!bd.z_at_infinity) az = std::abs(bd.z);
                } catch (const NumericalError&) {
                    // near-degenerate candidate: |z| stays NaN for this sample
                }
            }
            trace.abs_z(i, j) = az;
        }
        prev = cur;
    }
    return trace;
}

}  // namespace ktoep
