#include "ktoep/interface.hpp"

#include "ktoep/numerics.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace ktoep {

namespace {

// Null vector of f(z) - lambda via SVD, scaled so v_k = 1.
CVector bloch_vector_at(const UnitCell& cell, Complex z, Complex lambda) {
    const int k = cell.k();
    const CMatrix m = symbol_at(cell, z) - lambda * CMatrix::Identity(k, k);
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
    CVector v = svd.matrixV().col(k - 1);
    const double vk = std::abs(v(k - 1));
    if (vk < 1e-10 * v.norm())
        throw NumericalError("bloch_vector_at: v_k ~ 0 (edge-type point, no matched mode here)");
    return v / v(k - 1);
}

// Right-half quasiperiodic extension u_{mk+r} = z_cell^m v_r truncated to
// m cells; used for both matched (z_cell = z1) and edge (z_cell = 1/z)
// constructions.
CVector half_extension(const CVector& v, Complex z_cell, int m) {
    const int k = static_cast<int>(v.size());
    CVector u(static_cast<Eigen::Index>(m) * k);
    Complex f = 1.0;
    for (int c = 0; c < m; ++c) {
        for (int r = 0; r < k; ++r) u(static_cast<Eigen::Index>(c) * k + r) = f * v(r);
        f *= z_cell;
    }
    return u;
}

double rel_residual(const TridiagonalC& t, const CVector& w, Complex lambda) {
    const CMatrix m = t.dense();
    return (m * w - lambda * w).norm() / w.norm();
}

// Envelope decay rate per cell on the right half of an interface vector.
double fitted_decay(const CVector& w, int k, bool has_center) {
    const Eigen::Index n = w.size();
    const Eigen::Index start = has_center ? (n / 2 + 1) : (n / 2);
    const int cells = static_cast<int>((n - start)) / k;
    std::vector<double> lny;
    std::vector<double> x;
    for (int c = 0; c < cells; ++c) {
        double env = 0.0;
        for (int r = 0; r < k; ++r) env = std::max(env, std::abs(w(start + c * k + r)));
        if (env > 1e-300) {
            x.push_back(c);
            lny.push_back(std::log(env));
        }
    }
    if (x.size() < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += lny[i];
        sxx += x[i] * x[i];
        sxy += x[i] * lny[i];
    }
    const double nn = static_cast<double>(x.size());
    return (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
}

}  // namespace

InterfaceSpec make_shared_site(UnitCell cell, Complex eta, Complex q, Complex s) {
    if (q == Complex(0.0) || s == Complex(0.0))
        throw std::invalid_argument("make_shared_site: interface couplings q, s must be nonzero");
    return InterfaceSpec{std::move(cell), InterfaceKind::shared_site, eta, q, s};
}

InterfaceSpec make_common_coupling(UnitCell cell, Complex q) {
    return InterfaceSpec{std::move(cell), InterfaceKind::common_coupling, Complex(0.0), q, q};
}

TridiagonalC assemble_interface(const InterfaceSpec& spec, int m) {
    if (m < 1) throw std::invalid_argument("assemble_interface: m must be >= 1");
    const int k = spec.cell.k();
    const Eigen::Index half = static_cast<Eigen::Index>(m) * k;

    if (spec.kind == InterfaceKind::shared_site) {
        const Eigen::Index n = 2 * half + 1;
        const Eigen::Index ctr = half;
        TridiagonalC t(n);
        t.diag(ctr) = spec.eta;
        for (Eigen::Index j = 1; j <= half; ++j) {
            const Complex aj = spec.cell.a(static_cast<int>((j - 1) % k));
            t.diag(ctr + j) = aj;
            t.diag(ctr - j) = aj;
        }
        t.upper(ctr) = spec.s;   // center -> first right site
        t.lower(ctr) = spec.s;
        t.upper(ctr - 1) = spec.q;  // first left site -> center
        t.lower(ctr - 1) = spec.q;
        for (Eigen::Index j = 1; j < half; ++j) {
            const Complex bj = spec.cell.b(static_cast<int>((j - 1) % k));
            const Complex cj = spec.cell.c(static_cast<int>((j - 1) % k));
            t.upper(ctr + j) = bj;
            t.lower(ctr + j) = cj;
            // reflected half: (T_AB)_{-i,-j} = (T_AB)_{i,j}
            t.lower(ctr - j - 1) = bj;
            t.upper(ctr - j - 1) = cj;
        }
        return t;
    }

    const Eigen::Index n = 2 * half;
    const Eigen::Index ctr = half;  // right half occupies [ctr, n)
    TridiagonalC t(n);
    for (Eigen::Index j = 0; j < half; ++j) {
        const Complex aj = spec.cell.a(static_cast<int>(j % k));
        t.diag(ctr + j) = aj;
        t.diag(ctr - 1 - j) = aj;
    }
    t.upper(ctr - 1) = spec.q;
    t.lower(ctr - 1) = spec.q;
    for (Eigen::Index j = 0; j + 1 < half; ++j) {
        const Complex bj = spec.cell.b(static_cast<int>(j % k));
        const Complex cj = spec.cell.c(static_cast<int>(j % k));
        t.upper(ctr + j) = bj;
        t.lower(ctr + j) = cj;
        t.lower(ctr - 2 - j) = bj;
        t.upper(ctr - 2 - j) = cj;
    }
    return t;
}

TruncationSpectrum interface_spectrum(const InterfaceSpec& spec, int m, bool want_vectors) {
    if (m < 2) throw std::invalid_argument("interface_spectrum: m must be >= 2");
    const TridiagonalC t = assemble_interface(spec, m);
    EigenDecomposition d = eigs_tridiagonal(t, want_vectors);
    TruncationSpectrum out;
    out.n = static_cast<int>(t.size());
    out.values = std::move(d.values);
    out.vectors = std::move(d.vectors);
    return out;
}

Parity classify_parity(const CVector& w, double tol) {
    const CVector r = w.reverse();
    const double norm = w.norm();
    if (norm == 0.0) return Parity::none;
    if ((w - r).norm() <= tol * norm) return Parity::monopole;
    if ((w + r).norm() <= tol * norm) return Parity::dipole;
    return Parity::none;
}

InterfaceMode edge_induced_mode(const InterfaceSpec& spec, int m) {
    if (spec.kind != InterfaceKind::shared_site)
        throw std::invalid_argument("edge_induced_mode: shared_site interface required");
    if (std::abs(spec.q - spec.s) > 1e-12 * (1.0 + std::abs(spec.q)))
        throw std::invalid_argument("edge_induced_mode: requires q = s");
    const auto reports = edge_spectrum(spec.cell);
    const EdgeModeReport* edge = nullptr;
    for (const auto& r : reports)
        if (r.is_edge) {
            edge = &r;
            break;
        }
    if (!edge) throw std::invalid_argument("edge_induced_mode: bulk cell has no edge mode");

    const int k = spec.cell.k();
    const Eigen::Index half = static_cast<Eigen::Index>(m) * k;
    const CVector u = half_extension(edge->bloch_vector, 1.0 / edge->floquet_z, m);

    InterfaceMode mode;
    mode.lambda = edge->lambda;
    mode.kind = InterfaceModeKind::edge_induced;
    mode.floquet_z = edge->floquet_z;
    mode.sign_a = -1;
    mode.vector = CVector::Zero(2 * half + 1);
    for (Eigen::Index j = 0; j < half; ++j) {
        mode.vector(half + 1 + j) = u(j);
        mode.vector(half - 1 - j) = -u(j);
    }
    mode.vector.normalize();
    mode.parity = classify_parity(mode.vector);
    mode.residual = rel_residual(assemble_interface(spec, m), mode.vector, mode.lambda);
    mode.decay_rate = fitted_decay(mode.vector, k, true);

    const double bound =
        std::max(10.0 * std::pow(std::abs(edge->floquet_z), -m), 1e-12);
    if (mode.residual > bound)
        throw NumericalError("edge_induced_mode: residual " + std::to_string(mode.residual) +
                             " exceeds bound " + std::to_string(bound));
    return mode;
}

Complex interface_f(const InterfaceSpec& spec, Complex lambda) {
    if (spec.kind != InterfaceKind::shared_site)
        throw std::invalid_argument("interface_f: shared_site interface required");
    if (!spec.cell.symmetric(1e-10))
        throw std::invalid_argument("interface_f: cell must be symmetric (b = c)");
    const int k = spec.cell.k();
    const auto [z1, z2] = floquet_roots(spec.cell, lambda);
    // v solves [f(1/z1) - lambda] v = 0: the half-chain extension (v, z1 v, ...)
    // then satisfies the bulk rows, and row 1 pins the center value.
    const CVector v = bloch_vector_at(spec.cell, 1.0 / z1, lambda);
    return 2.0 * spec.q * spec.q * z1 * v(0) / (spec.cell.b(k - 1) * v(k - 1)) + spec.eta - lambda;
}

Complex common_matching_value(const InterfaceSpec& spec, int sign_a, Complex lambda) {
    if (spec.kind != InterfaceKind::common_coupling)
        throw std::invalid_argument("common_matching_value: common_coupling interface required");
    if (!spec.cell.symmetric(1e-10))
        throw std::invalid_argument("common_matching_value: cell must be symmetric");
    if (sign_a != 1 && sign_a != -1) throw std::invalid_argument("common_matching_value: a must be +/-1");
    const int k = spec.cell.k();
    const auto [z1, z2] = floquet_roots(spec.cell, lambda);
    const CVector v = bloch_vector_at(spec.cell, 1.0 / z1, lambda);
    const Complex ratio = (k >= 2) ? v(1) / v(0) : z1;  // k = 1: v_2 is the next-cell entry z1 v_1
    return ratio + (static_cast<double>(sign_a) * spec.q + spec.cell.a(0) - lambda) / spec.cell.b(0);
}

SearchRegion default_search_region(const UnitCell& cell, int samples) {
    const SpectralCurve gamma = gamma_set(cell, samples);
    double re_min = std::numeric_limits<double>::infinity(), re_max = -re_min;
    double im_min = re_min, im_max = -re_min;
    for (const Complex p : gamma.points()) {
        re_min = std::min(re_min, p.real());
        re_max = std::max(re_max, p.real());
        im_min = std::min(im_min, p.imag());
        im_max = std::max(im_max, p.imag());
    }
    const double re_pad = 0.1 * std::max(re_max - re_min, 1e-3);
    const double im_pad = 0.1 * std::max(im_max - im_min, 1e-3);
    return {re_min - re_pad, re_max + re_pad, im_min - im_pad, im_max + im_pad};
}

namespace {

// Newton with central finite differences from a grid of starts; collects
// distinct converged roots of fn inside the region.
std::vector<Complex> newton_grid(const std::function<Complex(Complex)>& fn, const SearchRegion& region,
                                 const RootSearchOptions& opt) {
    std::vector<Complex> roots;
    for (int i = 0; i < opt.grid; ++i) {
        for (int j = 0; j < opt.grid; ++j) {
            const double x = region.re_min + (region.re_max - region.re_min) * (i + 0.5) / opt.grid;
            const double y = region.im_min + (region.im_max - region.im_min) * (j + 0.5) / opt.grid;
            Complex lam(x, y);
            bool converged = false;
            for (int it = 0; it < opt.max_iter; ++it) {
                Complex f;
                try {
                    f = fn(lam);
                } catch (const NumericalError&) {
                    break;  // start ran into Gamma or an edge-type pole
                }
                const double h = 1e-6 * (1.0 + std::abs(lam));
                Complex d;
                try {
                    d = (fn(lam + h) - fn(lam - h)) / (2.0 * h);
                } catch (const NumericalError&) {
                    break;
                }
                if (d == Complex(0.0)) break;
                const Complex step = f / d;
                lam -= step;
                if (std::abs(step) < 1e-12 * (1.0 + std::abs(lam))) {
                    converged = true;
                    break;
                }
            }
            if (!converged) continue;
            if (lam.real() < region.re_min || lam.real() > region.re_max || lam.imag() < region.im_min ||
                lam.imag() > region.im_max)
                continue;
            try {
                if (std::abs(fn(lam)) > opt.f_tol) continue;
            } catch (const NumericalError&) {
                continue;
            }
            bool dup = false;
            for (const Complex r : roots)
                if (std::abs(r - lam) < opt.merge_tol) dup = true;
            if (!dup) roots.push_back(lam);
        }
    }
    return roots;
}

}  // namespace

std::vector<InterfaceMode> matched_interface_roots(const InterfaceSpec& spec, const SearchRegion& region,
                                                   const RootSearchOptions& opt) {
    if (spec.kind != InterfaceKind::shared_site)
        throw std::invalid_argument("matched_interface_roots: shared_site interface required");
    const int k = spec.cell.k();
    const SpectralCurve gamma = gamma_set(spec.cell, 1024);
    const auto roots = newton_grid([&](Complex lam) { return interface_f(spec, lam); }, region, opt);

    const TridiagonalC trunc = assemble_interface(spec, opt.verify_m);
    const CVector trunc_vals = eigs_tridiagonal(trunc, false).values;

    std::vector<InterfaceMode> modes;
    for (const Complex lam : roots) {
        if (distance_to_curve(gamma, lam) < opt.gamma_margin) continue;
        const auto [z1, z2] = floquet_roots(spec.cell, lam);
        CVector v;
        try {
            v = bloch_vector_at(spec.cell, 1.0 / z1, lam);
        } catch (const NumericalError&) {
            continue;  // v_k ~ 0: edge-type point, excluded
        }

        InterfaceMode mode;
        mode.lambda = lam;
        mode.kind = InterfaceModeKind::matched;
        mode.floquet_z = z1;
        mode.sign_a = 1;
        const Eigen::Index half = static_cast<Eigen::Index>(opt.verify_m) * k;
        const CVector u = half_extension(v, z1, opt.verify_m);
        mode.vector = CVector::Zero(2 * half + 1);
        // center entry from the row-1 matching: t = b_k v_k / (z1 q)
        mode.vector(half) = spec.cell.b(k - 1) * v(k - 1) / (z1 * spec.q);
        for (Eigen::Index j = 0; j < half; ++j) {
            mode.vector(half + 1 + j) = u(j);
            mode.vector(half - 1 - j) = u(j);
        }
        mode.vector.normalize();
        mode.parity = classify_parity(mode.vector);
        mode.residual = rel_residual(trunc, mode.vector, lam);
        mode.decay_rate = fitted_decay(mode.vector, k, true);

        double nearest = std::numeric_limits<double>::infinity();
        for (const Complex e : trunc_vals) nearest = std::min(nearest, std::abs(e - lam));
        if (nearest > opt.verify_tol) continue;  // spurious root (did not survive truncation check)
        modes.push_back(std::move(mode));
    }
    return modes;
}

std::vector<InterfaceMode> common_coupling_match(const InterfaceSpec& spec, const SearchRegion& region,
                                                 const RootSearchOptions& opt) {
    if (spec.kind != InterfaceKind::common_coupling)
        throw std::invalid_argument("common_coupling_match: common_coupling interface required");
    const int k = spec.cell.k();
    const SpectralCurve gamma = gamma_set(spec.cell, 1024);
    const TridiagonalC trunc = assemble_interface(spec, opt.verify_m);
    const CVector trunc_vals = eigs_tridiagonal(trunc, false).values;

    std::vector<InterfaceMode> modes;
    for (const int sign_a : {+1, -1}) {
        const auto roots = newton_grid(
            [&](Complex lam) { return common_matching_value(spec, sign_a, lam); }, region, opt);
        for (const Complex lam : roots) {
            if (distance_to_curve(gamma, lam) < opt.gamma_margin) continue;
            const auto [z1, z2] = floquet_roots(spec.cell, lam);
            CVector v;
            try {
                v = bloch_vector_at(spec.cell, 1.0 / z1, lam);
            } catch (const NumericalError&) {
                continue;
            }
            InterfaceMode mode;
            mode.lambda = lam;
            mode.kind = InterfaceModeKind::matched;
            mode.floquet_z = z1;
            mode.sign_a = sign_a;
            const Eigen::Index half = static_cast<Eigen::Index>(opt.verify_m) * k;
            const CVector u = half_extension(v / v(0), z1, opt.verify_m);  // scale v_1 = 1
            mode.vector = CVector::Zero(2 * half);
            for (Eigen::Index j = 0; j < half; ++j) {
                mode.vector(half + j) = u(j);
                mode.vector(half - 1 - j) = static_cast<double>(sign_a) * u(j);
            }
            mode.vector.normalize();
            mode.parity = classify_parity(mode.vector);
            mode.residual = rel_residual(trunc, mode.vector, lam);
            mode.decay_rate = fitted_decay(mode.vector, k, false);

            double nearest = std::numeric_limits<double>::infinity();
            for (const Complex e : trunc_vals) nearest = std::min(nearest, std::abs(e - lam));
            if (nearest > opt.verify_tol) continue;
            modes.push_back(std::move(mode));
        }
    }
    return modes;
}

}  // namespace ktoep
