#include "ktoep/fdm.hpp"

#include "ktoep/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace ktoep {

namespace {

// Material per grid cell after snapping interval endpoints to faces.
// Cell j spans faces [j dx, (j+1) dx); origin shifts the sampling.
std::vector<bool> inside_mask(const FdmConfig& cfg, double origin) {
    const int k = cfg.k;
    std::vector<bool> inside(static_cast<size_t>(k), false);
    for (auto [s, e] : cfg.intervals) {
        // snap to faces (round-half-even keeps mirror-symmetric geometries symmetric)
        auto snap = [&](double x) {
            const double t = (x - origin) * k;
            const double r = std::nearbyint(t);
            return static_cast<long>(r);
        };
        long fs = snap(s);
        long fe = snap(e);
        for (long f = fs; f < fe; ++f) {
            const long j = ((f % k) + k) % k;
            inside[static_cast<size_t>(j)] = true;
        }
    }
    return inside;
}

UnitCell cell_from_mask(const FdmConfig& cfg, const std::vector<bool>& inside) {
    const int k = cfg.k;
    const double dx = 1.0 / k;
    const double scale = 1.0 / (cfg.mu0 * dx * dx);
    // face coefficient between cells j and j+1: harmonic mean of 1/eps
    auto gamma = [&](int j) {
        const double e1 = inside[static_cast<size_t>(j % k)] ? cfg.eps_inside : cfg.eps_outside;
        const double e2 = inside[static_cast<size_t>((j + 1) % k)] ? cfg.eps_inside : cfg.eps_outside;
        return 2.0 / (e1 + e2);
    };
    CVector a(k), b(k);
    for (int j = 0; j < k; ++j) {
        const double gl = gamma((j - 1 + k) % k);
        const double gr = gamma(j);
        a(j) = scale * (gl + gr);
        b(j) = -scale * gr;
    }
    return make_unit_cell(a, b, b);
}

}  // namespace

void validate(const FdmConfig& cfg) {
    if (cfg.k < 4) throw std::invalid_argument("fdm: k must be >= 4");
    if (!(cfg.eps_inside > 0.0) || !(cfg.eps_outside > 0.0))
        throw std::invalid_argument("fdm: permittivities must be positive reals");
    if (!(cfg.mu0 > 0.0)) throw std::invalid_argument("fdm: mu0 must be positive");
    for (auto [s, e] : cfg.intervals)
        if (!(e > s)) throw std::invalid_argument("fdm: empty resonator interval");
}

UnitCell assemble_fdm_cell(const FdmConfig& cfg) {
    validate(cfg);
    return cell_from_mask(cfg, inside_mask(cfg, 0.0));
}

UnitCell fdm_interface_cell(const FdmConfig& cfg) {
    validate(cfg);
    if (cfg.intervals.empty()) throw std::invalid_argument("fdm: no resonator to center on");
    const auto [s, e] = cfg.intervals.front();
    return cell_from_mask(cfg, inside_mask(cfg, 0.5 * (s + e)));
}

std::vector<std::pair<double, double>> band_intervals(const UnitCell& cell, int samples) {
    const int k = cell.k();
    std::vector<std::pair<double, double>> bands(static_cast<size_t>(k),
                                                 {std::numeric_limits<double>::infinity(),
                                                  -std::numeric_limits<double>::infinity()});
    for (int j = 0; j < samples; ++j) {
        const double alpha = -std::numbers::pi + 2.0 * std::numbers::pi * j / samples;
        const CVector vals = eigs_dense(symbol_at(cell, std::polar(1.0, alpha)), false).values;
        // symbol is Hermitian on the torus for real symmetric cells
        std::vector<double> re(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) re[static_cast<size_t>(i)] = vals(i).real();
        std::sort(re.begin(), re.end());
        for (int i = 0; i < k; ++i) {
            auto& [lo, hi] = bands[static_cast<size_t>(i)];
            lo = std::min(lo, re[static_cast<size_t>(i)]);
            hi = std::max(hi, re[static_cast<size_t>(i)]);
        }
    }
    return bands;
}

std::pair<double, double> first_gap(const UnitCell& cell, int samples) {
    const auto bands = band_intervals(cell, samples);
    if (bands.size() < 2) throw std::invalid_argument("first_gap: need at least two bands");
    if (bands[1].first <= bands[0].second) throw NumericalError("first_gap: first gap is closed");
    return {bands[0].second, bands[1].first};
}

std::vector<B0ConvergenceRow> b0_convergence(const FdmConfig& cfg, std::span<const int> k_list,
                                             double window_max) {
    validate(cfg);
    if (k_list.empty()) throw std::invalid_argument("b0_convergence: empty k list");
    if (window_max < 0.0) {
        FdmConfig coarse = cfg;
        coarse.k = *std::min_element(k_list.begin(), k_list.end());
        const auto bands = band_intervals(assemble_fdm_cell(coarse));
        window_max = (bands.size() >= 2 ? bands[1].second : bands[0].second) * 1.001;
    }
    std::vector<B0ConvergenceRow> rows;
    for (const int k : k_list) {
        FdmConfig c = cfg;
        c.k = k;
        const UnitCell cell = assemble_fdm_cell(c);
        const auto bands = band_intervals(cell);
        const auto [b0, b1] = principal_submatrices(cell);
        const CVector vals = eigs_dense(b0, false).values;
        int index = 0;
        for (Eigen::Index i = 0; i < vals.size(); ++i) {
            const double x = vals(i).real();
            if (x > window_max) continue;
            double dist = std::numeric_limits<double>::infinity();
            for (const auto& [lo, hi] : bands)
                dist = std::min(dist, std::max({lo - x, 0.0, x - hi}));
            rows.push_back({k, index++, x, dist});
        }
    }
    return rows;
}

std::vector<ImpedanceRow> impedance_curve(const FdmConfig& cfg, std::span<const double> gap_grid) {
    const UnitCell cell = fdm_interface_cell(cfg);
    const auto bands = band_intervals(cell);
    // mirror through the resonator center: the center site and its couplings
    // take the local (resonator-interior) coefficients
    const InterfaceSpec spec = make_shared_site(cell, cell.a(0), cell.b(cell.k() - 1),
                                                cell.b(cell.k() - 1));
    std::vector<ImpedanceRow> rows;
    rows.reserve(gap_grid.size());
    for (const double w2 : gap_grid) {
        for (const auto& [lo, hi] : bands)
            if (w2 >= lo && w2 <= hi)
                throw std::invalid_argument("impedance_curve: grid point lies on a band");
        const Complex f = interface_f(spec, Complex(w2, 0.0));
        rows.push_back({w2, f.real(), f.imag()});
    }
    return rows;
}

}  // namespace ktoep
