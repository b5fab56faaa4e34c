#include "ktoep/disorder.hpp"

#include "ktoep/numerics.hpp"
#include "ktoep/rng.hpp"

#include <cmath>

namespace ktoep {

namespace {

// Bond pattern on each side, counted outward from the center: the wrap
// coupling b_k' joins the center, then a_1, b_1, a_2, b_2, ... so that the
// zero mode lives on the odd sites with the -a/b transfer ratio.
Complex base_bond(const DisorderConfig& cfg, int bond_from_center) {
    const int kp = cfg.kp();
    if (bond_from_center == 0) return cfg.base_b(kp - 1);
    const int j = bond_from_center - 1;  // 0-based into the a1, b1, a2, b2, ... pattern
    const int pair = (j / 2) % kp;
    return (j % 2 == 0) ? cfg.base_a(pair) : cfg.base_b(pair);
}

Complex perturbed_bond(const DisorderConfig& cfg, int trial, std::uint64_t global_index,
                       int bond_from_center) {
    const double u = rng::uniform_sym(cfg.seed, static_cast<std::uint64_t>(trial), global_index, cfg.d);
    return base_bond(cfg, bond_from_center) * (1.0 + u);
}

}  // namespace

void validate(const DisorderConfig& cfg) {
    if (cfg.base_a.size() < 1 || cfg.base_a.size() != cfg.base_b.size())
        throw std::invalid_argument("disorder: base_a and base_b must be nonempty, equal length");
    if (!(cfg.d >= 0.0) || !(cfg.d < 1.0))
        throw std::invalid_argument("disorder: d must lie in [0, 1) to preserve coupling signs");
    if (cfg.m < 1) throw std::invalid_argument("disorder: m must be >= 1");
    if (cfg.trials < 1) throw std::invalid_argument("disorder: trials must be >= 1");
    for (Eigen::Index i = 0; i < cfg.base_a.size(); ++i)
        if (cfg.base_a(i) == Complex(0.0) || cfg.base_b(i) == Complex(0.0))
            throw std::invalid_argument("disorder: zero base coupling");
}

TridiagonalC build_disordered_chain(const DisorderConfig& cfg, int trial) {
    validate(cfg);
    const int kp = cfg.kp();
    const int side = 2 * kp * cfg.m - 1;  // sites per side; n = 2*side + 1 is odd
    const Eigen::Index n = 2 * side + 1;
    const Eigen::Index ctr = side;
    TridiagonalC t(n);
    // right-side bonds get global indices 0..side-1, left-side bonds side..2*side-1
    for (int j = 0; j < side; ++j) {
        const Complex right = perturbed_bond(cfg, trial, static_cast<std::uint64_t>(j), j);
        const Complex left = perturbed_bond(cfg, trial, static_cast<std::uint64_t>(side + j), j);
        t.upper(ctr + j) = right;
        t.lower(ctr + j) = right;
        t.upper(ctr - 1 - j) = left;
        t.lower(ctr - 1 - j) = left;
    }
    return t;
}

ZeroMode zero_mode(const TridiagonalC& chain) {
    const EigenDecomposition d = eigs_tridiagonal(chain, true);
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < d.values.size(); ++i)
        if (std::abs(d.values(i)) < std::abs(d.values(best))) best = i;
    return {d.values(best), d.vectors->col(best)};
}

std::vector<Complex> floquet_process(const DisorderConfig& cfg, int trial, int steps) {
    validate(cfg);
    if (steps < 0) throw std::invalid_argument("floquet_process: steps must be >= 0");
    std::vector<Complex> z(static_cast<size_t>(steps) + 1);
    z[0] = Complex(1.0);  // z_0 = 1 normalization
    for (int i = 1; i <= steps; ++i) {
        // dimer i uses the a-bond at distance 2i-1 and the b-bond at 2i
        const Complex ai = perturbed_bond(cfg, trial, static_cast<std::uint64_t>(2 * i - 1), 2 * i - 1);
        const Complex bi = perturbed_bond(cfg, trial, static_cast<std::uint64_t>(2 * i), 2 * i);
        z[static_cast<size_t>(i)] = -ai * z[static_cast<size_t>(i - 1)] / bi;
    }
    return z;
}

DecayStats decay_rate_stats(const DisorderConfig& cfg) {
    validate(cfg);
    const int kp = cfg.kp();
    const int blocks = cfg.m;  // one block per kp dimers
    if (blocks < 2) throw std::invalid_argument("decay_rate_stats: need m >= 2 blocks to fit a slope");

    DecayStats stats;
    Complex prod_a = 1.0, prod_b = 1.0;
    for (int i = 0; i < kp; ++i) {
        prod_a *= cfg.base_a(i);
        prod_b *= cfg.base_b(i);
    }
    stats.theoretical = std::log(std::abs(prod_a / prod_b));

    stats.per_trial.reserve(static_cast<size_t>(cfg.trials));
    for (int trial = 0; trial < cfg.trials; ++trial) {
        const auto z = floquet_process(cfg, trial, kp * (blocks - 1));
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int i = 0; i < blocks; ++i) {
            const double x = i;
            const double y = std::log(std::abs(z[static_cast<size_t>(kp * i)]));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double n = blocks;
        stats.per_trial.push_back((n * sxy - sx * sy) / (n * sxx - sx * sx));
    }
    double mean = 0.0;
    for (const double r : stats.per_trial) mean += r;
    mean /= static_cast<double>(stats.per_trial.size());
    double var = 0.0;
    for (const double r : stats.per_trial) var += (r - mean) * (r - mean);
    stats.mean = mean;
    stats.stddev = std::sqrt(var / static_cast<double>(stats.per_trial.size()));
    return stats;
}

double eigenvector_decay_fit(const CVector& vector, int k_block) {
    const Eigen::Index n = vector.size();
    if (n % 2 == 0) throw std::invalid_argument("eigenvector_decay_fit: odd length expected");
    if (k_block < 1) throw std::invalid_argument("eigenvector_decay_fit: k_block must be >= 1");
    const Eigen::Index ctr = n / 2;
    const Eigen::Index side = n - ctr - 1;
    const int cells = static_cast<int>(side / k_block);
    const int skip = 2;  // interface and boundary transients bias the slope
    if (cells <= 2 * skip + 1)
        throw std::invalid_argument("eigenvector_decay_fit: vector too short for the fit window");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (int c = skip; c < cells - skip; ++c) {
        double env = 0.0;
        for (int r = 0; r < k_block; ++r) env = std::max(env, std::abs(vector(ctr + 1 + c * k_block + r)));
        if (env <= 1e-300) continue;  // entire block on the vanishing sublattice
        const double x = c, y = std::log(env);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 2) throw NumericalError("eigenvector_decay_fit: not enough nonzero blocks");
    const double nn = count;
    return (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
}

}  // namespace ktoep
