#include "ktoep/resonators.hpp"

#include "ktoep/numerics.hpp"
#include "ktoep/rng.hpp"

#include <cmath>

namespace ktoep {

void validate(const ResonatorChain& chain) {
    if (chain.m < 1) throw std::invalid_argument("resonator chain: m must be >= 1");
    if (!(chain.s1 > 0.0) || !(chain.s2 > 0.0))
        throw std::invalid_argument("resonator chain: spacings must be positive");
    if (!(chain.delta > 0.0) || !(chain.delta < 1.0))
        throw std::invalid_argument("resonator chain: delta must lie in (0, 1)");
    if (chain.v_b == Complex(0.0)) throw std::invalid_argument("resonator chain: v_b must be nonzero");
}

std::vector<double> chain_spacings(const ResonatorChain& chain) {
    validate(chain);
    const int N = chain.N();
    std::vector<double> s(static_cast<size_t>(N - 1));
    const int ctr = N / 2;
    // gaps outward from D0: s2, s1, s2, s1, ... mirrored on the left
    for (int j = 0; j < N / 2; ++j) {
        const double val = (j % 2 == 0) ? chain.s2 : chain.s1;
        s[static_cast<size_t>(ctr + j)] = val;
        s[static_cast<size_t>(ctr - 1 - j)] = val;
    }
    return s;
}

TridiagonalR capacitance_from_spacings(std::span<const double> spacings) {
    const Eigen::Index n = static_cast<Eigen::Index>(spacings.size()) + 1;
    if (n < 2) throw std::invalid_argument("capacitance_from_spacings: need at least one gap");
    TridiagonalR c(n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const double beta = -1.0 / spacings[static_cast<size_t>(i)];
        c.upper(i) = beta;
        c.lower(i) = beta;
    }
    // diagonal = sum of inverse adjacent spacings (single neighbor at the ends)
    for (Eigen::Index i = 0; i < n; ++i) {
        double d = 0.0;
        if (i > 0) d -= c.lower(i - 1);
        if (i + 1 < n) d -= c.upper(i);
        c.diag(i) = d;
    }
    return c;
}

TridiagonalR capacitance_matrix(const ResonatorChain& chain) {
    const auto s = chain_spacings(chain);
    return capacitance_from_spacings(s);
}

TridiagonalC generalized_capacitance(const ResonatorChain& chain) {
    const Complex w = chain.v_b * chain.v_b;
    TridiagonalC g = to_complex(capacitance_matrix(chain));
    g.diag *= w;
    g.lower *= w;
    g.upper *= w;
    return g;
}

UnitCell bulk_cell(const ResonatorChain& chain) {
    validate(chain);
    const Complex w = chain.v_b * chain.v_b;
    const Complex alpha = w * (1.0 / chain.s1 + 1.0 / chain.s2);
    CVector a(2), b(2);
    a << alpha, alpha;
    b << w * (-1.0 / chain.s1), w * (-1.0 / chain.s2);
    return make_unit_cell(a, b, b);
}

InterfaceSpec interface_spec(const ResonatorChain& chain) {
    const Complex w = chain.v_b * chain.v_b;
    const Complex beta2 = w * (-1.0 / chain.s2);
    const Complex eta = w * (2.0 / chain.s2);
    return make_shared_site(bulk_cell(chain), eta, beta2, beta2);
}

ResonanceSet resonances(const ResonatorChain& chain) {
    const TridiagonalC g = generalized_capacitance(chain);
    ResonanceSet out;
    out.lambda = eigs_tridiagonal(g, false).values;
    out.omega.resize(out.lambda.size());
    for (Eigen::Index i = 0; i < out.lambda.size(); ++i)
        out.omega(i) = std::sqrt(chain.delta * out.lambda(i));
    double min_gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < out.lambda.size(); ++i)
        for (Eigen::Index j = i + 1; j < out.lambda.size(); ++j)
            min_gap = std::min(min_gap, std::abs(out.lambda(i) - out.lambda(j)));
    out.simple = min_gap > 1e-8;
    return out;
}

TridiagonalR capacitance_with_interface_spacing(const ResonatorChain& chain, double s_int) {
    if (!(s_int > 0.0))
        throw std::invalid_argument("capacitance_with_interface_spacing: s_int must be positive");
    auto s = chain_spacings(chain);
    const size_t ctr = s.size() / 2;  // N-1 gaps, center pair at ctr-1, ctr
    s[ctr - 1] = s_int;
    s[ctr] = s_int;
    return capacitance_from_spacings(s);
}

namespace {

CVector scaled_spectrum(const TridiagonalR& c, Complex w) {
    TridiagonalC g = to_complex(c);
    g.diag *= w;
    g.lower *= w;
    g.upper *= w;
    return eigs_tridiagonal(g, false).values;
}

}  // namespace

std::vector<SweepRow> robustness_sweep_interface(const ResonatorChain& chain,
                                                 std::span<const double> s_int_values) {
    const Complex w = chain.v_b * chain.v_b;
    std::vector<SweepRow> rows;
    rows.reserve(s_int_values.size());
    for (const double s_int : s_int_values) {
        SweepRow row;
        row.param = s_int;
        row.values = scaled_spectrum(capacitance_with_interface_spacing(chain, s_int), w);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SweepRow> robustness_sweep_noise(const ResonatorChain& chain,
                                             std::span<const double> noise_levels, int trials,
                                             std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("robustness_sweep_noise: trials must be >= 1");
    const Complex w = chain.v_b * chain.v_b;
    const auto base = chain_spacings(chain);
    std::vector<SweepRow> rows;
    rows.reserve(noise_levels.size() * static_cast<size_t>(trials));
    for (size_t li = 0; li < noise_levels.size(); ++li) {
        const double level = noise_levels[li];
        if (level < 0.0 || level >= 1.0)
            throw std::invalid_argument("robustness_sweep_noise: levels must lie in [0, 1)");
        for (int t = 0; t < trials; ++t) {
            auto s = base;
            for (size_t g = 0; g < s.size(); ++g)
                s[g] *= 1.0 + rng::uniform_sym(seed, (static_cast<std::uint64_t>(li) << 32) |
                                                         static_cast<std::uint64_t>(t),
                                               g, level);
            SweepRow row;
            row.param = level;
            row.trial = t;
            row.values = scaled_spectrum(capacitance_from_spacings(s), w);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace ktoep
