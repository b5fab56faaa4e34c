#include "ktoep/json_io.hpp"

#include <nlohmann/json.hpp>

namespace ktoep {

namespace {

CVector cvector_from_json(const Json& j) {
    CVector v(j.size());
    Eigen::Index i = 0;
    for (const auto& e : j) v(i++) = complex_from_json(e);
    return v;
}

Json json_from_cvector(const CVector& v) {
    Json j = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(to_json(v(i)));
    return j;
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("expected a complex number as [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

Json to_json(const UnitCell& cell) {
    Json j;
    j["k"] = cell.k();
    j["a"] = json_from_cvector(cell.a);
    j["b"] = json_from_cvector(cell.b);
    j["c"] = json_from_cvector(cell.c);
    return j;
}

UnitCell unit_cell_from_json(const Json& j) {
    const CVector a = cvector_from_json(j.at("a"));
    const CVector b = cvector_from_json(j.at("b"));
    const CVector c = j.contains("c") ? cvector_from_json(j.at("c")) : b;
    if (j.contains("k") && j.at("k").get<int>() != static_cast<int>(a.size()))
        throw std::invalid_argument("unit cell: field k does not match array lengths");
    return make_unit_cell(a, b, c);
}

Json to_json(const InterfaceSpec& spec) {
    Json j = to_json(spec.cell);
    j["kind"] = spec.kind == InterfaceKind::shared_site ? "shared_site" : "common_coupling";
    j["eta"] = to_json(spec.eta);
    j["q"] = to_json(spec.q);
    j["s"] = to_json(spec.s);
    return j;
}

InterfaceSpec interface_spec_from_json(const Json& j) {
    UnitCell cell = unit_cell_from_json(j);
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "shared_site") {
        return make_shared_site(std::move(cell), complex_from_json(j.at("eta")),
                                complex_from_json(j.at("q")), complex_from_json(j.at("s")));
    }
    if (kind == "common_coupling")
        return make_common_coupling(std::move(cell), complex_from_json(j.at("q")));
    throw std::invalid_argument("interface spec: unknown kind '" + kind + "'");
}

Json to_json(const ResonatorChain& chain) {
    return Json{{"m", chain.m},   {"s1", chain.s1},           {"s2", chain.s2},
                {"v_re", chain.v_b.real()}, {"v_im", chain.v_b.imag()}, {"delta", chain.delta}};
}

ResonatorChain resonator_chain_from_json(const Json& j) {
    ResonatorChain chain;
    chain.m = j.at("m").get<int>();
    chain.s1 = j.at("s1").get<double>();
    chain.s2 = j.at("s2").get<double>();
    chain.v_b = Complex(j.value("v_re", 1.0), j.value("v_im", 0.0));
    chain.delta = j.value("delta", 1e-3);
    validate(chain);
    return chain;
}

Json to_json(const DisorderConfig& cfg) {
    Json j;
    j["k"] = cfg.kp();
    j["a"] = json_from_cvector(cfg.base_a);
    j["b"] = json_from_cvector(cfg.base_b);
    j["d"] = cfg.d;
    j["m"] = cfg.m;
    j["seed"] = cfg.seed;
    j["trials"] = cfg.trials;
    return j;
}

DisorderConfig disorder_config_from_json(const Json& j) {
    DisorderConfig cfg;
    cfg.base_a = cvector_from_json(j.at("a"));
    cfg.base_b = cvector_from_json(j.at("b"));
    cfg.d = j.at("d").get<double>();
    cfg.m = j.at("m").get<int>();
    cfg.seed = j.value("seed", 0ull);
    cfg.trials = j.value("trials", 1);
    validate(cfg);
    return cfg;
}

Json to_json(const FdmConfig& cfg) {
    Json intervals = Json::array();
    for (auto [s, e] : cfg.intervals) intervals.push_back(Json::array({s, e}));
    return Json{{"k", cfg.k},
                {"eps_inside", cfg.eps_inside},
                {"eps_outside", cfg.eps_outside},
                {"mu0", cfg.mu0},
                {"intervals", intervals}};
}

FdmConfig fdm_config_from_json(const Json& j) {
    FdmConfig cfg;
    cfg.k = j.at("k").get<int>();
    cfg.eps_inside = j.at("eps_inside").get<double>();
    cfg.eps_outside = j.at("eps_outside").get<double>();
    cfg.mu0 = j.value("mu0", 1.0);
    cfg.intervals.clear();
    for (const auto& e : j.at("intervals"))
        cfg.intervals.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    validate(cfg);
    return cfg;
}

std::string membership_label(Membership m) {
    switch (m) {
        case Membership::B0: return "B0";
        case Membership::B1: return "B1";
        case Membership::Both: return "both";
    }
    return "B0";
}

std::string parity_label(Parity p) {
    switch (p) {
        case Parity::monopole: return "monopole";
        case Parity::dipole: return "dipole";
        case Parity::none: return "none";
    }
    return "none";
}

Json to_json(const EdgeModeReport& report) {
    Json j;
    j["lambda"] = to_json(report.lambda);
    j["z"] = to_json(report.floquet_z);
    j["z_at_infinity"] = report.z_at_infinity;
    j["abs_z"] = report.abs_z;
    j["c0_abs"] = std::abs(report.c0);
    j["is_edge"] = report.is_edge;
    j["marginal"] = report.marginal;
    j["membership"] = membership_label(report.membership);
    return j;
}

Json to_json(const InterfaceMode& mode) {
    Json j;
    j["lambda"] = to_json(mode.lambda);
    j["kind"] = mode.kind == InterfaceModeKind::edge_induced ? "edge_induced" : "matched";
    j["parity"] = parity_label(mode.parity);
    j["floquet_z"] = to_json(mode.floquet_z);
    j["decay_rate"] = mode.decay_rate;
    j["residual"] = mode.residual;
    j["sign_a"] = mode.sign_a;
    j["vector"] = json_from_cvector(mode.vector);
    return j;
}

}  // namespace ktoep
