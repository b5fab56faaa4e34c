#pragma once

#include "ktoep/disorder.hpp"
#include "ktoep/edge.hpp"
#include "ktoep/fdm.hpp"
#include "ktoep/interface.hpp"
#include "ktoep/resonators.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>

namespace ktoep {

using Json = nlohmann::json;

/// Complex numbers travel as [re, im] pairs.
Json to_json(Complex z);
Complex complex_from_json(const Json& j);

/// { "k": int, "a": [[re,im],...], "b": [...], "c": [...] }  ("c" may be
/// omitted for symmetric cells).
Json to_json(const UnitCell& cell);
UnitCell unit_cell_from_json(const Json& j);

/// Cell fields plus { "kind": "shared_site"|"common_coupling",
///                    "eta": [re,im], "q": [re,im], "s": [re,im] }.
Json to_json(const InterfaceSpec& spec);
InterfaceSpec interface_spec_from_json(const Json& j);

/// { "m": int, "s1": f, "s2": f, "v_re": f, "v_im": f, "delta": f }
Json to_json(const ResonatorChain& chain);
ResonatorChain resonator_chain_from_json(const Json& j);

/// { "k": int, "a": [...], "b": [...], "d": f, "m": int, "seed": int, "trials": int }
Json to_json(const DisorderConfig& cfg);
DisorderConfig disorder_config_from_json(const Json& j);

/// { "k": int, "eps_inside": f, "eps_outside": f, "mu0": f, "intervals": [[s,e],...] }
Json to_json(const FdmConfig& cfg);
FdmConfig fdm_config_from_json(const Json& j);

/// { "lambda": [re,im], "z": [re,im], "abs_z": f, "c0_abs": f,
///   "is_edge": bool, "membership": "B0"|"B1"|"both" }
Json to_json(const EdgeModeReport& report);

Json to_json(const InterfaceMode& mode);

std::string membership_label(Membership m);
std::string parity_label(Parity p);

}  // namespace ktoep
