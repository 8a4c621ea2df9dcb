#pragma once

#include <string>

#include <json.hpp>

#include "sfe/attack.hpp"
#include "sfe/bounds.hpp"
#include "sfe/entropy.hpp"
#include "sfe/functions.hpp"
#include "sfe/primitives.hpp"

namespace sfe {

using Json = nlohmann::ordered_json;

// Complex numbers are [re, im] pairs; states carry their layout.

Json to_json(const RegisterLayout& layout);
RegisterLayout layout_from_json(const Json& j);

Json to_json(const PureState& psi);
PureState pure_state_from_json(const Json& j);

Json to_json(const DensityOperator& rho);
DensityOperator density_from_json(const Json& j);

Json to_json(const FunctionTable& f);           // {"x","y","z","t"}
FunctionTable function_from_json(const Json& j);

Json to_json(const JointDistribution& p);       // {"u","v","p"} dense rows
JointDistribution joint_from_json(const Json& j);

Json to_json(const ProtocolInstance& p);
ProtocolInstance protocol_from_json(const Json& j);

Json to_json(const BoundReport& r);
Json to_json(const AttackResult& r);
Json to_json(const Thm2Experiment& e);
Json to_json(const InequalityReport& r);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

} // namespace sfe
