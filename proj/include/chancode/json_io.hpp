#pragma once

#include <string>

#include <json.hpp>

#include "chancode/circuit.hpp"
#include "chancode/discrimination.hpp"
#include "chancode/protocol.hpp"

namespace chancode {

// JSON schemas:
//   matrix:   [[[re, im], ...], ...] (rows of [re, im] pairs)
//   state:    {"bloch": [x, y, z]} or {"matrix": ...}
//   ensemble: {"dim": 2, "items": [{"prior": 0.5, "state": {...}}, ...]}
//   channel:  {"kind": "flip", "axis": "X", "p": 0.25}
//           | {"kind": "depolarizing", "eta": 0.5}
//           | {"kind": "fixed_state", "eta": 0.3, "sigma": {...}}
//           | {"kind": "kraus", "ops": [matrix, ...]}
//   counts:   {"shots": 8000, "counts": {"00": ..., "01": ..., "10": ..., "11": ...}}
// Malformed input raises ConfigError.

nlohmann::json mat_to_json(const CMat& m);
CMat mat_from_json(const nlohmann::json& j);

nlohmann::json state_to_json(const DensityOp& rho);
DensityOp state_from_json(const nlohmann::json& j);

nlohmann::json ensemble_to_json(const Ensemble& e);
Ensemble ensemble_from_json(const nlohmann::json& j);

nlohmann::json channel_to_json_kraus(const KrausChannel& n);
KrausChannel channel_from_json(const nlohmann::json& j);

nlohmann::json povm_to_json(const Povm& m);
Povm povm_from_json(const nlohmann::json& j);

nlohmann::json counts_to_json(const ShotResult& result);

nlohmann::json protocol_report_to_json(const ProtocolReport& report);

// One transcript round per line: {"round":i,"x":...,"j":...,"outcome":...}
std::string transcript_to_jsonl(const ProtocolTranscript& transcript);

}  // namespace chancode
