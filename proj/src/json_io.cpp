#include "chancode/json_io.hpp"

#include <sstream>

namespace chancode {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw ConfigError(msg); }

double number_at(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) bad(std::string("missing numeric field: ") + key);
  return j[key].get<double>();
}

}  // namespace

json mat_to_json(const CMat& m) {
  json rows = json::array();
  for (int r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.dim(); ++c) {
      row.push_back({m.at(r, c).real(), m.at(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

CMat mat_from_json(const json& j) {
  if (!j.is_array() || j.empty()) bad("matrix must be a non-empty array of rows");
  const int dim = static_cast<int>(j.size());
  CMat m(dim);
  for (int r = 0; r < dim; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != dim) bad("matrix is not square");
    for (int c = 0; c < dim; ++c) {
      const json& cell = j[r][c];
      if (!cell.is_array() || cell.size() != 2) bad("matrix entries must be [re, im] pairs");
      m.at(r, c) = cplx(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  return m;
}

json state_to_json(const DensityOp& rho) {
  if (rho.dim() == 2) {
    const BlochVec r = state_to_bloch(rho);
    return json{{"bloch", {r.x, r.y, r.z}}};
  }
  return json{{"matrix", mat_to_json(rho.mat())}};
}

DensityOp state_from_json(const json& j) {
  if (!j.is_object()) bad("state must be an object");
  if (j.contains("bloch")) {
    const json& b = j["bloch"];
    if (!b.is_array() || b.size() != 3) bad("bloch must be [x, y, z]");
    return bloch_to_state({b[0].get<double>(), b[1].get<double>(), b[2].get<double>()});
  }
  if (j.contains("matrix")) return DensityOp(mat_from_json(j["matrix"]));
  bad("state needs a 'bloch' or 'matrix' field");
}

json ensemble_to_json(const Ensemble& e) {
  json items = json::array();
  for (const auto& item : e.items()) {
    items.push_back({{"prior", item.prior}, {"state", state_to_json(item.state)}});
  }
  return json{{"dim", e.dim()}, {"items", std::move(items)}};
}

Ensemble ensemble_from_json(const json& j) {
  if (!j.is_object() || !j.contains("items") || !j["items"].is_array()) {
    bad("ensemble needs an 'items' array");
  }
  const int dim = j.contains("dim") ? j["dim"].get<int>() : 2;
  std::vector<EnsembleItem> items;
  for (const json& item : j["items"]) {
    if (!item.contains("state")) bad("ensemble item needs a 'state'");
    items.push_back({number_at(item, "prior"), state_from_json(item["state"])});
  }
  try {
    return Ensemble(dim, std::move(items));
  } catch (const Error& err) {
    bad(std::string("invalid ensemble: ") + err.what());
  }
}

json channel_to_json_kraus(const KrausChannel& n) {
  json ops = json::array();
  for (const CMat& k : n.kraus()) ops.push_back(mat_to_json(k));
  return json{{"kind", "kraus"}, {"ops", std::move(ops)}};
}

KrausChannel channel_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) bad("channel needs a 'kind' field");
  const std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "flip") {
      const std::string axis = j.value("axis", "X");
      if (axis != "X" && axis != "Y") bad("flip axis must be X or Y");
      return flip_channel(axis == "X" ? FlipAxis::X : FlipAxis::Y, number_at(j, "p"));
    }
    if (kind == "depolarizing") {
      return depolarizing(number_at(j, "eta"), j.value("dim", 2));
    }
    if (kind == "fixed_state") {
      if (!j.contains("sigma")) bad("fixed_state channel needs 'sigma'");
      return fixed_state_channel(state_from_json(j["sigma"]), number_at(j, "eta"));
    }
    if (kind == "kraus") {
      if (!j.contains("ops") || !j["ops"].is_array() || j["ops"].empty()) {
        bad("kraus channel needs a non-empty 'ops' array");
      }
      std::vector<CMat> ops;
      for (const json& op : j["ops"]) ops.push_back(mat_from_json(op));
      const int dim = ops.front().dim();
      return KrausChannel(dim, std::move(ops));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& err) {
    bad(std::string("invalid channel: ") + err.what());
  }
  bad("unknown channel kind: " + kind);
}

json povm_to_json(const Povm& m) {
  json elements = json::array();
  for (const CMat& el : m.elements()) elements.push_back(mat_to_json(el));
  return elements;
}

Povm povm_from_json(const json& j) {
  if (!j.is_array() || j.empty()) bad("POVM must be a non-empty array of matrices");
  std::vector<CMat> elements;
  for (const json& el : j) elements.push_back(mat_from_json(el));
  try {
    return Povm(std::move(elements));
  } catch (const Error& err) {
    bad(std::string("invalid POVM: ") + err.what());
  }
}

json counts_to_json(const ShotResult& result) {
  json counts = json::object();
  for (const auto& [key, count] : result.counts) counts[key] = count;
  return json{{"shots", result.shots}, {"counts", std::move(counts)}};
}

json protocol_report_to_json(const ProtocolReport& report) {
  return json{{"p_ideal", report.p_id},
              {"p_channel", report.p_channel},
              {"p_channel_fixed", report.p_channel_fixed},
              {"p_coded", report.p_coded},
              {"eta", report.eta_fit},
              {"measurement_updated", report.measurement_updated}};
}

std::string transcript_to_jsonl(const ProtocolTranscript& transcript) {
  std::ostringstream out;
  for (const ProtocolRound& round : transcript.rounds) {
    out << json{{"round", round.round_index},
                {"x", round.state_label},
                {"j", round.design_index},
                {"outcome", round.outcome_label}}
               .dump()
        << '\n';
  }
  return out.str();
}

}  // namespace chancode
