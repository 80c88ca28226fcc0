#include "lsurg/report.hpp"

#include "json.hpp"

namespace lsurg {

std::string report_json(const ProtocolReport& r) {
  nlohmann::json j;
  j["schema"] = 1;
  j["protocol"] = r.protocol;
  j["layout"] = r.layout;
  j["distance"] = r.distance;
  j["rounds"] = r.rounds;
  j["qubits"] = {{"data", r.data_qubits},
                 {"syndrome", r.syndrome_qubits},
                 {"total", r.total_qubits}};
  j["merges"] = nlohmann::json::array();
  for (const MergeRecord& m : r.merges) {
    j["merges"].push_back({{"kind", std::string(1, m.kind)},
                           {"a", m.a},
                           {"b", m.b},
                           {"outcome", m.outcome},
                           {"round", m.round}});
  }
  j["splits"] = nlohmann::json::array();
  for (const SplitRecord& s : r.splits) {
    j["splits"].push_back({{"kind", std::string(1, s.kind)},
                           {"whole", s.whole},
                           {"outcome", s.outcome},
                           {"round", s.round}});
  }
  j["outcomes"] = nlohmann::json::object();
  for (const auto& [name, bit] : r.outcomes) j["outcomes"][name] = bit;
  j["notes"] = r.notes;
  return j.dump(2);
}

}  // namespace lsurg
