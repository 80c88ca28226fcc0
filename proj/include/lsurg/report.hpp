#pragma once

#include <string>
#include <utility>
#include <vector>

namespace lsurg {

// One joint-logical measurement performed at a junction during a protocol.
struct MergeRecord {
  char kind = 'R';   // 'R': rough junction (joint XX), 'S': smooth (joint ZZ)
  std::string a, b;  // names of the two patches joined
  int outcome = 0;   // measured joint eigenvalue bit (0 means +1)
  int round = 0;     // rounds_run() when the junction was formed
};

// One patch cut performed during a protocol.
struct SplitRecord {
  char kind = 'S';    // 'S': smooth cut (seam measured in Z), 'R': rough
  std::string whole;  // name of the patch that was cut in two
  int outcome = 0;    // seam byproduct bit folded into the halves' frames
  int round = 0;
};

// Summary of one executed protocol; the CLI serializes this to JSON.
struct ProtocolReport {
  std::string protocol;
  std::string layout;  // one-line geometry description
  int distance = 0;
  std::vector<MergeRecord> merges;
  std::vector<SplitRecord> splits;
  int rounds = 0;  // error-correction rounds consumed
  int data_qubits = 0;
  int syndrome_qubits = 0;
  int total_qubits = 0;
  std::vector<std::pair<std::string, int>> outcomes;  // named logical bits
  std::vector<std::string> notes;
};

// Deterministic JSON rendering (sorted keys, no float formatting surprises).
std::string report_json(const ProtocolReport& r);

}  // namespace lsurg
