#include "lsurg/decoder.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "lsurg/matching.hpp"

namespace lsurg {

namespace {

char type_letter(CheckType t) { return t == CheckType::kX ? 'X' : 'Z'; }

// Transition events grouped per activation boundary.
struct TransitionInfo {
  std::map<int, std::pair<int, char>> mo;  // qubit -> (record, basis)
  std::map<int, char> init;                // qubit -> basis
};

struct ModelBuilder {
  const SurgeryContext& ctx;
  const std::vector<SlotInstance>& slots;
  const std::vector<ActivationSegment>& segs;
  int n_segments;
  int total_rounds;

  std::vector<TransitionInfo> trans;                 // per segment boundary
  std::vector<std::map<int, std::vector<int>>> qslots;  // seg -> qubit -> slots
  std::map<int, int> final_by_qubit;                 // qubit -> finals_ index
  std::map<int, int> fresh_first;                    // first record -> ref record

  std::vector<Detector> detectors;
  std::vector<std::vector<int>> rec_dets;  // record id -> detector indices
  std::map<std::pair<int, int>, int> edge_index;
  std::vector<DecoderEdge> edges;

  explicit ModelBuilder(const SurgeryContext& c)
      : ctx(c),
        slots(c.slots()),
        segs(c.segments()),
        n_segments(static_cast<int>(c.segments().size())),
        total_rounds(c.rounds_run()) {}

  int seg_end(int g) const {
    return g + 1 < n_segments ? segs[g + 1].first_round : total_rounds;
  }

  void index_history() {
    trans.resize(n_segments);
    qslots.resize(n_segments);
    std::map<int, int> boundary_of_round;
    for (int g = 0; g < n_segments; ++g) {
      if (!boundary_of_round.emplace(segs[g].first_round, g).second) {
        throw std::logic_error("two activations without rounds between them");
      }
    }
    for (const MeasureOutEvent& e : ctx.measure_outs()) {
      auto it = boundary_of_round.find(e.round_after);
      if (it == boundary_of_round.end()) {
        throw std::logic_error("measure-out not followed by an activation");
      }
      trans[it->second].mo[e.qubit] = {e.record, e.basis};
    }
    for (const InitEvent& e : ctx.inits()) {
      auto it = boundary_of_round.find(e.round_after);
      if (it == boundary_of_round.end()) {
        throw std::logic_error("init not followed by an activation");
      }
      trans[it->second].init[e.qubit] = e.basis;
    }
    for (int g = 0; g < n_segments; ++g) {
      for (int id : segs[g].slot_ids) {
        const SlotInstance& s = slots[id];
        if (s.born < 0) continue;
        if (s.born != segs[g].first_round) {
          throw std::logic_error("check not measured from its first round");
        }
        for (int q : s.data_qubits) qslots[g][q].push_back(id);
      }
    }
    const auto& finals = ctx.final_qubits();
    for (int i = 0; i < static_cast<int>(finals.size()); ++i) {
      final_by_qubit[finals[i].qubit] = i;
    }
    for (const SlotInstance& s : slots) {
      if (s.fresh && !s.outcome_records.empty()) {
        fresh_first[s.outcome_records[0]] = s.reference_record;
      }
    }
  }

  void add_detector(Detector d) {
    std::sort(d.records.begin(), d.records.end());
    // Cancel duplicated record ids pairwise: a record appearing twice in a
    // relation contributes nothing to the parity.
    std::vector<int> unique_recs;
    for (size_t i = 0; i < d.records.size();) {
      size_t j = i;
      while (j < d.records.size() && d.records[j] == d.records[i]) ++j;
      if ((j - i) % 2) unique_recs.push_back(d.records[i]);
      i = j;
    }
    d.records = std::move(unique_recs);
    if (d.records.empty()) {
      if (d.constant) throw std::logic_error("unsatisfiable empty detector");
      return;
    }
    int idx = static_cast<int>(detectors.size());
    for (int r : d.records) {
      if (r >= static_cast<int>(rec_dets.size())) rec_dets.resize(r + 1);
      rec_dets[r].push_back(idx);
    }
    detectors.push_back(std::move(d));
  }

  void build_detectors() {
    std::set<std::vector<int>> seen;
    for (const SlotInstance& s : slots) {
      if (s.born < 0) continue;
      if (!s.fresh) {
        Detector d;
        d.kind = DetectorKind::kBirth;
        d.sector = s.type;
        d.slot_id = s.id;
        d.records = s.relation_records;
        d.records.push_back(s.outcome_records[0]);
        d.constant = s.relation_constant;
        add_detector(std::move(d));
      }
      for (size_t i = 1; i < s.outcome_records.size(); ++i) {
        Detector d;
        d.kind = DetectorKind::kTimeDiff;
        d.sector = s.type;
        d.slot_id = s.id;
        d.records = {s.outcome_records[i - 1], s.outcome_records[i]};
        add_detector(std::move(d));
      }
      if (s.died < 0 && slot_fully_read(s)) {
        Detector d;
        d.kind = DetectorKind::kReadout;
        d.sector = s.type;
        d.slot_id = s.id;
        d.records.push_back(s.outcome_records.back());
        for (int q : s.data_qubits) {
          d.records.push_back(ctx.final_qubits()[final_by_qubit[q]].record);
        }
        add_detector(std::move(d));
      }
    }
    for (const Detector& d : detectors) {
      if (!seen.insert(d.records).second) {
        throw std::logic_error("duplicate detector record set");
      }
    }
  }

  bool slot_fully_read(const SlotInstance& s) {
    char want = type_letter(s.type);
    for (int q : s.data_qubits) {
      auto it = final_by_qubit.find(q);
      if (it == final_by_qubit.end()) return false;
      if (ctx.final_qubits()[it->second].basis != want) return false;
    }
    return true;
  }

  // Record flips caused by a single Pauli fault of type L on qubit q.
  // `g0`/`r0` give the first round that can see it; `pre` means the fault
  // lands before the transition into segment g0 (so that transition's
  // measure-out or init on q collapses it first).
  std::vector<int> fault_flips(int q, char L, int g0, int r0, bool pre) const {
    std::vector<int> flips;
    bool alive = true;
    if (pre) {
      auto mo = trans[g0].mo.find(q);
      if (mo != trans[g0].mo.end()) {
        if (mo->second.second != L) flips.push_back(mo->second.first);
        alive = false;
      } else if (trans[g0].init.count(q)) {
        alive = false;
      }
    }
    for (int g = g0; alive && g < n_segments; ++g) {
      auto it = qslots[g].find(q);
      if (it != qslots[g].end()) {
        int from = std::max(r0, segs[g].first_round);
        int end = seg_end(g);
        for (int id : it->second) {
          const SlotInstance& s = slots[id];
          if (type_letter(s.type) == L) continue;
          for (int u = from; u < end; ++u) {
            flips.push_back(s.outcome_records[u - s.born]);
          }
        }
      }
      if (g + 1 < n_segments) {
        auto mo = trans[g + 1].mo.find(q);
        if (mo != trans[g + 1].mo.end()) {
          if (mo->second.second != L) flips.push_back(mo->second.first);
          alive = false;
        } else if (trans[g + 1].init.count(q)) {
          alive = false;
        }
      }
    }
    if (alive) {
      auto it = final_by_qubit.find(q);
      if (it != final_by_qubit.end() &&
          ctx.final_qubits()[it->second].basis != L) {
        flips.push_back(ctx.final_qubits()[it->second].record);
      }
    }
    return flips;
  }

  std::vector<int> payload_of(const std::vector<int>& flips) const {
    std::vector<int> payload;
    const auto& records = ctx.records();
    for (int r : flips) {
      RecordKind k = records[r].kind;
      if (k == RecordKind::kMeasureOut || k == RecordKind::kFinalQubit) {
        payload.push_back(r);
      } else if (k == RecordKind::kSlotOutcome) {
        auto it = fresh_first.find(r);
        if (it != fresh_first.end()) payload.push_back(it->second);
      }
    }
    std::sort(payload.begin(), payload.end());
    return payload;
  }

  void add_mechanism(const std::vector<int>& flips) {
    if (flips.empty()) return;
    std::map<int, int> hits;
    for (int r : flips) {
      if (r < static_cast<int>(rec_dets.size())) {
        for (int d : rec_dets[r]) hits[d] ^= 1;
      }
    }
    std::vector<int> fired;
    for (auto& [d, parity] : hits) {
      if (parity) fired.push_back(d);
    }
    std::vector<int> payload = payload_of(flips);
    if (fired.empty()) {
      if (!payload.empty()) {
        throw std::logic_error(
            "fault corrupts interpretation records without firing detectors");
      }
      return;
    }
    if (fired.size() > 2) {
      throw std::logic_error("fault fires more than two detectors");
    }
    int a = fired[0];
    int b = fired.size() == 2 ? fired[1] : -1;
    auto key = std::make_pair(b, a);  // b < a (boundary -1 sorts first)
    if (edge_index.count(key)) return;
    edge_index[key] = static_cast<int>(edges.size());
    edges.push_back(DecoderEdge{a, b, std::move(payload)});
  }

  void enumerate_mechanisms() {
    // Single record flips on every check outcome.
    for (const SlotInstance& s : slots) {
      for (int r : s.outcome_records) add_mechanism({r});
    }
    // Single record flips on every measure-out.
    for (const MeasureOutEvent& e : ctx.measure_outs()) {
      add_mechanism({e.record});
    }
    const char kLetters[2] = {'X', 'Z'};
    for (int g = 0; g < n_segments; ++g) {
      // Faults just before the transition into segment g, on qubits that the
      // transition can collapse.
      if (g > 0) {
        for (int q : segs[g - 1].data_qubits) {
          for (char L : kLetters) {
            add_mechanism(fault_flips(q, L, g, segs[g].first_round, true));
          }
        }
      }
      // Faults between the transition and each round of segment g.  A fault
      // aligned with a fresh init's basis leaves the state unchanged and is
      // not a mechanism.
      int end = seg_end(g);
      for (int q : segs[g].data_qubits) {
        for (char L : kLetters) {
          auto init = trans[g].init.find(q);
          if (init == trans[g].init.end() || init->second != L) {
            add_mechanism(fault_flips(q, L, g, segs[g].first_round, false));
          }
          for (int r = segs[g].first_round + 1; r < end; ++r) {
            add_mechanism(fault_flips(q, L, g, r, false));
          }
        }
      }
    }
    // Faults after the last round, before the final readout.
    for (const FinalQubitReadout& f : ctx.final_qubits()) {
      for (char L : kLetters) {
        if (f.basis != L) add_mechanism({f.record});
      }
    }
  }

  DetectorModel finish() {
    DetectorModel model;
    model.detectors = std::move(detectors);
    model.edges = std::move(edges);
    model.adj.assign(model.detectors.size() + 1, {});
    int boundary = model.boundary_node();
    for (int e = 0; e < static_cast<int>(model.edges.size()); ++e) {
      const DecoderEdge& ed = model.edges[e];
      model.adj[ed.a].push_back(e);
      model.adj[ed.b < 0 ? boundary : ed.b].push_back(e);
    }
    return model;
  }
};

}  // namespace

DetectorModel build_detector_model(const SurgeryContext& ctx) {
  ModelBuilder b(ctx);
  b.index_history();
  b.build_detectors();
  b.enumerate_mechanisms();
  return b.finish();
}

std::vector<int> fired_detectors(const DetectorModel& model,
                                 const SurgeryContext& ctx) {
  std::vector<int> fired;
  for (int i = 0; i < static_cast<int>(model.detectors.size()); ++i) {
    const Detector& d = model.detectors[i];
    int parity = d.constant;
    for (int r : d.records) parity ^= ctx.record_value(r);
    if (parity) fired.push_back(i);
  }
  return fired;
}

namespace {

struct BfsTree {
  std::vector<int64_t> dist;
  std::vector<int> parent_edge;
  std::vector<int> parent_node;
};

BfsTree bfs_from(const DetectorModel& model, int src) {
  int n = model.boundary_node() + 1;
  BfsTree t;
  t.dist.assign(n, -1);
  t.parent_edge.assign(n, -1);
  t.parent_node.assign(n, -1);
  std::deque<int> queue;
  t.dist[src] = 0;
  queue.push_back(src);
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int e : model.adj[u]) {
      const DecoderEdge& ed = model.edges[e];
      int a = ed.a;
      int b = ed.b < 0 ? model.boundary_node() : ed.b;
      int v = (a == u) ? b : a;
      if (t.dist[v] < 0) {
        t.dist[v] = t.dist[u] + 1;
        t.parent_edge[v] = e;
        t.parent_node[v] = u;
        queue.push_back(v);
      }
    }
  }
  return t;
}

void xor_path_payload(const DetectorModel& model, const BfsTree& t, int dst,
                      DepSet& out) {
  for (int v = dst; t.parent_edge[v] >= 0; v = t.parent_node[v]) {
    const DecoderEdge& ed = model.edges[t.parent_edge[v]];
    DepSet p(ed.payload.begin(), ed.payload.end());
    dep_xor(out, p);
  }
}

}  // namespace

DecodeResult decode(const DetectorModel& model, const SurgeryContext& ctx) {
  DecodeResult result;
  std::vector<int> fired = fired_detectors(model, ctx);
  result.n_events = static_cast<int>(fired.size());
  if (fired.empty()) return result;

  int k = static_cast<int>(fired.size());
  std::vector<BfsTree> trees;
  trees.reserve(k);
  for (int f : fired) trees.push_back(bfs_from(model, f));

  std::vector<std::vector<int64_t>> pair_cost(k, std::vector<int64_t>(k, -1));
  std::vector<int64_t> boundary_cost(k);
  for (int i = 0; i < k; ++i) {
    boundary_cost[i] = trees[i].dist[model.boundary_node()];
    for (int j = 0; j < k; ++j) {
      if (j != i) pair_cost[i][j] = trees[i].dist[fired[j]];
    }
  }
  EventMatching match = match_events(pair_cost, boundary_cost);
  result.matching_cost = match.total_cost;
  for (int i = 0; i < k; ++i) {
    if (match.partner[i] == -1) {
      xor_path_payload(model, trees[i], model.boundary_node(), result.flipped);
    } else if (match.partner[i] > i) {
      xor_path_payload(model, trees[i], fired[match.partner[i]],
                       result.flipped);
    }
  }
  return result;
}

int corrected_bit(const SignedValue& v, const DepSet& flipped) {
  int bit = v.value;
  const DepSet& small = v.deps.size() <= flipped.size() ? v.deps : flipped;
  const DepSet& large = v.deps.size() <= flipped.size() ? flipped : v.deps;
  for (int r : small) {
    if (large.count(r)) bit ^= 1;
  }
  return bit;
}

}  // namespace lsurg
