#include "lsurg/code_cycle.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace lsurg {

void dep_xor(DepSet& a, const DepSet& b) {
  for (int x : b) {
    auto it = a.find(x);
    if (it == a.end()) {
      a.insert(x);
    } else {
      a.erase(it);
    }
  }
}

std::optional<SignedValue> resolve_pool(const PauliString& target,
                                        const std::vector<SignedOp>& pool,
                                        std::vector<int>* used_indices) {
  std::vector<PauliString> gens;
  gens.reserve(pool.size());
  for (const SignedOp& g : pool) {
    PauliString p = g.op;
    p.set_phase(0);
    if (g.value.value) p.flip_sign();
    gens.push_back(std::move(p));
  }
  auto res = resolve_sign(target, gens);
  if (!res.has_value()) return std::nullopt;
  SignedValue out;
  out.value = res->sign;
  for (int i : res->used) dep_xor(out.deps, pool[i].value.deps);
  if (used_indices) *used_indices = res->used;
  return out;
}

namespace {

PauliString basis_op(int n, int qubit, char basis) {
  if (basis != 'X' && basis != 'Z') {
    throw std::invalid_argument("basis must be 'X' or 'Z'");
  }
  return PauliString::single(n, qubit, basis == 'X' ? 'X' : 'Z');
}

void apply_single(Tableau& tab, int qubit, int code) {
  switch (code) {
    case 1: tab.apply_x(qubit); break;
    case 2: tab.apply_y(qubit); break;
    case 3: tab.apply_z(qubit); break;
    default: break;
  }
}

}  // namespace

SurgeryContext::SurgeryContext(Encoding encoding, std::vector<Coord> hull)
    : layout_(Layout::build(encoding, std::move(hull))),
      tableau_(layout_.n_total()) {}

int SurgeryContext::new_record(RecordKind kind, int value) {
  records_.push_back(Record{kind, value});
  return static_cast<int>(records_.size()) - 1;
}

void SurgeryContext::init_data(Coord site, char basis, Rng& rng) {
  int q = layout_.data_qubit(site);
  PauliString op = basis_op(tableau_.n(), q, basis);
  int m = tableau_.measure(op, rng);
  if (m) {
    // Flip into the +1 eigenstate with the anticommuting partner.
    if (basis == 'Z') {
      tableau_.apply_x(q);
    } else {
      tableau_.apply_z(q);
    }
  }
  inits_.push_back(InitEvent{site, q, basis, rounds_});
  transition_pool_.push_back(SignedOp{op, SignedValue{}, -1});
}

SignedValue SurgeryContext::measure_out(Coord site, char basis, Rng& rng) {
  int q = layout_.data_qubit(site);
  PauliString op = basis_op(tableau_.n(), q, basis);
  int m = tableau_.measure(op, rng);
  int rec = new_record(RecordKind::kMeasureOut, m);
  measure_outs_.push_back(MeasureOutEvent{site, q, basis, rec, rounds_});
  SignedValue v{m, {rec}};
  transition_pool_.push_back(SignedOp{op, v, rec});
  return v;
}

void SurgeryContext::add_activation_generator(const PauliString& op,
                                              SignedValue value) {
  transition_pool_.push_back(SignedOp{op, std::move(value), -1});
}

void SurgeryContext::apply_transversal_h(const std::vector<Coord>& sites) {
  std::vector<int> qubits;
  qubits.reserve(sites.size());
  for (Coord s : sites) qubits.push_back(layout_.data_qubit(s));
  for (int q : qubits) tableau_.apply_h(q);
  for (SlotInstance& slot : slots_) {
    for (int q : qubits) slot.op.conj_h(q);
    if (slot.op.phase() != 0) {
      throw std::logic_error(
          "apply_transversal_h: check instance with Y support on a "
          "conjugated site");
    }
  }
  for (SignedOp& g : transition_pool_) {
    for (int q : qubits) g.op.conj_h(q);
    if (g.op.phase() == 2) {
      // H Y H^dagger = -Y: fold the sign into the tracked value.
      g.op.set_phase(0);
      g.value.value ^= 1;
    }
  }
}

void SurgeryContext::apply_swap_layer(
    const std::vector<std::pair<Coord, Coord>>& pairs) {
  for (const auto& [a, b] : pairs) {
    int qa = layout_.has_data(a) ? layout_.data_qubit(a) : layout_.ancilla_qubit(a);
    int qb = layout_.has_data(b) ? layout_.data_qubit(b) : layout_.ancilla_qubit(b);
    tableau_.apply_swap(qa, qb);
    for (SlotInstance& slot : slots_) slot.op.conj_swap(qa, qb);
    for (SignedOp& g : transition_pool_) g.op.conj_swap(qa, qb);
  }
}

void SurgeryContext::activate(std::vector<LatticeSpec> specs) {
  // Pool: surviving information from the checks being retired, plus the
  // transition events recorded since the previous activation.  Retired
  // checks that anticommute with a transition operation carry no forward
  // sign information (their value was randomized) and are dropped.
  std::vector<SignedOp> pool;
  for (int id : active_slots_) {
    SlotInstance& s = slots_[id];
    s.died = rounds_;
    if (s.born < 0) continue;  // never measured: no information
    bool killed = false;
    for (const SignedOp& t : transition_pool_) {
      if (!s.op.commutes(t.op)) {
        killed = true;
        break;
      }
    }
    if (killed) continue;
    pool.push_back(SignedOp{s.op, s.expected, s.last_record()});
  }
  for (const SignedOp& t : transition_pool_) pool.push_back(t);

  active_slots_.clear();
  ActivationSegment seg;
  seg.first_round = rounds_;
  seg.specs = specs;
  for (const LatticeSpec& spec : specs) {
    for (const Coord& c : spec.data_sites) seg.data_coords.push_back(c);
  }
  std::sort(seg.data_coords.begin(), seg.data_coords.end());
  seg.data_coords.erase(
      std::unique(seg.data_coords.begin(), seg.data_coords.end()),
      seg.data_coords.end());
  for (const Coord& c : seg.data_coords) {
    seg.data_qubits.push_back(layout_.data_qubit(c));
  }

  for (const LatticeSpec& spec : specs) {
    for (const Plaquette& plq : spec.plaquettes) {
      SlotInstance slot;
      slot.id = static_cast<int>(slots_.size());
      slot.type = plq.type;
      slot.key = plq.key;
      slot.data = plq.data;
      for (const Coord& c : plq.data) {
        slot.data_qubits.push_back(layout_.data_qubit(c));
      }
      slot.op = layout_.check_operator(plq);
      slot.ancilla = layout_.ancilla_qubit(plq.key);
      std::vector<int> used;
      auto rel = resolve_pool(slot.op, pool, &used);
      if (rel.has_value()) {
        slot.expected = *rel;
        for (int i : used) {
          if (pool[i].relation_record >= 0) {
            slot.relation_records.push_back(pool[i].relation_record);
          } else {
            slot.relation_constant ^= pool[i].value.value;
          }
        }
      } else {
        slot.fresh = true;
        slot.reference_record = new_record(RecordKind::kReference, 0);
        slot.expected = SignedValue{0, {slot.reference_record}};
      }
      active_slots_.push_back(slot.id);
      seg.slot_ids.push_back(slot.id);
      slots_.push_back(std::move(slot));
    }
  }
  segments_.push_back(std::move(seg));
  transition_pool_.clear();
}

void SurgeryContext::record_outcome(SlotInstance& slot, int m) {
  int rec = new_record(RecordKind::kSlotOutcome, m);
  slot.outcome_records.push_back(rec);
  if (slot.born < 0) {
    slot.born = rounds_;
    if (slot.fresh) slot.expected.value = m;
  }
}

void SurgeryContext::measure_slot_direct(SlotInstance& slot,
                                         const NoiseModel& noise, Rng& rng) {
  int m = tableau_.measure(slot.op, rng);
  if (noise.p_meas > 0 && rng.bernoulli(noise.p_meas)) m ^= 1;
  record_outcome(slot, m);
}

void SurgeryContext::measure_slot_circuit(SlotInstance& slot,
                                          const NoiseModel& noise, Rng& rng) {
  int a = slot.ancilla;
  if (tableau_.measure_z(a, rng)) tableau_.apply_x(a);
  bool x_type = slot.type == CheckType::kX;
  if (x_type) tableau_.apply_h(a);
  for (int q : slot.data_qubits) {
    if (x_type) {
      tableau_.apply_cnot(a, q);
    } else {
      tableau_.apply_cnot(q, a);
    }
    if (noise.p_gate > 0 && rng.bernoulli(noise.p_gate)) {
      int k = 1 + static_cast<int>(rng.below(15));
      apply_single(tableau_, a, k & 3);
      apply_single(tableau_, q, (k >> 2) & 3);
    }
  }
  if (x_type) tableau_.apply_h(a);
  int m = tableau_.measure_z(a, rng);
  if (noise.p_meas > 0 && rng.bernoulli(noise.p_meas)) m ^= 1;
  record_outcome(slot, m);
}

int SurgeryContext::run_round(const NoiseModel& noise, MeasureMode mode,
                              Rng& rng) {
  if (segments_.empty()) {
    throw std::logic_error("run_round before any activation");
  }
  if (noise.p_data > 0) {
    for (int q : segments_.back().data_qubits) {
      if (rng.bernoulli(noise.p_data)) {
        apply_single(tableau_, q, 1 + static_cast<int>(rng.below(3)));
      }
    }
  }
  for (int id : active_slots_) {
    if (mode == MeasureMode::kDirect) {
      measure_slot_direct(slots_[id], noise, rng);
    } else {
      measure_slot_circuit(slots_[id], noise, rng);
    }
  }
  return rounds_++;
}

void SurgeryContext::run_rounds(int k, const NoiseModel& noise,
                                MeasureMode mode, Rng& rng) {
  for (int i = 0; i < k; ++i) run_round(noise, mode, rng);
}

std::vector<SignedOp> SurgeryContext::expected_pool() const {
  std::vector<SignedOp> pool;
  for (int id : active_slots_) {
    const SlotInstance& s = slots_[id];
    if (s.born < 0) continue;
    pool.push_back(SignedOp{s.op, s.expected, s.outcome_records.back()});
  }
  return pool;
}

std::optional<SignedValue> SurgeryContext::resolve_chain(
    const PauliString& target) const {
  return resolve_pool(target, expected_pool());
}

void SurgeryContext::apply_pauli(const PauliString& p) {
  assert(p.n() == tableau_.n());
  for (int q : p.support()) {
    switch (p.letter(q)) {
      case 'X': tableau_.apply_x(q); break;
      case 'Y': tableau_.apply_y(q); break;
      case 'Z': tableau_.apply_z(q); break;
      default: break;
    }
  }
}

void SurgeryContext::final_readout(const std::vector<Coord>& sites, char basis,
                                   Rng& rng) {
  for (const Coord& site : sites) {
    if (readout_index_.count(site)) {
      throw std::logic_error("site already read out");
    }
    int q = layout_.data_qubit(site);
    int m = tableau_.measure(basis_op(tableau_.n(), q, basis), rng);
    int rec = new_record(RecordKind::kFinalQubit, m);
    readout_index_[site] = static_cast<int>(finals_.size());
    finals_.push_back(FinalQubitReadout{site, q, basis, rec});
  }
}

bool SurgeryContext::has_readout(Coord site) const {
  return readout_index_.count(site) > 0;
}

SignedValue SurgeryContext::readout_bit(Coord site) const {
  auto it = readout_index_.find(site);
  if (it == readout_index_.end()) {
    throw std::invalid_argument("no readout recorded for site");
  }
  const FinalQubitReadout& f = finals_[it->second];
  return SignedValue{records_[f.record].value, {f.record}};
}

SignedValue SurgeryContext::chain_parity(const std::vector<Coord>& chain) const {
  SignedValue v;
  for (const Coord& site : chain) v ^= readout_bit(site);
  return v;
}

void SurgeryContext::flip_record(int id) {
  records_[id].value ^= 1;
  // A flipped first outcome of a fresh check redefines its reference.
  for (SlotInstance& s : slots_) {
    if (s.fresh && !s.outcome_records.empty() && s.outcome_records[0] == id) {
      s.expected.value ^= 1;
    }
  }
  // A measure-out flipped before the next activation must feed the flipped
  // value into the birth relations that will consume it.
  for (SignedOp& t : transition_pool_) {
    if (t.relation_record == id) t.value.value ^= 1;
  }
}

}  // namespace lsurg
