#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "leadel/channel.hpp"

namespace leadel {

enum class ProtocolKind : uint8_t { Alg1Strong, Alg2Weak };

inline ModelKind model_of(ProtocolKind kind) {
  return kind == ProtocolKind::Alg1Strong ? ModelKind::Strong
                                          : ModelKind::Weak;
}

// Payload of the confirmation message in Alg2's second deterministic slot.
// Inner slot indices are >= 1, so this value cannot clash with a <k>.
inline constexpr int32_t kConfirmToken = -1;

struct ElectionParams {
  uint64_t n = 2;       // station count, >= 2
  double alpha = 1.1;   // round-length growth factor, > 1
  uint32_t k0 = 1;      // first wake exponent; k0 > 1 trades time for energy

  void validate() const;
};

// Length of the probabilistic phase of round j: ceil(alpha^j), with a small
// downward guard so that representable-integer-adjacent powers do not round
// up differently across platforms.
uint64_t inner_len(uint32_t j, double alpha);

// Per-station protocol memory. Candidate/witness fields are valid for the
// current round only and are cleared by reset_round.
struct StationState {
  bool candidate = false;                    // Alg1: unique in some inner slot
  std::vector<int32_t> transmitted_slots;    // Alg2: ks transmitted this round
  std::optional<int32_t> witness_record;     // Alg2: last <k> heard on SINGLE
  bool pending_leader = false;               // Alg2: own forward came back
  bool leader_known = false;
  bool is_leader = false;

  bool transmitted_at(int32_t k) const {
    for (int32_t t : transmitted_slots)
      if (t == k) return true;
    return false;
  }
};

// Clears the per-round fields, keeping leader_known / is_leader.
void reset_round(StationState& state);

// Where we are inside a round: inner slot with wake exponent k, or the
// deterministic phase (slot 1 for Alg1; slots 1..2 for Alg2).
struct Phase {
  enum Kind : uint8_t { Inner, Det } kind = Inner;
  uint32_t index = 1;  // k for Inner, deterministic slot number otherwise

  static Phase inner(uint32_t k) { return {Inner, k}; }
  static Phase det(uint32_t slot) { return {Det, slot}; }
};

// Uniform variates for one (station, slot). Alg1 consumes only `wake`;
// Alg2 additionally consumes `role` to pick broadcast vs listen.
struct SlotDraws {
  double wake = 0.0;
  double role = 0.0;
};

// The per-slot decision of one station. Total over valid states; never
// reads any station identity.
SlotAction station_act(ProtocolKind kind, const StationState& state,
                       Phase phase, const SlotDraws& draws);

// State transition after the channel resolved the slot.
void station_update(ProtocolKind kind, StationState& state, Phase phase,
                    const SlotAction& own_action, const Observation& obs);

struct RoundResult {
  std::optional<uint32_t> elected;  // station index, bookkeeping only
};

// Inspects the states after the deterministic phase. Throws std::logic_error
// if two stations claim leadership (impossible by protocol construction).
RoundResult round_outcome(ProtocolKind kind,
                          std::span<const StationState> states);

inline uint32_t deterministic_slots(ProtocolKind kind) {
  return kind == ProtocolKind::Alg1Strong ? 1u : 2u;
}

}  // namespace leadel
