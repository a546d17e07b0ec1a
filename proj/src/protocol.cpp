#include "leadel/protocol.hpp"

#include <cmath>
#include <stdexcept>

namespace leadel {

namespace {
// Guard against spurious round-up when alpha^j lands a hair above an integer
// because of floating-point error.
constexpr double kCeilGuard = 0x1p-40;

double wake_probability(uint32_t k) { return std::ldexp(1.0, -int(k)); }
}  // namespace

void ElectionParams::validate() const {
  if (n < 2) throw std::domain_error("station count must be >= 2");
  if (!(alpha > 1.0)) throw std::domain_error("alpha must be > 1");
  if (k0 < 1) throw std::domain_error("k0 must be >= 1");
}

uint64_t inner_len(uint32_t j, double alpha) {
  if (j < 1) throw std::domain_error("round index must be >= 1");
  if (!(alpha > 1.0)) throw std::domain_error("alpha must be > 1");
  double len = std::ceil(std::pow(alpha, double(j)) - kCeilGuard);
  if (len < 1.0) len = 1.0;
  if (len >= 0x1p63) throw std::overflow_error("inner length overflows");
  return uint64_t(len);
}

void reset_round(StationState& state) {
  state.candidate = false;
  state.transmitted_slots.clear();
  state.witness_record.reset();
  state.pending_leader = false;
}

SlotAction station_act(ProtocolKind kind, const StationState& state,
                       Phase phase, const SlotDraws& draws) {
  if (kind == ProtocolKind::Alg1Strong) {
    if (phase.kind == Phase::Inner) {
      if (draws.wake < wake_probability(phase.index))
        return SlotAction::transmit_listen(int32_t(phase.index));
      return SlotAction::sleep();
    }
    // Deterministic slot: everyone wakes, candidates also broadcast.
    return state.candidate ? SlotAction::transmit_listen(0)
                           : SlotAction::listen();
  }

  // Alg2, weak model.
  if (phase.kind == Phase::Inner) {
    if (draws.wake >= wake_probability(phase.index)) return SlotAction::sleep();
    return draws.role < 0.5 ? SlotAction::transmit(int32_t(phase.index))
                            : SlotAction::listen();
  }
  if (phase.index == 1) {
    // Forward slot: witnesses re-broadcast the recorded <k>.
    if (state.witness_record) return SlotAction::transmit(*state.witness_record);
    return SlotAction::listen();
  }
  // Confirm slot: the initiator whose <k> came back acknowledges.
  if (state.pending_leader) return SlotAction::transmit(kConfirmToken);
  return SlotAction::listen();
}

void station_update(ProtocolKind kind, StationState& state, Phase phase,
                    const SlotAction& own_action, const Observation& obs) {
  if (kind == ProtocolKind::Alg1Strong) {
    if (phase.kind == Phase::Inner) {
      // A transmit-listener that hears its own message was the unique
      // transmitter of this slot.
      if (own_action.type == ActionType::TransmitListen &&
          obs.type == ObsType::Heard && obs.payload == own_action.payload) {
        state.candidate = true;
      }
      return;
    }
    if (obs.type == ObsType::Heard) {
      state.leader_known = true;
      if (state.candidate && own_action.transmits()) state.is_leader = true;
    }
    return;
  }

  // Alg2, weak model.
  if (phase.kind == Phase::Inner) {
    if (own_action.type == ActionType::Transmit) {
      state.transmitted_slots.push_back(own_action.payload);
    } else if (own_action.type == ActionType::Listen &&
               obs.type == ObsType::Heard) {
      // Most recent record wins when a station witnesses several slots.
      state.witness_record = obs.payload;
    }
    return;
  }
  if (phase.index == 1) {
    // A station that hears its own <k> forwarded back was the unique
    // initiator of that slot.
    if (own_action.type == ActionType::Listen && obs.type == ObsType::Heard &&
        state.transmitted_at(obs.payload)) {
      state.pending_leader = true;
    }
    return;
  }
  // Confirm slot. A pending initiator is the only possible transmitter, so
  // its acknowledgement is deterministically SINGLE; it cannot hear itself
  // in the weak model but commits on that guarantee.
  if (own_action.type == ActionType::Transmit && state.pending_leader) {
    state.is_leader = true;
    state.leader_known = true;
  } else if (obs.type == ObsType::Heard && obs.payload == kConfirmToken) {
    state.leader_known = true;
  }
}

RoundResult round_outcome(ProtocolKind, std::span<const StationState> states) {
  RoundResult result;
  for (size_t i = 0; i < states.size(); ++i) {
    if (states[i].is_leader) {
      if (result.elected)
        throw std::logic_error("two stations claim leadership");
      result.elected = uint32_t(i);
    }
  }
  return result;
}

}  // namespace leadel
