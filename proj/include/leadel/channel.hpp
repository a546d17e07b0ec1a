#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace leadel {

// Single-channel no-collision-detection radio models. Under the weak model
// an awake station either transmits or listens, never both; the strong model
// allows the combined transmit-and-listen action.
enum class ModelKind : uint8_t { Strong, Weak };

enum class ActionType : uint8_t { Sleep, Listen, Transmit, TransmitListen };

struct SlotAction {
  ActionType type = ActionType::Sleep;
  int32_t payload = 0;  // message content, e.g. the inner slot index <k>

  static SlotAction sleep() { return {ActionType::Sleep, 0}; }
  static SlotAction listen() { return {ActionType::Listen, 0}; }
  static SlotAction transmit(int32_t m) { return {ActionType::Transmit, m}; }
  static SlotAction transmit_listen(int32_t m) {
    return {ActionType::TransmitListen, m};
  }
  bool transmits() const {
    return type == ActionType::Transmit || type == ActionType::TransmitListen;
  }
  bool awake() const { return type != ActionType::Sleep; }
};

// Channel status for one slot: SINGLE carries the unique transmitter's
// payload; NULL covers both silence and collision (indistinguishable here).
struct ChannelStatus {
  bool single = false;
  int32_t payload = 0;
};

enum class ObsType : uint8_t { Nothing, Heard, Noise };

struct Observation {
  ObsType type = ObsType::Nothing;
  int32_t payload = 0;
};

struct SlotOutcome {
  ChannelStatus status;
  std::vector<Observation> observations;  // one per station
};

class ModelViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Arbitrates one synchronous slot. Status is SINGLE iff exactly one station
// transmits; listeners then hear that payload, otherwise noise. Sleeping
// stations observe nothing, and so do weak-model transmitters (no feedback).
// Pure function of its inputs.
SlotOutcome resolve_slot(ModelKind model, std::span<const SlotAction> actions);

// Same, writing into a caller-owned outcome (buffer reuse in hot loops).
void resolve_slot_into(ModelKind model, std::span<const SlotAction> actions,
                       SlotOutcome& out);

}  // namespace leadel
