#include "leadel/channel.hpp"

namespace leadel {

void resolve_slot_into(ModelKind model, std::span<const SlotAction> actions,
                       SlotOutcome& out) {
  int transmitters = 0;
  int32_t payload = 0;
  for (const SlotAction& a : actions) {
    if (model == ModelKind::Weak && a.type == ActionType::TransmitListen) {
      throw ModelViolation("TransmitListen is not allowed in the weak model");
    }
    if (a.transmits()) {
      ++transmitters;
      payload = a.payload;
    }
  }
  out.status.single = (transmitters == 1);
  out.status.payload = out.status.single ? payload : 0;

  out.observations.resize(actions.size());
  for (size_t i = 0; i < actions.size(); ++i) {
    const SlotAction& a = actions[i];
    bool listens = a.type == ActionType::Listen ||
                   (model == ModelKind::Strong &&
                    a.type == ActionType::TransmitListen);
    if (!listens) {
      out.observations[i] = {ObsType::Nothing, 0};
    } else if (out.status.single) {
      out.observations[i] = {ObsType::Heard, out.status.payload};
    } else {
      out.observations[i] = {ObsType::Noise, 0};
    }
  }
}

SlotOutcome resolve_slot(ModelKind model, std::span<const SlotAction> actions) {
  SlotOutcome out;
  resolve_slot_into(model, actions, out);
  return out;
}

}  // namespace leadel
