#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "leadel/channel.hpp"

using namespace leadel;

TEST_CASE("single transmitter yields SINGLE and listeners hear the payload") {
  std::vector<SlotAction> acts{SlotAction::transmit(7), SlotAction::listen(),
                               SlotAction::sleep()};
  auto out = resolve_slot(ModelKind::Weak, acts);
  CHECK(out.status.single);
  CHECK(out.status.payload == 7);
  CHECK(out.observations[0].type == ObsType::Nothing);  // weak: no feedback
  CHECK(out.observations[1].type == ObsType::Heard);
  CHECK(out.observations[1].payload == 7);
  CHECK(out.observations[2].type == ObsType::Nothing);
}

TEST_CASE("collision and silence are both NULL") {
  std::vector<SlotAction> collide{SlotAction::transmit(1),
                                  SlotAction::transmit(2),
                                  SlotAction::listen()};
  auto out = resolve_slot(ModelKind::Weak, collide);
  CHECK_FALSE(out.status.single);
  CHECK(out.observations[2].type == ObsType::Noise);

  std::vector<SlotAction> silent{SlotAction::sleep(), SlotAction::listen()};
  out = resolve_slot(ModelKind::Weak, silent);
  CHECK_FALSE(out.status.single);
  CHECK(out.observations[1].type == ObsType::Noise);
}

TEST_CASE("strong model: sole transmit-listener hears itself") {
  std::vector<SlotAction> acts{SlotAction::transmit_listen(3),
                               SlotAction::sleep()};
  auto out = resolve_slot(ModelKind::Strong, acts);
  CHECK(out.status.single);
  CHECK(out.observations[0].type == ObsType::Heard);
  CHECK(out.observations[0].payload == 3);
}

TEST_CASE("strong model: two transmit-listeners hear noise") {
  std::vector<SlotAction> acts{SlotAction::transmit_listen(1),
                               SlotAction::transmit_listen(2)};
  auto out = resolve_slot(ModelKind::Strong, acts);
  CHECK_FALSE(out.status.single);
  CHECK(out.observations[0].type == ObsType::Noise);
  CHECK(out.observations[1].type == ObsType::Noise);
}

TEST_CASE("weak model rejects TransmitListen") {
  std::vector<SlotAction> acts{SlotAction::transmit_listen(0)};
  CHECK_THROWS_AS(resolve_slot(ModelKind::Weak, acts), ModelViolation);
}

TEST_CASE("resolve_slot_into matches resolve_slot and reuses the buffer") {
  std::vector<SlotAction> acts{SlotAction::transmit(5), SlotAction::listen(),
                               SlotAction::listen(), SlotAction::sleep()};
  SlotOutcome reused;
  reused.observations.resize(17);  // stale size from a previous slot
  resolve_slot_into(ModelKind::Strong, acts, reused);
  auto fresh = resolve_slot(ModelKind::Strong, acts);
  REQUIRE(reused.observations.size() == acts.size());
  CHECK(reused.status.single == fresh.status.single);
  CHECK(reused.status.payload == fresh.status.payload);
  for (size_t i = 0; i < acts.size(); ++i) {
    CHECK(reused.observations[i].type == fresh.observations[i].type);
    CHECK(reused.observations[i].payload == fresh.observations[i].payload);
  }
}
