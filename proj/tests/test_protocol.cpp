#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "leadel/protocol.hpp"

using namespace leadel;

namespace {

// Drives one slot across all stations with scripted draws.
void play_slot(ProtocolKind kind, std::vector<StationState>& states,
               Phase phase, const std::vector<SlotDraws>& draws) {
  std::vector<SlotAction> actions(states.size());
  for (size_t i = 0; i < states.size(); ++i)
    actions[i] = station_act(kind, states[i], phase, draws[i]);
  auto outcome = resolve_slot(model_of(kind), actions);
  for (size_t i = 0; i < states.size(); ++i)
    station_update(kind, states[i], phase, actions[i],
                   outcome.observations[i]);
}

const SlotDraws kAsleep{0.999, 0.0};
const SlotDraws kBroadcast{0.0, 0.0};   // awake; Alg2 role: transmit
const SlotDraws kMonitor{0.0, 0.9};     // awake; Alg2 role: listen

}  // namespace

TEST_CASE("inner length tracks ceil(alpha^j)") {
  CHECK(inner_len(1, 1.0 + 0x1p-45) == 1);  // guard eats the epsilon
  CHECK(inner_len(1, 2.0) == 2);
  CHECK(inner_len(1, 2.9) == 3);
  CHECK(inner_len(10, 2.0) == 1024);
  CHECK(inner_len(10, 1.0767) == 3);  // 1.0767^10 = 2.0937...
  CHECK_THROWS_AS(inner_len(0, 2.0), std::domain_error);
  CHECK_THROWS_AS(inner_len(3, 1.0), std::domain_error);
  CHECK_THROWS_AS(inner_len(4000, 1.5), std::overflow_error);
}

TEST_CASE("parameter validation") {
  CHECK_NOTHROW((ElectionParams{2, 1.0767, 1}.validate()));
  CHECK_THROWS_AS((ElectionParams{1, 1.1, 1}.validate()), std::domain_error);
  CHECK_THROWS_AS((ElectionParams{5, 1.0, 1}.validate()), std::domain_error);
  CHECK_THROWS_AS((ElectionParams{5, 0.9, 1}.validate()), std::domain_error);
  CHECK_THROWS_AS((ElectionParams{5, 1.1, 0}.validate()), std::domain_error);
}

TEST_CASE("strong protocol: lone waker becomes candidate, then leader") {
  std::vector<StationState> st(3);
  play_slot(ProtocolKind::Alg1Strong, st, Phase::inner(1),
            {kBroadcast, kAsleep, kAsleep});
  CHECK(st[0].candidate);
  CHECK_FALSE(st[1].candidate);

  play_slot(ProtocolKind::Alg1Strong, st, Phase::det(1),
            {kAsleep, kAsleep, kAsleep});  // det phase ignores draws
  CHECK(st[0].is_leader);
  for (const auto& s : st) CHECK(s.leader_known);
  auto res = round_outcome(ProtocolKind::Alg1Strong, st);
  REQUIRE(res.elected.has_value());
  CHECK(*res.elected == 0);
}

TEST_CASE("strong protocol: two candidates collide, nothing is decided") {
  std::vector<StationState> st(2);
  play_slot(ProtocolKind::Alg1Strong, st, Phase::inner(1),
            {kBroadcast, kAsleep});
  play_slot(ProtocolKind::Alg1Strong, st, Phase::inner(2),
            {kAsleep, kBroadcast});
  CHECK(st[0].candidate);
  CHECK(st[1].candidate);

  play_slot(ProtocolKind::Alg1Strong, st, Phase::det(1), {kAsleep, kAsleep});
  CHECK_FALSE(st[0].is_leader);
  CHECK_FALSE(st[1].is_leader);
  CHECK_FALSE(st[0].leader_known);
  CHECK_FALSE(round_outcome(ProtocolKind::Alg1Strong, st).elected);
}

TEST_CASE("strong protocol: simultaneous wakers are not candidates") {
  std::vector<StationState> st(2);
  play_slot(ProtocolKind::Alg1Strong, st, Phase::inner(1),
            {kBroadcast, kBroadcast});
  CHECK_FALSE(st[0].candidate);
  CHECK_FALSE(st[1].candidate);
}

TEST_CASE("weak protocol: initiator-witness pair elects across three slots") {
  std::vector<StationState> st(3);
  play_slot(ProtocolKind::Alg2Weak, st, Phase::inner(1),
            {kBroadcast, kMonitor, kAsleep});
  CHECK(st[0].transmitted_at(1));
  REQUIRE(st[1].witness_record.has_value());
  CHECK(*st[1].witness_record == 1);

  play_slot(ProtocolKind::Alg2Weak, st, Phase::det(1),
            {kAsleep, kAsleep, kAsleep});
  CHECK(st[0].pending_leader);
  CHECK_FALSE(st[2].pending_leader);

  play_slot(ProtocolKind::Alg2Weak, st, Phase::det(2),
            {kAsleep, kAsleep, kAsleep});
  CHECK(st[0].is_leader);
  for (const auto& s : st) CHECK(s.leader_known);
}

TEST_CASE("weak protocol: collision leaves no witness") {
  std::vector<StationState> st(3);
  play_slot(ProtocolKind::Alg2Weak, st, Phase::inner(1),
            {kBroadcast, kBroadcast, kMonitor});
  CHECK_FALSE(st[2].witness_record.has_value());
}

TEST_CASE("weak protocol: broadcaster without witness stays unelected") {
  std::vector<StationState> st(2);
  play_slot(ProtocolKind::Alg2Weak, st, Phase::inner(1),
            {kBroadcast, kAsleep});
  play_slot(ProtocolKind::Alg2Weak, st, Phase::det(1), {kAsleep, kAsleep});
  play_slot(ProtocolKind::Alg2Weak, st, Phase::det(2), {kAsleep, kAsleep});
  CHECK_FALSE(st[0].is_leader);
  CHECK_FALSE(st[0].leader_known);
}

TEST_CASE("weak protocol: the last heard record wins") {
  std::vector<StationState> st(3);
  play_slot(ProtocolKind::Alg2Weak, st, Phase::inner(1),
            {kBroadcast, kMonitor, kAsleep});
  play_slot(ProtocolKind::Alg2Weak, st, Phase::inner(2),
            {kAsleep, kMonitor, kBroadcast});
  REQUIRE(st[1].witness_record.has_value());
  CHECK(*st[1].witness_record == 2);
}

TEST_CASE("reset_round clears round-local fields only") {
  StationState s;
  s.candidate = true;
  s.transmitted_slots = {1, 3};
  s.witness_record = 2;
  s.pending_leader = true;
  s.leader_known = true;
  s.is_leader = true;
  reset_round(s);
  CHECK_FALSE(s.candidate);
  CHECK(s.transmitted_slots.empty());
  CHECK_FALSE(s.witness_record.has_value());
  CHECK_FALSE(s.pending_leader);
  CHECK(s.leader_known);
  CHECK(s.is_leader);
}

TEST_CASE("round_outcome rejects dual leaders") {
  std::vector<StationState> st(2);
  st[0].is_leader = true;
  st[1].is_leader = true;
  CHECK_THROWS_AS(round_outcome(ProtocolKind::Alg1Strong, st),
                  std::logic_error);
}
