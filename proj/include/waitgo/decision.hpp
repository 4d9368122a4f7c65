#pragma once

#include <cstdint>
#include <optional>

#include "waitgo/rng.hpp"

namespace waitgo {

// Choice made at a waypoint once sensing finishes: hover until on-board
// processing ends (wait) or depart immediately and risk being called back
// (go).
enum class Decision : int { wait = 0, go = 1 };

// Everything the choice depends on at one waypoint.
struct DecisionInputs {
  // Estimated probability that processing finds an event here. Empty when no
  // knowledge is available yet (e.g. nothing learned); the learning policy
  // then falls back to waiting.
  std::optional<double> p_hat;
  double penalty_s = 0.0;  // turn-back cost if departing proves wrong
  double proc_s = 0.0;     // processing time saved if departing proves right

  void validate() const;  // throws std::invalid_argument on bad ranges
};

// Expected mission-time saving of a choice relative to always hovering:
//   wait saves the penalty when an event occurs:      p_hat * penalty_s
//   go saves the processing time when none occurs:    (1 - p_hat) * proc_s
// Requires p_hat to be present.
double expected_saving(Decision choice, const DecisionInputs& in);

enum class PolicyKind { learn, wait, go, random, oracle };

// A decision policy. `learn` and `oracle` pick the choice with the larger
// expected saving (ties favour waiting); they differ only in where p_hat
// comes from. `wait`/`go` are fixed, `random` flips a fair coin from its own
// seed so its draws never perturb any other stochastic stream.
class Policy {
 public:
  static Policy learn() { return Policy(PolicyKind::learn, 0); }
  static Policy always_wait() { return Policy(PolicyKind::wait, 0); }
  static Policy always_go() { return Policy(PolicyKind::go, 0); }
  static Policy random(std::uint64_t seed) { return Policy(PolicyKind::random, seed); }
  static Policy oracle() { return Policy(PolicyKind::oracle, 0); }
  static Policy make(PolicyKind kind, std::uint64_t seed = 0) { return Policy(kind, seed); }

  PolicyKind kind() const { return kind_; }

  // The oracle requires p_hat (std::logic_error otherwise); the learning
  // policy treats a missing p_hat as "no knowledge" and waits.
  Decision decide(const DecisionInputs& in);

 private:
  Policy(PolicyKind kind, std::uint64_t seed) : kind_(kind), coin_(seed) {}

  PolicyKind kind_;
  rng::Stream coin_;
};

}  // namespace waitgo
