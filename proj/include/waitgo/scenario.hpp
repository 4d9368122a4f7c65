#pragma once

#include <string>

#include "waitgo/kinematics.hpp"
#include "waitgo/sim.hpp"
#include "waitgo/world.hpp"

namespace waitgo {

// Built-in survey missions over a 10 x 5 waypoint grid (50 m spacing,
// boustrophedon sweep, home just outside the first corner). The grid splits
// into two half-size regions on opposite schedules: a belt at probability 0.1
// all day that rises to 0.6 during the daily active window, and a block at
// 0.6 all day that drops to 0.1 during that window. The three scenarios
// differ only in how the mission overlaps the window:
//   out:    entirely outside the window
//   out_in: starts outside, crosses into it halfway through
//   in_out: starts inside, crosses out of it halfway through
enum class ScenarioName { out, out_in, in_out };

enum class WorldKind { stable, changing };

struct Scenario {
  ScenarioName name = ScenarioName::out;
  WorldKind kind = WorldKind::stable;
  MissionPlan plan;
  WorldModel world;
};

std::string to_string(ScenarioName name);
std::string to_string(WorldKind kind);

// Constructs a built-in scenario. Timing and kinematics are needed because
// the out_in/in_out start hours are solved so that half of the expected
// optimally-flown mission lies on each side of the window boundary. The
// changing variant flips every probability p to 0.7 - p from day 21 onward.
Scenario builtin_scenario(ScenarioName name, WorldKind kind,
                          const TimingParams& timing = {},
                          const KinematicParams& kin = {});

// Day index from which the changing world's probabilities are flipped.
inline constexpr int kChangeDay = 21;

}  // namespace waitgo
