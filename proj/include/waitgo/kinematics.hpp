#pragma once

namespace waitgo {

// Flight envelope of the vehicle plus fixed mission overheads.
//
// Speed along a leg follows a trapezoidal profile: constant acceleration up
// to cruise speed, cruise, then a mirrored deceleration so the vehicle
// arrives at rest. Legs shorter than cruise^2/accel never reach cruise and
// fly a triangular profile instead.
struct KinematicParams {
  double cruise_speed = 4.0;         // m/s
  double accel = 2.0;                // m/s^2, also used for braking
  double takeoff_time = 8.0;         // s, added once per mission
  double land_time = 10.0;           // s, added once per mission
  double turnaround_overhead = 2.0;  // s, direction reversal when turning back

  // Throws std::invalid_argument when any parameter is non-positive
  // (turnaround_overhead may be zero).
  void validate() const;
};

// Position and speed along a leg, measured from the leg's start.
struct FlightState {
  double position_m = 0.0;
  double speed_mps = 0.0;
};

// Time to fly a straight leg of `distance_m`, starting and ending at rest.
// Throws std::domain_error for negative distances.
double flight_time(double distance_m, const KinematicParams& kin = {});

// State reached `elapsed_s` seconds into a leg of `distance_m`.
// Requires 0 <= elapsed_s <= flight_time(distance_m); throws
// std::domain_error otherwise.
FlightState position_after(double elapsed_s, double distance_m,
                           const KinematicParams& kin = {});

// Extra mission time paid when the vehicle departs a waypoint and is called
// back `proc_time_s` seconds later: brake to a stop, reverse, and fly back to
// the departed waypoint. Requires proc_time_s < flight_time(distance_m) so
// the callback arrives mid-leg; throws std::domain_error otherwise.
double penalty_time(double distance_m, double proc_time_s,
                    const KinematicParams& kin = {});

}  // namespace waitgo
