#include "waitgo/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace waitgo {

void KinematicParams::validate() const {
  if (!(cruise_speed > 0.0)) throw std::invalid_argument("cruise_speed must be > 0");
  if (!(accel > 0.0)) throw std::invalid_argument("accel must be > 0");
  if (!(takeoff_time > 0.0)) throw std::invalid_argument("takeoff_time must be > 0");
  if (!(land_time > 0.0)) throw std::invalid_argument("land_time must be > 0");
  if (turnaround_overhead < 0.0)
    throw std::invalid_argument("turnaround_overhead must be >= 0");
}

double flight_time(double distance_m, const KinematicParams& kin) {
  if (distance_m < 0.0)
    throw std::domain_error("flight_time: negative distance " + std::to_string(distance_m));
  const double v = kin.cruise_speed;
  const double a = kin.accel;
  const double ramp_distance = v * v / a;  // accelerate + decelerate span
  if (distance_m >= ramp_distance) {
    // Trapezoidal: the two ramps together cost one extra v/a beyond cruising
    // the whole leg, i.e. d/v + v/a.
    return distance_m / v + v / a;
  }
  // Triangular: peak speed sqrt(a*d), reached halfway.
  return 2.0 * std::sqrt(distance_m / a);
}

FlightState position_after(double elapsed_s, double distance_m,
                           const KinematicParams& kin) {
  if (distance_m < 0.0)
    throw std::domain_error("position_after: negative distance");
  const double total = flight_time(distance_m, kin);
  if (elapsed_s < 0.0 || elapsed_s > total)
    throw std::domain_error("position_after: elapsed time " + std::to_string(elapsed_s) +
                            " outside [0, " + std::to_string(total) + "]");

  const double v = kin.cruise_speed;
  const double a = kin.accel;
  const double ramp_distance = v * v / a;

  double t_accel, v_peak;
  if (distance_m >= ramp_distance) {
    t_accel = v / a;
    v_peak = v;
  } else {
    t_accel = std::sqrt(distance_m / a);
    v_peak = a * t_accel;
  }
  const double t_decel_start = total - t_accel;

  FlightState s;
  if (elapsed_s <= t_accel) {
    s.speed_mps = a * elapsed_s;
    s.position_m = 0.5 * a * elapsed_s * elapsed_s;
  } else if (elapsed_s <= t_decel_start) {
    s.speed_mps = v_peak;
    s.position_m = 0.5 * v_peak * t_accel + v_peak * (elapsed_s - t_accel);
  } else {
    const double remaining = total - elapsed_s;
    s.speed_mps = a * remaining;
    s.position_m = distance_m - 0.5 * a * remaining * remaining;
  }
  // Clip floating-point dust at the terminal boundary.
  s.position_m = std::min(s.position_m, distance_m);
  s.speed_mps = std::max(s.speed_mps, 0.0);
  return s;
}

double penalty_time(double distance_m, double proc_time_s,
                    const KinematicParams& kin) {
  if (proc_time_s < 0.0)
    throw std::domain_error("penalty_time: negative processing time");
  if (!(proc_time_s < flight_time(distance_m, kin)))
    throw std::domain_error(
        "penalty_time: processing time must end before the leg completes "
        "(proc " + std::to_string(proc_time_s) + " s on a " +
        std::to_string(distance_m) + " m leg)");

  const FlightState at_callback = position_after(proc_time_s, distance_m, kin);
  const double brake_time = at_callback.speed_mps / kin.accel;
  const double brake_distance =
      at_callback.speed_mps * at_callback.speed_mps / (2.0 * kin.accel);
  const double stop_position = at_callback.position_m + brake_distance;
  return brake_time + kin.turnaround_overhead + flight_time(stop_position, kin);
}

}  // namespace waitgo
