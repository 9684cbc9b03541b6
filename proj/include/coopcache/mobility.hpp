#pragma once

#include "coopcache/rng.hpp"
#include "coopcache/types.hpp"

namespace coopcache {

struct MobilityParams {
  double world_width = 0.0;
  double world_height = 0.0;
  double min_speed = 0.0;
  double max_speed = 0.0;
  Tick pause_ticks = 0;
};

/// Random-waypoint state of one node.
struct WaypointState {
  Position current;
  Position target;
  double speed = 0.0;  // length per tick
  Tick pause_remaining = 0;

  friend bool operator==(const WaypointState&, const WaypointState&) = default;
};

/// Fresh waypoint state at a uniformly drawn position with a first target.
WaypointState initial_waypoint(const MobilityParams& params, RngStream& rng);

/// Advances one tick. A pausing node stays put and counts down; a node that
/// has reached its target draws a new target and speed; otherwise it moves
/// `speed` toward the target, clamping on arrival and starting a pause.
WaypointState mobility_step(const WaypointState& state, const MobilityParams& params,
                            RngStream& rng);

/// Running displacement used for the mobility term M_v of the election.
struct SpeedHistory {
  Position prev_position;
  double cumulative_displacement = 0.0;
  Tick samples = 0;

  friend bool operator==(const SpeedHistory&, const SpeedHistory&) = default;
};

SpeedHistory update_speed_history(const SpeedHistory& h, Position new_pos);

/// Average per-tick displacement; 0 before the first sample.
double mobility_metric(const SpeedHistory& h);

}  // namespace coopcache
