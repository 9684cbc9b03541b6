#include "coopcache/mobility.hpp"

#include <algorithm>

namespace coopcache {

namespace {

Position draw_point(const MobilityParams& p, RngStream& rng) {
  const double x = rng.uniform(0.0, p.world_width);
  const double y = rng.uniform(0.0, p.world_height);
  return {x, y};
}

Position clamp_to_world(Position pos, const MobilityParams& p) {
  return {std::clamp(pos.x, 0.0, p.world_width), std::clamp(pos.y, 0.0, p.world_height)};
}

}  // namespace

WaypointState initial_waypoint(const MobilityParams& params, RngStream& rng) {
  WaypointState s;
  s.current = draw_point(params, rng);
  s.target = draw_point(params, rng);
  s.speed = rng.uniform(params.min_speed, params.max_speed);
  return s;
}

WaypointState mobility_step(const WaypointState& state, const MobilityParams& params,
                            RngStream& rng) {
  WaypointState next = state;
  if (next.pause_remaining > 0) {
    --next.pause_remaining;
    return next;
  }
  if (next.current == next.target) {
    next.target = draw_point(params, rng);
    next.speed = rng.uniform(params.min_speed, params.max_speed);
  }
  const double remaining = distance(next.current, next.target);
  if (remaining <= next.speed) {
    next.current = next.target;
    next.pause_remaining = params.pause_ticks;
  } else {
    const double f = next.speed / remaining;
    next.current = clamp_to_world({next.current.x + f * (next.target.x - next.current.x),
                                   next.current.y + f * (next.target.y - next.current.y)},
                                  params);
  }
  return next;
}

SpeedHistory update_speed_history(const SpeedHistory& h, Position new_pos) {
  SpeedHistory next = h;
  next.cumulative_displacement += distance(h.prev_position, new_pos);
  next.samples += 1;
  next.prev_position = new_pos;
  return next;
}

double mobility_metric(const SpeedHistory& h) {
  if (h.samples == 0) return 0.0;
  return h.cumulative_displacement / static_cast<double>(h.samples);
}

}  // namespace coopcache
