// Copyright 2026 The DSBP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dsbp/irrt.hpp"

#include "format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace dsbp::irrt
{
    // ---------------------------------------------------------------- PlanTree

    PlanTree::PlanTree (const VehicleState &root) { nodes_.push_back (TreeNode{0, root, std::nullopt, 0.0, {}}); }

    std::size_t PlanTree::add (std::size_t parent, Trajectory edge)
    {
        if (parent >= nodes_.size ())
            throw std::out_of_range ("PlanTree::add: unknown parent");
        if (edge.states.empty ())
            throw std::invalid_argument ("PlanTree::add: empty edge");

        TreeNode n;
        n.id = nodes_.size ();
        n.state = edge.back ();
        n.parent = parent;
        n.g_cost = nodes_[parent].g_cost + edge.arc_length ();
        n.edge = std::move (edge);
        nodes_.push_back (std::move (n));
        return nodes_.back ().id;
    }

    std::vector<std::size_t> PlanTree::lineage (std::size_t id) const
    {
        std::vector<std::size_t> out;
        for (std::optional<std::size_t> cur = id; cur; cur = nodes_.at (*cur).parent)
            out.push_back (*cur);
        std::reverse (out.begin (), out.end ());
        return out;
    }

    // -------------------------------------------------------------- IrrtConfig

    void IrrtConfig::validate () const
    {
        if (k < 1)
            throw std::invalid_argument ("irrt: k must be >= 1");
        if (!(rho_prime >= 0.0 && rho_prime <= 1.0))
            throw std::invalid_argument ("irrt: rho_prime must be in [0, 1]");
        if (!(terminal_half_width > 0.0 && std::isfinite (terminal_half_width)))
            throw std::invalid_argument ("irrt: terminal_half_width_m must be > 0");
        if (!(horizon > 0.0 && std::isfinite (horizon)))
            throw std::invalid_argument ("irrt: horizon_s must be > 0");
        if (!(step > 0.0 && step <= horizon))
            throw std::invalid_argument ("irrt: step_s must be in (0, horizon_s]");
        if (max_iterations < 1)
            throw std::invalid_argument ("irrt: max_iterations must be > 0");
    }

    // ----------------------------------------------------------- GeometricPath

    GeometricPath GeometricPath::from_states (std::span<const VehicleState> states)
    {
        GeometricPath p;
        for (const auto &s : states)
        {
            if (p.waypoints_.empty ())
            {
                p.waypoints_.push_back (s);
                p.cumulative_.push_back (0.0);
                continue;
            }
            const double d = geometry::distance (p.waypoints_.back ().position (), s.position ());
            if (d <= 0.0)
                continue;
            p.waypoints_.push_back (s);
            p.cumulative_.push_back (p.cumulative_.back () + d);
        }
        if (p.waypoints_.size () < 2)
            throw std::invalid_argument ("GeometricPath: needs at least two distinct positions");
        return p;
    }

    VehicleState GeometricPath::state_at (double s) const
    {
        if (waypoints_.empty ())
            throw std::logic_error ("GeometricPath: empty path");
        const double target = std::clamp (s, 0.0, 1.0) * total_length ();
        auto it = std::upper_bound (cumulative_.begin (), cumulative_.end (), target);
        if (it == cumulative_.end ())
            return waypoints_.back ();
        const auto hi = static_cast<std::size_t> (it - cumulative_.begin ());
        const std::size_t lo = hi - 1;
        const double w = (target - cumulative_[lo]) / (cumulative_[hi] - cumulative_[lo]);

        const VehicleState &a = waypoints_[lo];
        const VehicleState &b = waypoints_[hi];
        return {a.x + w * (b.x - a.x), a.y + w * (b.y - a.y),
                dynamics::wrap_angle (a.theta + w * dynamics::wrap_angle (b.theta - a.theta)),
                a.v_y + w * (b.v_y - a.v_y), a.r + w * (b.r - a.r)};
    }

    Pose GeometricPath::pose_at (double s) const
    {
        const VehicleState st = state_at (s);
        return {st.position (), st.theta};
    }

    // ---------------------------------------------------------------- sampling

    Point2 sample_point (const ObstacleMap &map, Rng &rng)
    {
        const double x = rng.uniform (map.bounds.min.x, map.bounds.max.x);
        const double y = rng.uniform (map.bounds.min.y, map.bounds.max.y);
        return {x, y};
    }

    Point2 biased_sample (const Point2 &goal, const IrrtConfig &cfg, const ObstacleMap &map, Rng &rng)
    {
        const double rho = rng.uniform ();
        if (take_terminal_branch (rho, cfg.rho_prime))
        {
            const double u = rng.uniform ();
            const double v = rng.uniform ();
            return terminal_box_point (goal, cfg.terminal_half_width, u, v);
        }
        return sample_point (map, rng);
    }

    std::size_t nearest (const PlanTree &tree, const Point2 &p)
    {
        std::size_t best = 0;
        double best_d2 = std::numeric_limits<double>::infinity ();
        for (const auto &n : tree.nodes ())
        {
            const double dx = n.state.x - p.x;
            const double dy = n.state.y - p.y;
            const double d2 = dx * dx + dy * dy;
            if (d2 < best_d2)
            {
                best_d2 = d2;
                best = n.id;
            }
        }
        return best;
    }

    std::vector<std::size_t> k_near (const PlanTree &tree, std::size_t nearest_id, std::size_t k)
    {
        std::vector<std::size_t> out;
        std::optional<std::size_t> cur = nearest_id;
        while (cur && out.size () < k)
        {
            out.push_back (*cur);
            cur = tree.node (*cur).parent;
        }
        return out;
    }

    std::vector<Extension> steer_batch (const PlanTree &tree, std::span<const std::size_t> candidates,
                                        const Point2 &target, const VehicleParams &params, const IrrtConfig &cfg,
                                        std::size_t *dropped)
    {
        std::vector<Extension> out;
        out.reserve (candidates.size ());
        for (std::size_t id : candidates)
        {
            const VehicleState &from = tree.node (id).state;
            const double delta = dynamics::steer_toward (from, target, params);
            Trajectory rollout = integrators::integrate (
                cfg.integrator, from, [delta] (double) { return delta; }, params, cfg.horizon, cfg.step);
            if (rollout.diverged)
            {
                if (dropped)
                    ++*dropped;
                continue;
            }
            Extension e;
            e.candidate = id;
            e.steer = delta;
            e.endpoint = rollout.back ();
            e.rollout = std::move (rollout);
            out.push_back (std::move (e));
        }
        return out;
    }

    double irrt_cost (const PlanTree &tree, std::size_t candidate, const VehicleState &endpoint,
                      const Trajectory &rollout, const Point2 &goal, const ObstacleMap &map, double footprint)
    {
        const auto pts = rollout.positions ();
        if (geometry::swept_path_collides (pts, footprint, map))
            return std::numeric_limits<double>::infinity ();
        const double g = tree.node (candidate).g_cost + rollout.arc_length ();
        const double h = geometry::distance (endpoint.position (), goal);
        return g + h;
    }

    // ---------------------------------------------------------------- planners

    namespace
    {
        void check_inputs (const VehicleState &start, const Point2 &goal, const ObstacleMap &map,
                           const VehicleParams &params, const IrrtConfig &cfg)
        {
            params.validate ();
            cfg.validate ();
            map.validate ();
            if (!start.finite () || !goal.finite ())
                throw std::invalid_argument ("planner: start and goal must be finite");
            const Point2 s[] = {start.position ()};
            if (geometry::swept_path_collides (s, params.footprint_radius, map))
                throw std::invalid_argument ("planner: start footprint is in collision");
            const auto &b = map.bounds;
            if (goal.x < b.min.x || goal.x > b.max.x || goal.y < b.min.y || goal.y > b.max.y)
                throw std::invalid_argument ("planner: goal lies outside the map bounds");
        }

        void finish (PlanResult &res, std::size_t leaf)
        {
            std::vector<VehicleState> states;
            for (std::size_t id : res.tree.lineage (leaf))
            {
                const TreeNode &n = res.tree.node (id);
                if (!n.parent)
                    states.push_back (n.state);
                else
                    states.insert (states.end (), n.edge.states.begin () + 1, n.edge.states.end ());
            }
            res.status = PlanStatus::Success;
            res.goal_node = leaf;
            res.path = GeometricPath::from_states (states);
        }

        /// Rollout from a start already inside the terminal zone, cut at its closest approach to the goal.
        std::optional<Trajectory> approach_edge (const VehicleState &start, const Point2 &goal, const ObstacleMap &map,
                                                 const VehicleParams &params, const IrrtConfig &cfg)
        {
            const double delta = dynamics::steer_toward (start, goal, params);
            Trajectory t = integrators::integrate (
                cfg.integrator, start, [delta] (double) { return delta; }, params, cfg.horizon, cfg.step);
            if (t.diverged || t.size () < 2)
                return std::nullopt;
            std::size_t best = 1;
            for (std::size_t i = 2; i < t.size (); ++i)
                if (geometry::distance (t.states[i].position (), goal) <
                    geometry::distance (t.states[best].position (), goal))
                    best = i;
            t.times.resize (best + 1);
            t.states.resize (best + 1);
            t.steer_angles.resize (std::min (t.steer_angles.size (), best + 1));
            if (geometry::swept_path_collides (t.positions (), params.footprint_radius, map))
                return std::nullopt;
            return t;
        }

        template <class Select>
        PlanResult plan_loop (const VehicleState &start, const Point2 &goal, const ObstacleMap &map,
                              const VehicleParams &params, const IrrtConfig &cfg, Select &&select)
        {
            check_inputs (start, goal, map, params, cfg);

            PlanResult res{PlanStatus::BudgetExhausted, std::nullopt, PlanTree (start), 0, std::nullopt, 0};
            Rng rng (cfg.seed);

            if (geometry::distance (start.position (), goal) <= cfg.terminal_half_width)
            {
                res.iterations = 1;
                if (auto edge = approach_edge (start, goal, map, params, cfg))
                {
                    finish (res, res.tree.add (0, std::move (*edge)));
                    return res;
                }
            }

            for (std::size_t it = 1; it <= cfg.max_iterations; ++it)
            {
                res.iterations = it;
                const Point2 target = biased_sample (goal, cfg, map, rng);
                const std::size_t near = nearest (res.tree, target);

                std::optional<Extension> chosen = select (res, near, target);
                if (!chosen)
                    continue;

                const Point2 end = chosen->endpoint.position ();
                const std::size_t id = res.tree.add (chosen->candidate, std::move (chosen->rollout));
                if (geometry::distance (end, goal) <= cfg.terminal_half_width)
                {
                    finish (res, id);
                    return res;
                }
            }
            return res;
        }
    } // namespace

    PlanResult irrt_plan (const VehicleState &start, const Point2 &goal, const ObstacleMap &map,
                          const VehicleParams &params, const IrrtConfig &cfg)
    {
        return plan_loop (start, goal, map, params, cfg,
                          [&] (PlanResult &res, std::size_t near, const Point2 &target) -> std::optional<Extension> {
                              const auto cands = k_near (res.tree, near, cfg.k);
                              auto exts = steer_batch (res.tree, cands, target, params, cfg, &res.dropped_rollouts);

                              std::optional<std::size_t> best;
                              double best_cost = std::numeric_limits<double>::infinity ();
                              for (std::size_t i = 0; i < exts.size (); ++i)
                              {
                                  const double c = irrt_cost (res.tree, exts[i].candidate, exts[i].endpoint,
                                                              exts[i].rollout, goal, map, params.footprint_radius);
                                  if (c < best_cost)
                                  {
                                      best_cost = c;
                                      best = i;
                                  }
                              }
                              if (!best)
                                  return std::nullopt;
                              return std::move (exts[*best]);
                          });
    }

    PlanResult rrt_plan (const VehicleState &start, const Point2 &goal, const ObstacleMap &map,
                         const VehicleParams &params, const IrrtConfig &cfg)
    {
        return plan_loop (start, goal, map, params, cfg,
                          [&] (PlanResult &res, std::size_t near, const Point2 &target) -> std::optional<Extension> {
                              const std::size_t cand[] = {near};
                              auto exts = steer_batch (res.tree, cand, target, params, cfg, &res.dropped_rollouts);
                              if (exts.empty ())
                                  return std::nullopt;
                              if (geometry::swept_path_collides (exts.front ().rollout.positions (),
                                                                 params.footprint_radius, map))
                                  return std::nullopt;
                              return std::move (exts.front ());
                          });
    }

    void write_tree_csv (std::ostream &os, const PlanTree &tree)
    {
        os << "node_id,parent_id,x,y,theta,g_cost\n";
        for (const auto &n : tree.nodes ())
            os << n.id << ',' << (n.parent ? static_cast<long long> (*n.parent) : -1LL) << ',' << io::num (n.state.x)
               << ',' << io::num (n.state.y) << ',' << io::num (n.state.theta) << ',' << io::num (n.g_cost) << '\n';
    }

} // namespace dsbp::irrt
