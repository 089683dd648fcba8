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

#pragma once

/**
 * @file
 * @brief Kinodynamic tree planners over the bicycle model.
 *
 * The improved planner extends from the nearest node *and* its K-1 nearest
 * ancestors, rolls each out towards the sample, and keeps the collision-free
 * extension minimising travelled distance plus straight-line distance to go.
 * The baseline planner is the same loop restricted to the nearest node.
 */

#include "dsbp/dynamics.hpp"
#include "dsbp/geometry.hpp"
#include "dsbp/integrators.hpp"
#include "dsbp/random.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace dsbp::irrt
{
    using dynamics::VehicleParams;
    using dynamics::VehicleState;
    using geometry::ObstacleMap;
    using geometry::Point2;
    using integrators::IntegratorKind;
    using integrators::Trajectory;

    struct TreeNode
    {
        std::size_t id{0};
        VehicleState state;
        std::optional<std::size_t> parent;
        double g_cost{0.0}; ///< travelled distance from the root, m
        Trajectory edge;    ///< rollout from the parent; empty at the root
    };

    /// Rooted tree; node ids are insertion indices, the root is id 0.
    class PlanTree
    {
      public:
        explicit PlanTree (const VehicleState &root);

        /// Appends the endpoint of @p edge as a child of @p parent; returns its id.
        std::size_t add (std::size_t parent, Trajectory edge);

        const TreeNode &node (std::size_t id) const { return nodes_.at (id); }
        const std::vector<TreeNode> &nodes () const { return nodes_; }
        std::size_t size () const { return nodes_.size (); }

        /// Node ids from the root to @p id inclusive.
        std::vector<std::size_t> lineage (std::size_t id) const;

      private:
        std::vector<TreeNode> nodes_;
    };

    struct IrrtConfig
    {
        std::size_t k{4};
        double rho_prime{0.5};
        double terminal_half_width{10.0}; ///< m; also the goal-reached radius
        double horizon{0.5};              ///< s, rollout length per extension
        double step{0.01};                ///< s, integrator step
        IntegratorKind integrator{IntegratorKind::RK4};
        std::size_t max_iterations{20000};
        std::uint64_t seed{0};

        friend bool operator== (const IrrtConfig &, const IrrtConfig &) = default;

        void validate () const;
    };

    struct Pose
    {
        Point2 position;
        double heading{0.0};
    };

    /**
     * @brief A geometric path parameterised by normalised arc length s in [0, 1].
     *
     * Waypoints keep the full rollout states, so headings (and lateral speed /
     * yaw rate for reporting) come from the dynamics, not from finite differences.
     */
    class GeometricPath
    {
      public:
        GeometricPath () = default;

        /// Drops repeated positions; throws std::invalid_argument if fewer than 2 distinct remain.
        static GeometricPath from_states (std::span<const VehicleState> states);

        const std::vector<VehicleState> &waypoints () const { return waypoints_; }
        const std::vector<double> &cumulative_arclength () const { return cumulative_; }
        double total_length () const { return cumulative_.empty () ? 0.0 : cumulative_.back (); }

        /// Interpolated state at normalised position @p s (clamped to [0, 1]).
        VehicleState state_at (double s) const;
        Pose pose_at (double s) const;
        Point2 position_at (double s) const { return pose_at (s).position; }

        friend bool operator== (const GeometricPath &, const GeometricPath &) = default;

      private:
        std::vector<VehicleState> waypoints_;
        std::vector<double> cumulative_;
    };

    enum class PlanStatus
    {
        Success,
        BudgetExhausted,
    };

    struct PlanResult
    {
        PlanStatus status{PlanStatus::BudgetExhausted};
        std::optional<GeometricPath> path;
        PlanTree tree;
        std::size_t iterations{0};
        std::optional<std::size_t> goal_node;
        std::size_t dropped_rollouts{0}; ///< rollouts discarded for integrator divergence

        bool success () const { return status == PlanStatus::Success; }
    };

    /// Uniform over the map bounds.
    Point2 sample_point (const ObstacleMap &map, Rng &rng);

    /// The terminal-box branch is taken when rho >= rho_prime.
    inline bool take_terminal_branch (double rho, double rho_prime) { return rho >= rho_prime; }

    /// Maps per-axis unit draws (u, v) onto the box [goal - a, goal + a]^2.
    inline Point2 terminal_box_point (const Point2 &goal, double a, double u, double v)
    {
        return {goal.x - a + 2.0 * a * u, goal.y - a + 2.0 * a * v};
    }

    /// Goal-biased draw: terminal box with probability 1 - rho_prime, else uniform.
    Point2 biased_sample (const Point2 &goal, const IrrtConfig &cfg, const ObstacleMap &map, Rng &rng);

    /// Closest node to @p p; ties go to the smaller id.
    std::size_t nearest (const PlanTree &tree, const Point2 &p);

    /// The nearest node followed by up to K-1 ancestors, stopping at the root.
    std::vector<std::size_t> k_near (const PlanTree &tree, std::size_t nearest_id, std::size_t k);

    struct Extension
    {
        std::size_t candidate{0};
        double steer{0.0};
        Trajectory rollout;
        VehicleState endpoint;
    };

    /**
     * @brief Rolls out each candidate towards @p target with its steer angle held
     *        for cfg.horizon. Diverged rollouts are dropped; @p dropped counts them.
     */
    std::vector<Extension> steer_batch (const PlanTree &tree, std::span<const std::size_t> candidates,
                                        const Point2 &target, const VehicleParams &params, const IrrtConfig &cfg,
                                        std::size_t *dropped = nullptr);

    /// g + H for an extension, or +inf if its swept footprint collides.
    double irrt_cost (const PlanTree &tree, std::size_t candidate, const VehicleState &endpoint,
                      const Trajectory &rollout, const Point2 &goal, const ObstacleMap &map, double footprint);

    /**
     * @brief Improved RRT. Throws std::invalid_argument for invalid inputs
     *        (colliding start, goal outside the bounds, bad parameters);
     *        an exhausted iteration budget is a normal BudgetExhausted result.
     */
    PlanResult irrt_plan (const VehicleState &start, const Point2 &goal, const ObstacleMap &map,
                          const VehicleParams &params, const IrrtConfig &cfg);

    /// Baseline RRT: same sampling and rollout, extending only the nearest node.
    PlanResult rrt_plan (const VehicleState &start, const Point2 &goal, const ObstacleMap &map,
                         const VehicleParams &params, const IrrtConfig &cfg);

    /// Header: node_id,parent_id,x,y,theta,g_cost (root parent_id is -1).
    void write_tree_csv (std::ostream &os, const PlanTree &tree);

} // namespace dsbp::irrt
