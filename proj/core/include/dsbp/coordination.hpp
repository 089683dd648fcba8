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
 * @brief Prioritised decoupled planning: geometric paths for every vehicle,
 *        then velocity tuning in priority order against committed motions.
 */

#include "dsbp/dynamics.hpp"
#include "dsbp/geometry.hpp"
#include "dsbp/irrt.hpp"
#include "dsbp/timing.hpp"

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dsbp::coordination
{
    using dynamics::VehicleParams;
    using dynamics::VehicleState;
    using geometry::ObstacleMap;
    using geometry::Point2;
    using irrt::Pose;

    struct VehicleTask
    {
        std::string id;
        int priority{1}; ///< 1 is highest
        Point2 start;
        double start_heading{0.0}; ///< rad
        Point2 goal;
        VehicleParams params;

        friend bool operator== (const VehicleTask &, const VehicleTask &) = default;
    };

    struct PlannedMotion
    {
        std::string id;
        int priority{1};
        double footprint{0.0};
        irrt::GeometricPath path;
        timing::TimingFunction sigma;
        double arrival_time{0.0}; ///< s

        /// Ids of the motions this vehicle's timing was planned against.
        std::vector<std::string> obstacle_ids;

        std::size_t irrt_iterations{0};
        irrt::PlanTree tree{VehicleState{}};
        std::size_t vt_iterations{0};
        std::optional<timing::StObstacleGrid> st_grid; ///< empty for the leading vehicle
        timing::StTree st_tree;
        bool t_max_doubled{false};

        Pose pose_at (double t) const { return timing::phi_eval (path, sigma, t); }
        Point2 position_at (double t) const { return pose_at (t).position; }
    };

    enum class FailureStage
    {
        Path,   ///< no geometric path within the iteration budget
        Timing, ///< no collision-free timing even after enlarging t_max
    };

    struct VehicleFailure
    {
        std::string id;
        FailureStage stage{FailureStage::Path};
        std::string message;
        std::size_t irrt_iterations{0};
        std::size_t tree_size{0};
        double path_length{0.0}; ///< m; 0 when no path was found
        std::size_t vt_iterations{0};
    };

    struct DsbpOptions
    {
        double t_max_factor{3.0};  ///< timing budget as a multiple of the free-driving time
        std::size_t grid_t_cells{200};
        std::size_t grid_s_cells{200};
        bool parallel_paths{true};

        friend bool operator== (const DsbpOptions &, const DsbpOptions &) = default;
    };

    struct DsbpResult
    {
        std::vector<PlannedMotion> motions; ///< priority order, planned vehicles only
        std::vector<VehicleFailure> failures;

        bool success () const { return failures.empty (); }
    };

    /// Stable priority order; throws std::invalid_argument on duplicate ids or priorities.
    std::vector<VehicleTask> order_by_priority (std::span<const VehicleTask> tasks);

    /// Path search for every task in the given order; vehicle i uses seed mix_seed(cfg.seed, i).
    std::vector<irrt::PlanResult> plan_paths (std::span<const VehicleTask> ordered, const ObstacleMap &map,
                                              const irrt::IrrtConfig &cfg, bool parallel = true);

    /**
     * @brief Timing stage over already-planned paths (same order as @p ordered).
     *
     * The first vehicle with a path and no committed obstacles drives at v_x;
     * every later one is tuned against all committed motions.
     */
    DsbpResult time_paths (std::span<const VehicleTask> ordered, std::vector<irrt::PlanResult> paths,
                           const timing::VtConfig &vt_cfg, const DsbpOptions &opts = {});

    /**
     * @brief Plans all vehicles.
     *
     * Path seeds derive from irrt_cfg.seed and timing seeds from vt_cfg.seed,
     * each mixed with the vehicle's rank, so results do not depend on threading.
     * Vehicles whose path search fails stay parked at their start and are
     * treated as static obstacles by lower priorities.
     */
    DsbpResult dsbp_plan (std::span<const VehicleTask> tasks, const ObstacleMap &map, const irrt::IrrtConfig &irrt_cfg,
                          const timing::VtConfig &vt_cfg, const DsbpOptions &opts = {});

    struct Violation
    {
        double time{0.0};
        std::string first;
        std::string second; ///< empty for a static-obstacle violation
        double distance{0.0};
    };

    struct VerifyReport
    {
        std::vector<double> times;
        /// Pairwise centre distances, one series per pair (i < j) in motion order.
        std::vector<std::vector<double>> pair_distances;
        std::vector<std::pair<std::string, std::string>> pairs;
        double min_pair_distance{std::numeric_limits<double>::infinity ()};
        double min_pair_margin{std::numeric_limits<double>::infinity ()}; ///< distance minus footprint sum
        double min_static_clearance{std::numeric_limits<double>::infinity ()};
        std::optional<Violation> first_violation;

        bool passed () const { return !first_violation; }
    };

    /**
     * @brief Re-checks motions on a uniform time grid over [0, max arrival + hold].
     *
     * Pairs must stay strictly farther apart than their footprint sum and every
     * footprint must keep positive clearance from obstacles and bounds.
     */
    VerifyReport verify_plan (std::span<const PlannedMotion> motions, const ObstacleMap &map, double dt = 1e-3,
                              double hold = 1.0);

} // namespace dsbp::coordination
