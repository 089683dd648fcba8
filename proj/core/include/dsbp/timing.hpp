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
 * @brief Velocity tuning in normalised path-time space.
 *
 * Time t in [0, 1] is a fraction of a per-vehicle budget t_max (seconds);
 * s in [0, 1] is normalised arc length along a fixed geometric path. A
 * sampling tree searches the free part of this square for a monotone,
 * slope-bounded route from (0, 0) to the line s = 1.
 */

#include "dsbp/geometry.hpp"
#include "dsbp/irrt.hpp"
#include "dsbp/random.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace dsbp::timing
{
    using geometry::Point2;
    using irrt::GeometricPath;
    using irrt::Pose;

    struct PathTimePoint
    {
        double t{0.0};
        double s{0.0};

        friend bool operator== (const PathTimePoint &, const PathTimePoint &) = default;
    };

    /// A disc moving in the plane; @p position takes seconds.
    struct MovingObstacle
    {
        std::function<Point2 (double)> position;
        double footprint{0.0};
    };

    /// Occupancy of the (t, s) unit square. Cell (i, j) spans t in [i, i+1)/t_cells, s in [j, j+1)/s_cells.
    class StObstacleGrid
    {
      public:
        StObstacleGrid () = default;
        /// Throws std::invalid_argument unless both dimensions are >= 2 and t_max > 0.
        StObstacleGrid (std::size_t t_cells, std::size_t s_cells, double t_max);

        std::size_t t_cells () const { return t_cells_; }
        std::size_t s_cells () const { return s_cells_; }
        double t_max () const { return t_max_; }

        bool blocked (std::size_t i, std::size_t j) const { return cells_.at (i * s_cells_ + j) != 0; }
        void set_blocked (std::size_t i, std::size_t j, bool b) { cells_.at (i * s_cells_ + j) = b ? 1 : 0; }

        /// Occupancy of the cell containing @p p; points on the far edges map to the last cell.
        bool blocked_at (const PathTimePoint &p) const;

        /// Samples the segment at a quarter-cell spacing.
        bool segment_blocked (const PathTimePoint &a, const PathTimePoint &b) const;

        double t_center (std::size_t i) const { return (static_cast<double> (i) + 0.5) / static_cast<double> (t_cells_); }
        double s_center (std::size_t j) const { return (static_cast<double> (j) + 0.5) / static_cast<double> (s_cells_); }
        std::size_t blocked_count () const;

        friend bool operator== (const StObstacleGrid &, const StObstacleGrid &) = default;

      private:
        std::size_t t_cells_{0};
        std::size_t s_cells_{0};
        double t_max_{0.0};
        std::vector<std::uint8_t> cells_;
    };

    /**
     * @brief Rasterises the path-time obstacle region.
     *
     * A cell is blocked when, at its centre, the path point lies within the
     * footprint sum of some obstacle; the result is then dilated by one cell.
     */
    StObstacleGrid build_st_grid (const GeometricPath &path, std::span<const MovingObstacle> obstacles,
                                  double own_footprint, double t_max, std::size_t t_cells = 200,
                                  std::size_t s_cells = 200);

    struct VtConfig
    {
        std::size_t k{10};
        double v_min{0.05}; ///< normalised s per normalised t
        double v_max{2.0};
        double dt_step{0.02}; ///< normalised t
        std::size_t max_iterations{5000};
        std::uint64_t seed{0};

        friend bool operator== (const VtConfig &, const VtConfig &) = default;

        void validate () const;
    };

    class TimingFunction
    {
      public:
        TimingFunction () = default;
        /// Throws std::invalid_argument if the knots are not a valid monotone timing.
        TimingFunction (std::vector<PathTimePoint> knots, double t_max);

        const std::vector<PathTimePoint> &knots () const { return knots_; }
        double t_max () const { return t_max_; }
        /// Seconds until s first reaches 1.
        double arrival_time () const { return knots_.back ().t * t_max_; }

        /// Largest and smallest segment slope in normalised units.
        double max_slope () const;
        double min_slope () const;

        friend bool operator== (const TimingFunction &, const TimingFunction &) = default;

      private:
        std::vector<PathTimePoint> knots_;
        double t_max_{0.0};
    };

    /// sigma(t) = t / t_max for a vehicle that drives the whole path at v_x.
    TimingFunction constant_speed_timing (double path_length, double v_x);

    struct StNode
    {
        PathTimePoint point;
        std::optional<std::size_t> parent;
        double g_cost{0.0};
    };

    struct StTree
    {
        std::vector<StNode> nodes;
    };

    /// floor(K/2) points uniform over the unit square, the rest uniform on s = 1.
    std::vector<PathTimePoint> sample_st (const VtConfig &cfg, Rng &rng);

    /// Time-limited, slope-clamped advance from @p near towards @p rand; lands exactly on s = 1 at most.
    PathTimePoint st_steer (const PathTimePoint &near, const PathTimePoint &rand, const VtConfig &cfg);

    /// Closest node in (t, s); ties go to the smaller index.
    std::size_t st_nearest (const StTree &tree, const PathTimePoint &p);

    /// Polyline length to @p endpoint plus distance to @p goal, or +inf if the new segment is blocked.
    double vt_cost (const StTree &tree, std::size_t candidate, const PathTimePoint &endpoint,
                    const PathTimePoint &goal, const StObstacleGrid &grid);

    enum class VtStatus
    {
        Success,
        BudgetExhausted,
        StartBlocked,
    };

    struct VtResult
    {
        VtStatus status{VtStatus::BudgetExhausted};
        std::optional<TimingFunction> sigma;
        StTree tree;
        std::size_t iterations{0};

        bool success () const { return status == VtStatus::Success; }
    };

    /**
     * @brief Samples K points per iteration and inserts the cheapest valid
     *        extension. An extension that reaches s = 1 is valid only if the
     *        vehicle can also hold there until t = 1.
     */
    VtResult vt_plan (const StObstacleGrid &grid, const VtConfig &cfg);

    /// Normalised path position at @p t seconds; 1 after arrival. Throws for t < 0.
    double sigma_eval (const TimingFunction &sigma, double t);

    Pose phi_eval (const GeometricPath &path, const TimingFunction &sigma, double t);

    /// Header: t_s,s
    void write_knots_csv (std::ostream &os, const TimingFunction &sigma);

    /// Plain PGM (P2), one column per t cell, s increasing upwards; blocked = 0, free = 255.
    void write_grid_pgm (std::ostream &os, const StObstacleGrid &grid);

} // namespace dsbp::timing
