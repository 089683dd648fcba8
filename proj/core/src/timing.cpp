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

#include "dsbp/timing.hpp"

#include "format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace dsbp::timing
{
    // ---------------------------------------------------------------- grid

    StObstacleGrid::StObstacleGrid (std::size_t t_cells, std::size_t s_cells, double t_max)
        : t_cells_ (t_cells), s_cells_ (s_cells), t_max_ (t_max)
    {
        if (t_cells < 2 || s_cells < 2)
            throw std::invalid_argument ("st grid: both dimensions must be >= 2");
        if (!(t_max > 0.0 && std::isfinite (t_max)))
            throw std::invalid_argument ("st grid: t_max must be > 0");
        cells_.assign (t_cells * s_cells, 0);
    }

    bool StObstacleGrid::blocked_at (const PathTimePoint &p) const
    {
        auto index = [] (double v, std::size_t n) {
            const double c = std::floor (std::clamp (v, 0.0, 1.0) * static_cast<double> (n));
            return std::min (static_cast<std::size_t> (c), n - 1);
        };
        return blocked (index (p.t, t_cells_), index (p.s, s_cells_));
    }

    bool StObstacleGrid::segment_blocked (const PathTimePoint &a, const PathTimePoint &b) const
    {
        const double span = std::max (std::abs (b.t - a.t) * static_cast<double> (t_cells_),
                                      std::abs (b.s - a.s) * static_cast<double> (s_cells_));
        const auto n = static_cast<std::size_t> (std::ceil (4.0 * span)) + 1;
        for (std::size_t k = 0; k <= n; ++k)
        {
            const double w = static_cast<double> (k) / static_cast<double> (n);
            if (blocked_at ({a.t + w * (b.t - a.t), a.s + w * (b.s - a.s)}))
                return true;
        }
        return false;
    }

    std::size_t StObstacleGrid::blocked_count () const
    {
        return static_cast<std::size_t> (std::count (cells_.begin (), cells_.end (), std::uint8_t{1}));
    }

    StObstacleGrid build_st_grid (const GeometricPath &path, std::span<const MovingObstacle> obstacles,
                                  double own_footprint, double t_max, std::size_t t_cells, std::size_t s_cells)
    {
        StObstacleGrid grid (t_cells, s_cells, t_max);
        if (obstacles.empty ())
            return grid;

        std::vector<Point2> along (s_cells);
        for (std::size_t j = 0; j < s_cells; ++j)
            along[j] = path.position_at (grid.s_center (j));

        StObstacleGrid raw = grid;
        std::vector<Point2> at (obstacles.size ());
        for (std::size_t i = 0; i < t_cells; ++i)
        {
            const double t = grid.t_center (i) * t_max;
            for (std::size_t o = 0; o < obstacles.size (); ++o)
                at[o] = obstacles[o].position (t);
            for (std::size_t j = 0; j < s_cells; ++j)
                for (std::size_t o = 0; o < obstacles.size (); ++o)
                    if (geometry::distance (along[j], at[o]) <= own_footprint + obstacles[o].footprint)
                    {
                        raw.set_blocked (i, j, true);
                        break;
                    }
        }

        for (std::size_t i = 0; i < t_cells; ++i)
            for (std::size_t j = 0; j < s_cells; ++j)
            {
                if (!raw.blocked (i, j))
                    continue;
                for (std::size_t di = (i > 0 ? i - 1 : 0); di <= std::min (i + 1, t_cells - 1); ++di)
                    for (std::size_t dj = (j > 0 ? j - 1 : 0); dj <= std::min (j + 1, s_cells - 1); ++dj)
                        grid.set_blocked (di, dj, true);
            }
        return grid;
    }

    // -------------------------------------------------------------- config

    void VtConfig::validate () const
    {
        if (k < 2)
            throw std::invalid_argument ("vt: k must be >= 2");
        if (!(v_min >= 0.0 && v_min <= v_max && std::isfinite (v_max)))
            throw std::invalid_argument ("vt: requires 0 <= v_min <= v_max");
        if (!(dt_step > 0.0 && dt_step <= 1.0))
            throw std::invalid_argument ("vt: dt_step must be in (0, 1]");
        if (max_iterations < 1)
            throw std::invalid_argument ("vt: max_iterations must be > 0");
    }

    // ------------------------------------------------------ timing function

    TimingFunction::TimingFunction (std::vector<PathTimePoint> knots, double t_max)
        : knots_ (std::move (knots)), t_max_ (t_max)
    {
        if (!(t_max > 0.0 && std::isfinite (t_max)))
            throw std::invalid_argument ("timing: t_max must be > 0");
        if (knots_.size () < 2 || knots_.front () != PathTimePoint{0.0, 0.0})
            throw std::invalid_argument ("timing: must start at (0, 0) and have >= 2 knots");
        if (knots_.back ().s != 1.0)
            throw std::invalid_argument ("timing: last knot must have s = 1");
        for (std::size_t i = 1; i < knots_.size (); ++i)
        {
            if (!(knots_[i].t > knots_[i - 1].t))
                throw std::invalid_argument ("timing: knot times must be strictly increasing");
            if (knots_[i].s < knots_[i - 1].s)
                throw std::invalid_argument ("timing: s must be non-decreasing");
        }
    }

    namespace
    {
        double slope (const PathTimePoint &a, const PathTimePoint &b) { return (b.s - a.s) / (b.t - a.t); }
    } // namespace

    double TimingFunction::max_slope () const
    {
        double m = -std::numeric_limits<double>::infinity ();
        for (std::size_t i = 1; i < knots_.size (); ++i)
            m = std::max (m, slope (knots_[i - 1], knots_[i]));
        return m;
    }

    double TimingFunction::min_slope () const
    {
        double m = std::numeric_limits<double>::infinity ();
        for (std::size_t i = 1; i < knots_.size (); ++i)
            m = std::min (m, slope (knots_[i - 1], knots_[i]));
        return m;
    }

    TimingFunction constant_speed_timing (double path_length, double v_x)
    {
        if (!(path_length > 0.0 && v_x > 0.0))
            throw std::invalid_argument ("constant_speed_timing: length and speed must be > 0");
        return TimingFunction ({{0.0, 0.0}, {1.0, 1.0}}, path_length / v_x);
    }

    double sigma_eval (const TimingFunction &sigma, double t)
    {
        if (!(t >= 0.0))
            throw std::invalid_argument ("sigma_eval: t must be >= 0");
        const auto &k = sigma.knots ();
        const double u = t / sigma.t_max ();
        if (u >= k.back ().t)
            return 1.0;
        auto it = std::upper_bound (k.begin (), k.end (), u,
                                    [] (double v, const PathTimePoint &p) { return v < p.t; });
        const PathTimePoint &b = *it;
        const PathTimePoint &a = *(it - 1);
        return a.s + (u - a.t) * (b.s - a.s) / (b.t - a.t);
    }

    Pose phi_eval (const GeometricPath &path, const TimingFunction &sigma, double t)
    {
        return path.pose_at (sigma_eval (sigma, t));
    }

    // ------------------------------------------------------------ planner

    std::vector<PathTimePoint> sample_st (const VtConfig &cfg, Rng &rng)
    {
        std::vector<PathTimePoint> out;
        out.reserve (cfg.k);
        const std::size_t interior = cfg.k / 2;
        for (std::size_t i = 0; i < interior; ++i)
        {
            const double t = rng.uniform ();
            const double s = rng.uniform ();
            out.push_back ({t, s});
        }
        for (std::size_t i = interior; i < cfg.k; ++i)
            out.push_back ({rng.uniform (), 1.0});
        return out;
    }

    PathTimePoint st_steer (const PathTimePoint &near, const PathTimePoint &rand, const VtConfig &cfg)
    {
        const double avail = rand.t - near.t;
        double dt = std::min (cfg.dt_step, avail);
        const double v = std::clamp ((rand.s - near.s) / avail, cfg.v_min, cfg.v_max);
        const double s = near.s + v * dt;
        if (s > 1.0)
        {
            dt = (1.0 - near.s) / v;
            return {near.t + dt, 1.0};
        }
        return {near.t + dt, s};
    }

    std::size_t st_nearest (const StTree &tree, const PathTimePoint &p)
    {
        std::size_t best = 0;
        double best_d2 = std::numeric_limits<double>::infinity ();
        for (std::size_t i = 0; i < tree.nodes.size (); ++i)
        {
            const double dt = tree.nodes[i].point.t - p.t;
            const double ds = tree.nodes[i].point.s - p.s;
            const double d2 = dt * dt + ds * ds;
            if (d2 < best_d2)
            {
                best_d2 = d2;
                best = i;
            }
        }
        return best;
    }

    double vt_cost (const StTree &tree, std::size_t candidate, const PathTimePoint &endpoint,
                    const PathTimePoint &goal, const StObstacleGrid &grid)
    {
        const StNode &from = tree.nodes.at (candidate);
        if (grid.segment_blocked (from.point, endpoint))
            return std::numeric_limits<double>::infinity ();
        const double g = from.g_cost + std::hypot (endpoint.t - from.point.t, endpoint.s - from.point.s);
        return g + std::hypot (goal.t - endpoint.t, goal.s - endpoint.s);
    }

    VtResult vt_plan (const StObstacleGrid &grid, const VtConfig &cfg)
    {
        cfg.validate ();
        VtResult res;
        res.tree.nodes.push_back ({{0.0, 0.0}, std::nullopt, 0.0});
        if (grid.blocked_at ({0.0, 0.0}))
        {
            res.status = VtStatus::StartBlocked;
            return res;
        }

        const PathTimePoint goal{1.0, 1.0};
        Rng rng (cfg.seed);
        for (std::size_t it = 1; it <= cfg.max_iterations; ++it)
        {
            res.iterations = it;
            const auto samples = sample_st (cfg, rng);

            std::optional<std::size_t> best_parent;
            PathTimePoint best_point;
            double best_cost = std::numeric_limits<double>::infinity ();
            for (const auto &r : samples)
            {
                const std::size_t near = st_nearest (res.tree, r);
                const PathTimePoint &np = res.tree.nodes[near].point;
                if (!(r.t > np.t))
                    continue;
                const PathTimePoint q = st_steer (np, r, cfg);
                if (!(q.t > np.t))
                    continue;
                double c = vt_cost (res.tree, near, q, goal, grid);
                if (q.s >= 1.0 && grid.segment_blocked (q, goal))
                    c = std::numeric_limits<double>::infinity ();
                if (c < best_cost)
                {
                    best_cost = c;
                    best_parent = near;
                    best_point = q;
                }
            }
            if (!best_parent)
                continue;

            const StNode &parent = res.tree.nodes[*best_parent];
            const double g =
                parent.g_cost + std::hypot (best_point.t - parent.point.t, best_point.s - parent.point.s);
            res.tree.nodes.push_back ({best_point, best_parent, g});

            if (best_point.s >= 1.0)
            {
                std::vector<PathTimePoint> knots;
                for (std::optional<std::size_t> cur = res.tree.nodes.size () - 1; cur;
                     cur = res.tree.nodes[*cur].parent)
                    knots.push_back (res.tree.nodes[*cur].point);
                std::reverse (knots.begin (), knots.end ());
                res.sigma = TimingFunction (std::move (knots), grid.t_max ());
                res.status = VtStatus::Success;
                return res;
            }
        }
        return res;
    }

    // ------------------------------------------------------------------ io

    void write_knots_csv (std::ostream &os, const TimingFunction &sigma)
    {
        os << "t_s,s\n";
        for (const auto &k : sigma.knots ())
            os << io::num (k.t * sigma.t_max ()) << ',' << io::num (k.s) << '\n';
    }

    void write_grid_pgm (std::ostream &os, const StObstacleGrid &grid)
    {
        os << "P2\n" << grid.t_cells () << ' ' << grid.s_cells () << "\n255\n";
        for (std::size_t row = 0; row < grid.s_cells (); ++row)
        {
            const std::size_t j = grid.s_cells () - 1 - row;
            for (std::size_t i = 0; i < grid.t_cells (); ++i)
                os << (i ? " " : "") << (grid.blocked (i, j) ? 0 : 255);
            os << '\n';
        }
    }

} // namespace dsbp::timing
