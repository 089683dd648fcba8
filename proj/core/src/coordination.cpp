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

#include "dsbp/coordination.hpp"

#include "dsbp/random.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <set>
#include <stdexcept>

namespace dsbp::coordination
{
    std::vector<VehicleTask> order_by_priority (std::span<const VehicleTask> tasks)
    {
        std::set<std::string> ids;
        std::set<int> ranks;
        for (const auto &t : tasks)
        {
            if (!ids.insert (t.id).second)
                throw std::invalid_argument ("duplicate vehicle id '" + t.id + "'");
            if (!ranks.insert (t.priority).second)
                throw std::invalid_argument ("duplicate priority " + std::to_string (t.priority));
        }
        std::vector<VehicleTask> out (tasks.begin (), tasks.end ());
        std::stable_sort (out.begin (), out.end (),
                          [] (const VehicleTask &a, const VehicleTask &b) { return a.priority < b.priority; });
        return out;
    }

    namespace
    {
        irrt::PlanResult plan_path (const VehicleTask &task, const ObstacleMap &map, irrt::IrrtConfig cfg,
                                    std::size_t rank)
        {
            cfg.seed = mix_seed (cfg.seed, rank);
            const VehicleState start{task.start.x, task.start.y, dynamics::wrap_angle (task.start_heading), 0.0, 0.0};
            return irrt::irrt_plan (start, task.goal, map, task.params, cfg);
        }

        timing::VtConfig speed_limited (timing::VtConfig cfg, double v_x, double t_max, double length)
        {
            cfg.v_max = std::min (cfg.v_max, v_x * t_max / length);
            cfg.v_min = std::min (cfg.v_min, cfg.v_max);
            return cfg;
        }
    } // namespace

    std::vector<irrt::PlanResult> plan_paths (std::span<const VehicleTask> ordered, const ObstacleMap &map,
                                              const irrt::IrrtConfig &cfg, bool parallel)
    {
        const std::size_t n = ordered.size ();
        std::vector<irrt::PlanResult> paths;
        paths.reserve (n);
        if (parallel && n > 1)
        {
            std::vector<std::future<irrt::PlanResult>> jobs;
            for (std::size_t i = 0; i < n; ++i)
                jobs.push_back (
                    std::async (std::launch::async, plan_path, std::cref (ordered[i]), std::cref (map), cfg, i));
            for (auto &j : jobs)
                paths.push_back (j.get ());
        }
        else
        {
            for (std::size_t i = 0; i < n; ++i)
                paths.push_back (plan_path (ordered[i], map, cfg, i));
        }
        return paths;
    }

    DsbpResult time_paths (std::span<const VehicleTask> ordered, std::vector<irrt::PlanResult> paths,
                           const timing::VtConfig &vt_cfg, const DsbpOptions &opts)
    {
        const std::size_t n = ordered.size ();
        if (paths.size () != n)
            throw std::invalid_argument ("time_paths: one path result per vehicle required");
        if (!(opts.t_max_factor >= 1.0))
            throw std::invalid_argument ("time_paths: t_max_factor must be >= 1");
        vt_cfg.validate ();

        DsbpResult out;
        out.motions.reserve (n);
        std::vector<timing::MovingObstacle> committed;
        std::vector<std::string> committed_ids;
        double latest_arrival = 0.0;

        auto park = [&] (const VehicleTask &task) {
            committed.push_back ({[p = task.start] (double) { return p; }, task.params.footprint_radius});
            committed_ids.push_back (task.id);
        };

        for (std::size_t i = 0; i < n; ++i)
        {
            const VehicleTask &task = ordered[i];
            irrt::PlanResult &pr = paths[i];
            if (!pr.success () || !pr.path)
            {
                out.failures.push_back ({task.id, FailureStage::Path,
                                         "no path after " + std::to_string (pr.iterations) + " iterations",
                                         pr.iterations, pr.tree.size (), 0.0, 0});
                park (task);
                continue;
            }

            PlannedMotion m;
            m.id = task.id;
            m.priority = task.priority;
            m.footprint = task.params.footprint_radius;
            m.path = std::move (*pr.path);
            m.irrt_iterations = pr.iterations;
            m.tree = std::move (pr.tree);
            m.obstacle_ids = committed_ids;

            const double length = m.path.total_length ();
            const double v_x = task.params.v_x;

            if (committed.empty ())
            {
                m.sigma = timing::constant_speed_timing (length, v_x);
            }
            else
            {
                double t_max = std::max (opts.t_max_factor * length / v_x, latest_arrival + length / v_x);
                timing::VtConfig cfg = vt_cfg;
                cfg.seed = mix_seed (vt_cfg.seed, i);

                auto attempt = [&] {
                    m.st_grid = timing::build_st_grid (m.path, committed, m.footprint, t_max, opts.grid_t_cells,
                                                       opts.grid_s_cells);
                    return timing::vt_plan (*m.st_grid, speed_limited (cfg, v_x, t_max, length));
                };
                timing::VtResult vr = attempt ();
                if (!vr.success ())
                {
                    t_max *= 2.0;
                    m.t_max_doubled = true;
                    vr = attempt ();
                }
                m.vt_iterations = vr.iterations;
                m.st_tree = std::move (vr.tree);
                if (!vr.success ())
                {
                    out.failures.push_back ({task.id, FailureStage::Timing,
                                             vr.status == timing::VtStatus::StartBlocked
                                                 ? "start is blocked in path-time space"
                                                 : "no timing after enlarging t_max",
                                             m.irrt_iterations, m.tree.size (), length, m.vt_iterations});
                    park (task);
                    continue;
                }
                m.sigma = std::move (*vr.sigma);
            }

            m.arrival_time = m.sigma.arrival_time ();
            latest_arrival = std::max (latest_arrival, m.arrival_time);
            out.motions.push_back (std::move (m));

            const PlannedMotion &ref = out.motions.back ();
            committed.push_back ({[&ref] (double t) { return ref.position_at (t); }, ref.footprint});
            committed_ids.push_back (ref.id);
        }
        return out;
    }

    DsbpResult dsbp_plan (std::span<const VehicleTask> tasks, const ObstacleMap &map, const irrt::IrrtConfig &irrt_cfg,
                          const timing::VtConfig &vt_cfg, const DsbpOptions &opts)
    {
        if (tasks.empty ())
            throw std::invalid_argument ("dsbp_plan: no vehicles");
        map.validate ();
        irrt_cfg.validate ();
        vt_cfg.validate ();

        const std::vector<VehicleTask> ordered = order_by_priority (tasks);
        const std::size_t n = ordered.size ();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (geometry::distance (ordered[i].start, ordered[j].start) <=
                    ordered[i].params.footprint_radius + ordered[j].params.footprint_radius)
                    throw std::invalid_argument ("dsbp_plan: starts of '" + ordered[i].id + "' and '" +
                                                 ordered[j].id + "' overlap");

        return time_paths (ordered, plan_paths (ordered, map, irrt_cfg, opts.parallel_paths), vt_cfg, opts);
    }

    VerifyReport verify_plan (std::span<const PlannedMotion> motions, const ObstacleMap &map, double dt, double hold)
    {
        if (!(dt > 0.0))
            throw std::invalid_argument ("verify_plan: dt must be > 0");
        if (!(hold >= 0.0))
            throw std::invalid_argument ("verify_plan: hold must be >= 0");

        VerifyReport rep;
        const std::size_t n = motions.size ();
        if (n == 0)
            return rep;

        double end = 0.0;
        for (const auto &m : motions)
            end = std::max (end, m.arrival_time);
        end += hold;
        const auto steps = static_cast<std::size_t> (std::floor (end / dt + 1e-9)) + 1;

        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                rep.pairs.emplace_back (motions[a].id, motions[b].id);
        rep.pair_distances.assign (rep.pairs.size (), {});
        for (auto &series : rep.pair_distances)
            series.reserve (steps);
        rep.times.reserve (steps);

        std::vector<Point2> at (n);
        for (std::size_t k = 0; k < steps; ++k)
        {
            const double t = static_cast<double> (k) * dt;
            rep.times.push_back (t);
            for (std::size_t a = 0; a < n; ++a)
            {
                at[a] = motions[a].position_at (t);
                const double c = geometry::clearance (at[a], motions[a].footprint, map);
                rep.min_static_clearance = std::min (rep.min_static_clearance, c);
                if (c <= 0.0 && !rep.first_violation)
                    rep.first_violation = Violation{t, motions[a].id, {}, c};
            }

            std::size_t p = 0;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = a + 1; b < n; ++b, ++p)
                {
                    const double d = geometry::distance (at[a], at[b]);
                    const double margin = d - (motions[a].footprint + motions[b].footprint);
                    rep.pair_distances[p].push_back (d);
                    rep.min_pair_distance = std::min (rep.min_pair_distance, d);
                    rep.min_pair_margin = std::min (rep.min_pair_margin, margin);
                    if (margin <= 0.0 && !rep.first_violation)
                        rep.first_violation = Violation{t, motions[a].id, motions[b].id, d};
                }
        }
        return rep;
    }

} // namespace dsbp::coordination
