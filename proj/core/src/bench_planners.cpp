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

#include "dsbp/scenario.hpp"

#include "dsbp/random.hpp"
#include "format.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ostream>
#include <thread>

namespace dsbp::scenario
{
    std::vector<PlannerRun> bench_rrt_vs_irrt (std::span<const Scenario> scenarios, std::size_t seeds,
                                               std::uint64_t base_seed, bool keep_paths)
    {
        if (scenarios.empty ())
            throw std::invalid_argument ("bench_rrt_vs_irrt: at least one map is required");
        if (seeds < 5)
            throw std::invalid_argument ("bench_rrt_vs_irrt: at least 5 seeds are required");

        struct Cell
        {
            std::size_t scenario;
            bool improved;
            std::size_t k;
        };
        std::vector<Cell> cells;
        for (std::size_t s = 0; s < scenarios.size (); ++s)
        {
            scenarios[s].validate ();
            for (bool improved : {true, false})
                for (std::size_t k = 0; k < seeds; ++k)
                    cells.push_back ({s, improved, k});
        }

        std::vector<PlannerRun> runs (cells.size ());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t c; (c = next.fetch_add (1)) < cells.size ();)
            {
                const Cell &cell = cells[c];
                const Scenario &sc = scenarios[cell.scenario];
                const auto task = coordination::order_by_priority (sc.vehicles).front ();
                irrt::IrrtConfig cfg = sc.irrt;
                cfg.seed = mix_seed (base_seed, cell.k);
                const dynamics::VehicleState start{task.start.x, task.start.y,
                                                   dynamics::wrap_angle (task.start_heading), 0.0, 0.0};

                const auto t0 = std::chrono::steady_clock::now ();
                irrt::PlanResult r = cell.improved ? irrt::irrt_plan (start, task.goal, sc.map, task.params, cfg)
                                                   : irrt::rrt_plan (start, task.goal, sc.map, task.params, cfg);
                const auto t1 = std::chrono::steady_clock::now ();

                PlannerRun &out = runs[c];
                out.map = sc.name;
                out.algorithm = cell.improved ? "IRRT" : "RRT";
                out.seed = cfg.seed;
                out.success = r.success ();
                out.iterations = r.iterations;
                out.tree_size = r.tree.size ();
                out.wall_time = std::chrono::duration<double> (t1 - t0).count ();
                out.path_length = r.path ? r.path->total_length () : 0.0;
                out.footprint = task.params.footprint_radius;
                if (keep_paths)
                    out.path = std::move (r.path);
            }
        };

        const unsigned n = std::max (1u, std::min (std::thread::hardware_concurrency (), 8u));
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < n; ++i)
            pool.emplace_back (worker);
        pool.clear ();
        return runs;
    }

    double quantile (std::vector<double> v, double q)
    {
        if (v.empty ())
            throw std::invalid_argument ("quantile: empty sample");
        std::sort (v.begin (), v.end ());
        const double pos = q * static_cast<double> (v.size () - 1);
        const auto lo = static_cast<std::size_t> (std::floor (pos));
        const std::size_t hi = std::min (lo + 1, v.size () - 1);
        return v[lo] + (pos - static_cast<double> (lo)) * (v[hi] - v[lo]);
    }

    std::vector<PlannerSummary> summarize (std::span<const PlannerRun> runs)
    {
        std::vector<PlannerSummary> out;
        std::vector<std::pair<std::string, std::string>> keys;
        for (const auto &r : runs)
            if (std::find (keys.begin (), keys.end (), std::pair{r.map, r.algorithm}) == keys.end ())
                keys.emplace_back (r.map, r.algorithm);

        for (const auto &[map, algo] : keys)
        {
            std::vector<double> it, size, wall;
            std::size_t ok = 0;
            for (const auto &r : runs)
                if (r.map == map && r.algorithm == algo)
                {
                    it.push_back (static_cast<double> (r.iterations));
                    size.push_back (static_cast<double> (r.tree_size));
                    wall.push_back (r.wall_time);
                    ok += r.success ? 1 : 0;
                }
            PlannerSummary s;
            s.map = map;
            s.algorithm = algo;
            s.runs = it.size ();
            s.success_rate = static_cast<double> (ok) / static_cast<double> (it.size ());
            s.median_iterations = quantile (it, 0.5);
            s.iqr_iterations = quantile (it, 0.75) - quantile (it, 0.25);
            s.median_tree_size = quantile (size, 0.5);
            s.iqr_tree_size = quantile (size, 0.75) - quantile (size, 0.25);
            s.median_wall_time = quantile (wall, 0.5);
            s.iqr_wall_time = quantile (wall, 0.75) - quantile (wall, 0.25);
            out.push_back (s);
        }
        return out;
    }

    void write_planner_bench_csv (std::ostream &os, std::span<const PlannerSummary> rows)
    {
        os << "map,algorithm,runs,success_rate,median_iterations,iqr_iterations,median_tree_size,iqr_tree_size,"
              "median_wall_time_s,iqr_wall_time_s\n";
        for (const auto &r : rows)
            os << r.map << ',' << r.algorithm << ',' << r.runs << ',' << io::num (r.success_rate) << ','
               << io::num (r.median_iterations) << ',' << io::num (r.iqr_iterations) << ','
               << io::num (r.median_tree_size) << ',' << io::num (r.iqr_tree_size) << ','
               << io::num (r.median_wall_time) << ',' << io::num (r.iqr_wall_time) << '\n';
    }

} // namespace dsbp::scenario
