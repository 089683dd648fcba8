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

#include "dsbp/integrators.hpp"
#include "dsbp/irrt.hpp"
#include "dsbp/timing.hpp"

#include <benchmark/benchmark.h>

using namespace dsbp;

namespace
{
    const geometry::ObstacleMap kClutter{{{0, 0}, {100, 100}},
                                         {geometry::Obstacle::rectangle ({20, 20}, {30, 60}),
                                          geometry::Obstacle::circle ({60, 50}, 8),
                                          geometry::Obstacle::polygon ({{70, 10}, {90, 15}, {80, 30}})}};

    void BM_IntegratorStep (benchmark::State &st)
    {
        const auto kind = static_cast<integrators::IntegratorKind> (st.range (0));
        const dynamics::VehicleParams params;
        dynamics::VehicleState s{0, 0, 0, 0.1, 0.05};
        for (auto _ : st)
        {
            s = integrators::step (kind, s, 0.2, params, 0.01).state;
            benchmark::DoNotOptimize (s);
        }
        st.SetLabel (std::string (integrators::to_string (kind)));
    }
    BENCHMARK (BM_IntegratorStep)
        ->Arg (static_cast<int> (integrators::IntegratorKind::EulerForward))
        ->Arg (static_cast<int> (integrators::IntegratorKind::RK4))
        ->Arg (static_cast<int> (integrators::IntegratorKind::RK6));

    void BM_SegmentCollides (benchmark::State &st)
    {
        const geometry::Point2 p{5, 50}, q{95, 52};
        for (auto _ : st)
            benchmark::DoNotOptimize (geometry::segment_collides (p, q, kClutter));
    }
    BENCHMARK (BM_SegmentCollides);

    void BM_Nearest (benchmark::State &st)
    {
        irrt::PlanTree tree ({50, 50, 0, 0, 0});
        const dynamics::VehicleParams params;
        for (std::int64_t i = 1; i < st.range (0); ++i)
        {
            const double a = 0.001 * static_cast<double> (i * 7919 % 1000);
            const auto traj = integrators::integrate (
                integrators::IntegratorKind::RK4, tree.node (static_cast<std::size_t> (i - 1)).state,
                [a] (double) { return a - 0.5; }, params, 0.2, 0.05);
            tree.add (static_cast<std::size_t> (i - 1), traj);
        }
        for (auto _ : st)
            benchmark::DoNotOptimize (irrt::nearest (tree, {40, 60}));
    }
    BENCHMARK (BM_Nearest)->Arg (100)->Arg (1000)->Arg (10000);

    void BM_RrtPlan (benchmark::State &st)
    {
        irrt::IrrtConfig cfg;
        cfg.seed = 7;
        for (auto _ : st)
            benchmark::DoNotOptimize (irrt::rrt_plan ({5, 80, 0, 0, 0}, {95, 80}, kClutter, {}, cfg));
    }
    BENCHMARK (BM_RrtPlan)->Unit (benchmark::kMillisecond);

    void BM_VtPlan (benchmark::State &st)
    {
        timing::StObstacleGrid grid (200, 200, 20.0);
        for (std::size_t i = 60; i < 120; ++i)
            for (std::size_t j = 80; j < 120; ++j)
                grid.set_blocked (i, j, true);
        timing::VtConfig cfg;
        for (auto _ : st)
            benchmark::DoNotOptimize (timing::vt_plan (grid, cfg));
    }
    BENCHMARK (BM_VtPlan)->Unit (benchmark::kMillisecond);
} // namespace

BENCHMARK_MAIN ();
