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
#include "support/oracle.hpp"

#include <gtest/gtest.h>

using namespace dsbp;
using namespace dsbp::coordination;

namespace
{
    const ObstacleMap kField{{{-100, -100}, {100, 100}}, {}};

    VehicleTask task (std::string id, int priority, Point2 start, Point2 goal)
    {
        VehicleTask t;
        t.id = std::move (id);
        t.priority = priority;
        t.start = start;
        t.start_heading = std::atan2 (goal.y - start.y, goal.x - start.x);
        t.goal = goal;
        return t;
    }

    irrt::PlanResult found (const VehicleTask &t)
    {
        const std::vector<VehicleState> s{{t.start.x, t.start.y, t.start_heading, 0, 0},
                                          {t.goal.x, t.goal.y, t.start_heading, 0, 0}};
        return {irrt::PlanStatus::Success, irrt::GeometricPath::from_states (s), irrt::PlanTree (s[0]), 1, 1, 0};
    }

    irrt::PlanResult not_found (const VehicleTask &t)
    {
        return {irrt::PlanStatus::BudgetExhausted, std::nullopt,
                irrt::PlanTree ({t.start.x, t.start.y, t.start_heading, 0, 0}), 100, std::nullopt, 0};
    }

    PlannedMotion constant (const VehicleTask &t)
    {
        PlannedMotion m;
        m.id = t.id;
        m.priority = t.priority;
        m.footprint = t.params.footprint_radius;
        m.path = *found (t).path;
        m.sigma = timing::constant_speed_timing (m.path.total_length (), t.params.v_x);
        m.arrival_time = m.sigma.arrival_time ();
        return m;
    }

    DsbpResult time_straight (const std::vector<VehicleTask> &ordered, std::uint64_t seed = 0)
    {
        std::vector<irrt::PlanResult> paths;
        for (const auto &t : ordered)
            paths.push_back (found (t));
        timing::VtConfig cfg;
        cfg.seed = seed;
        return time_paths (ordered, std::move (paths), cfg);
    }
} // namespace

TEST (OrderByPriority, StableAndUnique)
{
    const std::vector<VehicleTask> in{task ("b", 2, {0, 0}, {1, 0}), task ("a", 1, {5, 5}, {6, 5})};
    const auto out = order_by_priority (in);
    EXPECT_EQ (out[0].id, "a");
    EXPECT_EQ (out[1].id, "b");

    auto dup_id = in;
    dup_id[1].id = "b";
    EXPECT_THROW (order_by_priority (dup_id), std::invalid_argument);
    auto dup_rank = in;
    dup_rank[1].priority = 2;
    EXPECT_THROW (order_by_priority (dup_rank), std::invalid_argument);
}

TEST (TimePaths, SingleVehicleDrivesAtConstantSpeed)
{
    const auto r = time_straight ({task ("solo", 1, {-50, 0}, {50, 0})});
    ASSERT_TRUE (r.success ());
    ASSERT_EQ (r.motions.size (), 1u);
    EXPECT_DOUBLE_EQ (r.motions[0].arrival_time, 100.0 / 15.0);
    EXPECT_FALSE (r.motions[0].st_grid.has_value ());
    EXPECT_TRUE (r.motions[0].obstacle_ids.empty ());
}

TEST (TimePaths, FarApartPathsMatchBruteForceDistance)
{
    const auto r = time_straight ({task ("a", 1, {-50, 0}, {50, 0}), task ("b", 2, {-50, 60}, {50, 60})});
    ASSERT_TRUE (r.success ());
    const auto rep = verify_plan (r.motions, kField);
    EXPECT_TRUE (rep.passed ());
    EXPECT_NEAR (rep.min_pair_margin, oracle::min_pair_margin (r.motions), 1e-9);
    EXPECT_NEAR (rep.min_pair_distance, 60.0, 1e-9);
}

TEST (TimePaths, CrossingPathsYieldAndStaySeparated)
{
    for (std::uint64_t seed = 0; seed < 5; ++seed)
    {
        const auto r = time_straight ({task ("a", 1, {-50, 0}, {50, 0}), task ("b", 2, {0, -50}, {0, 50})}, seed);
        ASSERT_TRUE (r.success ()) << seed;
        const auto &b = r.motions[1];
        EXPECT_NE (b.sigma.knots ().size (), 2u);
        EXPECT_EQ (b.obstacle_ids, (std::vector<std::string>{"a"}));
        EXPECT_GT (oracle::min_pair_margin (r.motions), 0.0) << seed;
        EXPECT_TRUE (verify_plan (r.motions, kField).passed ()) << seed;
    }
}

TEST (TimePaths, ProvenanceListsHigherPrioritiesOnly)
{
    const auto r = time_straight ({task ("a", 1, {-50, 0}, {50, 0}), task ("b", 2, {-50, 30}, {50, 30}),
                                   task ("c", 3, {-50, -30}, {50, -30})});
    ASSERT_TRUE (r.success ());
    EXPECT_TRUE (r.motions[0].obstacle_ids.empty ());
    EXPECT_EQ (r.motions[1].obstacle_ids, (std::vector<std::string>{"a"}));
    EXPECT_EQ (r.motions[2].obstacle_ids, (std::vector<std::string>{"a", "b"}));
}

TEST (TimePaths, FailedVehicleIsParkedAtStart)
{
    const std::vector<VehicleTask> ordered{task ("stuck", 1, {0, 0}, {0, 50}), task ("b", 2, {-50, 0}, {50, 0})};
    std::vector<irrt::PlanResult> paths;
    paths.push_back (not_found (ordered[0]));
    paths.push_back (found (ordered[1]));
    const auto r = time_paths (ordered, std::move (paths), timing::VtConfig{});
    ASSERT_EQ (r.failures.size (), 2u);
    EXPECT_EQ (r.failures[0].id, "stuck");
    EXPECT_EQ (r.failures[0].stage, FailureStage::Path);
    // the parked disc sits on b's path for all time
    EXPECT_EQ (r.failures[1].id, "b");
    EXPECT_EQ (r.failures[1].stage, FailureStage::Timing);
}

TEST (TimePaths, HoldsPositionAfterArrival)
{
    const auto r = time_straight ({task ("a", 1, {-50, 0}, {50, 0}), task ("b", 2, {0, -50}, {0, 50})});
    for (const auto &m : r.motions)
    {
        const auto end = m.position_at (m.arrival_time);
        for (double dt : {0.001, 1.0, 50.0})
            EXPECT_EQ (m.position_at (m.arrival_time + dt), end);
    }
}

TEST (TimePaths, RejectsMismatchedInputs)
{
    const std::vector<VehicleTask> ordered{task ("a", 1, {0, 0}, {10, 0})};
    EXPECT_THROW (time_paths (ordered, {}, timing::VtConfig{}), std::invalid_argument);
}

TEST (DsbpPlan, RejectsOverlappingStartsAndEmptyInput)
{
    const std::vector<VehicleTask> tasks{task ("a", 1, {0, 0}, {50, 0}), task ("b", 2, {2, 0}, {50, 20})};
    EXPECT_THROW (dsbp_plan (tasks, kField, irrt::IrrtConfig{}, timing::VtConfig{}), std::invalid_argument);
    EXPECT_THROW (dsbp_plan ({}, kField, irrt::IrrtConfig{}, timing::VtConfig{}), std::invalid_argument);
}

TEST (PlanPaths, PerVehicleSeedsAndParallelAgree)
{
    irrt::IrrtConfig cfg;
    cfg.max_iterations = 200;
    cfg.seed = 11;
    const std::vector<VehicleTask> ordered{task ("a", 1, {-50, 0}, {50, 0}), task ("b", 2, {0, -50}, {0, 50})};
    const auto par = plan_paths (ordered, kField, cfg, true);
    const auto seq = plan_paths (ordered, kField, cfg, false);
    for (std::size_t i = 0; i < 2; ++i)
    {
        auto c = cfg;
        c.seed = mix_seed (cfg.seed, i);
        const auto direct = irrt::irrt_plan ({ordered[i].start.x, ordered[i].start.y, ordered[i].start_heading, 0, 0},
                                             ordered[i].goal, kField, ordered[i].params, c);
        ASSERT_EQ (par[i].tree.size (), direct.tree.size ());
        ASSERT_EQ (seq[i].tree.size (), direct.tree.size ());
        for (std::size_t n = 0; n < direct.tree.size (); ++n)
        {
            EXPECT_EQ (par[i].tree.node (n).state, direct.tree.node (n).state);
            EXPECT_EQ (seq[i].tree.node (n).state, direct.tree.node (n).state);
        }
    }
}

TEST (VerifyPlan, SingleVehicle)
{
    const std::vector<PlannedMotion> ms{constant (task ("a", 1, {-50, 0}, {50, 0}))};
    const auto rep = verify_plan (ms, kField);
    EXPECT_TRUE (rep.passed ());
    EXPECT_TRUE (rep.pairs.empty ());
    EXPECT_GT (rep.min_static_clearance, 0.0);
}

TEST (VerifyPlan, ParallelLanes)
{
    const std::vector<PlannedMotion> ms{constant (task ("a", 1, {-50, 0}, {50, 0})),
                                        constant (task ("b", 2, {-50, 20}, {50, 20}))};
    const auto rep = verify_plan (ms, kField);
    EXPECT_TRUE (rep.passed ());
    EXPECT_NEAR (rep.min_pair_distance, 20.0, 1e-9);
    EXPECT_NEAR (rep.min_pair_margin, 17.0, 1e-9);
    EXPECT_EQ (rep.times.size (), rep.pair_distances[0].size ());
    EXPECT_DOUBLE_EQ (rep.times[1] - rep.times[0], 1e-3);
}

TEST (VerifyPlan, OverlappedConstantSpeedPlansFail)
{
    // both reach the origin at t = 50/15 s
    const std::vector<PlannedMotion> ms{constant (task ("a", 1, {-50, 0}, {50, 0})),
                                        constant (task ("b", 2, {0, -50}, {0, 50}))};
    const auto rep = verify_plan (ms, kField);
    ASSERT_FALSE (rep.passed ());
    const auto &v = *rep.first_violation;
    EXPECT_EQ (v.first, "a");
    EXPECT_EQ (v.second, "b");
    EXPECT_LE (v.distance, 3.0);
    // first time the centres are within 3 m: |d| = 15 sqrt(2) |t - 10/3| <= 3
    EXPECT_NEAR (v.time, 10.0 / 3.0 - 3.0 / (15.0 * std::sqrt (2.0)), 1.5e-3);
    EXPECT_LT (oracle::min_pair_margin (ms), 0.0);
}

TEST (VerifyPlan, StaticCollisionIsReported)
{
    const ObstacleMap walled{{{-100, -100}, {100, 100}}, {geometry::Obstacle::rectangle ({-1, -5}, {1, 5})}};
    const std::vector<PlannedMotion> ms{constant (task ("a", 1, {-50, 0}, {50, 0}))};
    const auto rep = verify_plan (ms, walled);
    ASSERT_FALSE (rep.passed ());
    EXPECT_TRUE (rep.first_violation->second.empty ());
    EXPECT_LE (rep.min_static_clearance, 0.0);
}
