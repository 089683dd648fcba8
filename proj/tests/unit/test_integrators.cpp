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

#include "dsbp/integrator_bench.hpp"
#include "dsbp/integrators.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <sstream>
#include <stdexcept>

using namespace dsbp;
using namespace dsbp::integrators;

namespace
{
    auto decay = [] (double, const Vec<1> &y) { return Vec<1>{-y[0]}; };

    Trajectory turning (IntegratorKind kind, double horizon, double h)
    {
        return integrate (kind, VehicleState{}, [] (double) { return std::numbers::pi / 4; }, VehicleParams{},
                          horizon, h, {1e-12, 1e-12});
    }

    // Turning test state at t = 1 s and t = 0.5 s from a 30-digit Taylor-series ODE solve.
    constexpr std::array<double, 5> kAtOne{14.15067345329051, 5.0691621527649445, 1.2934290864402239,
                                           -7.2619699240224404, 1.5884085213695364};
    constexpr std::array<double, 5> kAtHalf{7.4359945437367289, 0.95860381931511265, 0.47163662127808527,
                                            -2.7866946830210093, 1.5529035760526032};
} // namespace

TEST (Step, ScalarDecayExamples)
{
    EXPECT_DOUBLE_EQ (step<1> (IntegratorKind::EulerForward, decay, 0.0, {1.0}, 0.1).state[0], 0.9);
    EXPECT_NEAR (step<1> (IntegratorKind::RK4, decay, 0.0, {1.0}, 0.1).state[0], 0.9048375, 1e-12);
    EXPECT_NEAR (step<1> (IntegratorKind::Trapezoidal, decay, 0.0, {1.0}, 0.1).state[0], 0.95 / 1.05, 1e-10);
    EXPECT_NEAR (step<1> (IntegratorKind::EulerBackward, decay, 0.0, {1.0}, 0.1).state[0], 1.0 / 1.1, 1e-10);
}

TEST (Step, RejectsNonPositiveStep)
{
    EXPECT_THROW (step<1> (IntegratorKind::RK4, decay, 0.0, {1.0}, 0.0), std::invalid_argument);
}

TEST (Step, AdamsBashforthNeedsHistory)
{
    EXPECT_THROW (step<1> (IntegratorKind::AdamsBashforth4, decay, 0.0, {1.0}, 0.1), std::invalid_argument);
}

TEST (TimeGrid, ShortensLastInterval)
{
    const auto g = time_grid (1.0, 0.3);
    ASSERT_EQ (g.size (), 5u);
    EXPECT_DOUBLE_EQ (g.back (), 1.0);
    EXPECT_NEAR (g[3], 0.9, 1e-15);
}

TEST (Integrate, StraightLineIsExactForEveryMethod)
{
    for (auto kind : kAllIntegrators)
    {
        const auto tr = integrate (kind, VehicleState{}, [] (double) { return 0.0; }, VehicleParams{}, 2.0, 0.01);
        EXPECT_NEAR (tr.back ().x, 30.0, 1e-11) << to_string (kind);
        EXPECT_NEAR (tr.back ().y, 0.0, 1e-12) << to_string (kind);
    }
}

TEST (Integrate, RejectsBadStep)
{
    auto zero = [] (double) { return 0.0; };
    EXPECT_THROW (integrate (IntegratorKind::RK4, VehicleState{}, zero, VehicleParams{}, 1.0, 0.0),
                  std::invalid_argument);
    EXPECT_THROW (integrate (IntegratorKind::RK4, VehicleState{}, zero, VehicleParams{}, 1.0, 2.0),
                  std::invalid_argument);
}

TEST (Integrate, DormandPrinceMatchesHighPrecisionSolution)
{
    const auto tr = turning (IntegratorKind::DormandPrince, 1.0, 0.5);
    ASSERT_EQ (tr.size (), 3u);
    const auto half = tr.states[1].to_array (), one = tr.states[2].to_array ();
    for (int i = 0; i < 5; ++i)
    {
        EXPECT_NEAR (half[i], kAtHalf[i], 1e-9) << i;
        EXPECT_NEAR (one[i], kAtOne[i], 1e-9) << i;
    }
}

TEST (Integrate, Rk4AtMillisecondStepWithinMicroOfReference)
{
    const auto ref = turning (IntegratorKind::DormandPrince, 1.0, 1e-3);
    const auto rk4 = turning (IntegratorKind::RK4, 1.0, 1e-3);
    ASSERT_EQ (ref.size (), rk4.size ());
    double worst = 0.0;
    for (std::size_t k = 0; k < ref.size (); ++k)
    {
        const auto a = ref.states[k].to_array (), b = rk4.states[k].to_array ();
        for (int i = 0; i < 5; ++i)
            worst = std::max (worst, std::abs (a[i] - b[i]));
    }
    EXPECT_LT (worst, 1e-6);
}

TEST (Integrate, FixedStepIsBitDeterministic)
{
    for (auto kind : kAllIntegrators)
    {
        const auto a = turning (kind, 1.0, 0.01), b = turning (kind, 1.0, 0.01);
        EXPECT_EQ (a.states, b.states) << to_string (kind);
    }
}

TEST (Integrate, AdamsBashforthBootstrapsWithRk4)
{
    const auto ab = turning (IntegratorKind::AdamsBashforth4, 1.0, 0.05);
    const auto rk = turning (IntegratorKind::RK4, 1.0, 0.05);
    for (std::size_t k = 0; k <= 3; ++k)
        EXPECT_EQ (ab.states[k], rk.states[k]) << k;
    EXPECT_NE (ab.states[4], rk.states[4]);

    // no jump at the switch beyond local truncation size
    const auto ref = turning (IntegratorKind::DormandPrince, 1.0, 0.05);
    const double e3 = std::abs (ab.states[3].r - ref.states[3].r);
    const double e4 = std::abs (ab.states[4].r - ref.states[4].r);
    EXPECT_LT (e4 - e3, 1e-4);
}

TEST (Bench, ConvergenceOrdersMatchNominal)
{
    const auto steps = default_step_sizes ();
    const auto rows = bench_integrators (VehicleParams{}, steps);
    struct Band
    {
        IntegratorKind kind;
        double lo, hi;
    };
    for (const auto &b : {Band{IntegratorKind::EulerForward, 0.7, 1.3}, Band{IntegratorKind::EulerBackward, 0.5, 1.5},
                          Band{IntegratorKind::Trapezoidal, 1.5, 2.5}, Band{IntegratorKind::RK3, 2.5, 3.5},
                          Band{IntegratorKind::RK4, 3.5, 4.5}, Band{IntegratorKind::RK6, 5.0, 7.0},
                          Band{IntegratorKind::AdamsBashforth4, 3.5, 4.5}})
    {
        const auto order = fit_convergence_order (rows, b.kind);
        ASSERT_TRUE (order.has_value ()) << to_string (b.kind);
        EXPECT_GE (*order, b.lo) << to_string (b.kind);
        EXPECT_LE (*order, b.hi) << to_string (b.kind);
    }
}

TEST (Bench, ErrorAtCoarseStepMatchesIndependentSolve)
{
    // scipy DOP853 reference, normalised sup-norm error at h = 0.1
    const std::vector<double> h{0.1};
    const auto rows = bench_integrators (VehicleParams{}, h);
    for (const auto &r : rows)
    {
        if (r.method == IntegratorKind::EulerForward)
            EXPECT_NEAR (r.max_error, 1.68e-1, 0.005e-1);
        if (r.method == IntegratorKind::RK4)
            EXPECT_NEAR (r.max_error, 4.74e-5, 0.01e-5);
        if (r.method == IntegratorKind::RK3)
            EXPECT_NEAR (r.max_error, 1.01e-3, 0.01e-3);
    }
}

TEST (Bench, CsvHeaderAndRowCount)
{
    const auto steps = default_step_sizes ();
    const auto rows = bench_integrators (VehicleParams{}, steps);
    EXPECT_EQ (rows.size (), steps.size () * kAllIntegrators.size ());
    std::ostringstream os;
    write_bench_csv (os, rows);
    const std::string csv = os.str ();
    EXPECT_EQ (csv.substr (0, csv.find ('\n')), "method,step_size,max_error,wall_time_s,stable");
    EXPECT_EQ (static_cast<std::size_t> (std::count (csv.begin (), csv.end (), '\n')), rows.size () + 1);
}

TEST (Bench, RejectsEmptyStepList)
{
    EXPECT_THROW (bench_integrators (VehicleParams{}, std::vector<double>{}), std::invalid_argument);
}

// The lateral subsystem is linear with eigenvalues -1.62726 +- 2.33133i under
// default parameters, so each explicit method's absolute-stability boundary is
// the h where its amplification factor reaches 1.
struct StabilityCase
{
    IntegratorKind kind;
    double boundary;
};

class StabilityBoundary : public ::testing::TestWithParam<StabilityCase>
{
};

TEST_P (StabilityBoundary, BoundedBelowFlaggedWellAbove)
{
    const auto c = GetParam ();
    BenchSettings s;
    s.horizon = 10.0;
    const std::vector<double> below{0.9 * c.boundary};
    const std::vector<double> above{1.5 * c.boundary};
    EXPECT_FALSE (first_unstable_step (VehicleParams{}, c.kind, below, s).has_value ());
    EXPECT_TRUE (first_unstable_step (VehicleParams{}, c.kind, above, s).has_value ());
}

INSTANTIATE_TEST_SUITE_P (LinearBoundary, StabilityBoundary,
                          ::testing::Values (StabilityCase{IntegratorKind::EulerForward, 0.402635},
                                             StabilityCase{IntegratorKind::RK3, 0.872277},
                                             StabilityCase{IntegratorKind::RK4, 0.921341},
                                             StabilityCase{IntegratorKind::AdamsBashforth4, 0.118899}),
                          [] (const auto &info) { return std::string (to_string (info.param.kind)); });

TEST (Parse, IntegratorNamesRoundTrip)
{
    for (auto kind : kAllIntegrators)
        EXPECT_EQ (parse_integrator (to_string (kind)), kind);
    EXPECT_FALSE (parse_integrator ("Heun").has_value ());
}
