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

#include "dsbp/dynamics.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <stdexcept>

using namespace dsbp::dynamics;

TEST (SlipAngles, Examples)
{
    VehicleParams p;
    p.v_x = 10.0;
    auto a = slip_angles ({}, p, 0.0);
    EXPECT_DOUBLE_EQ (a.front, 0.0);
    EXPECT_DOUBLE_EQ (a.rear, 0.0);

    a = slip_angles ({0, 0, 0, 1.0, 0}, p, 0.0);
    EXPECT_DOUBLE_EQ (a.front, 0.1);
    EXPECT_DOUBLE_EQ (a.rear, 0.1);

    a = slip_angles ({0, 0, 0, 0, 0.5}, p, 0.0);
    EXPECT_NEAR (a.front, 0.06, 1e-15);
    EXPECT_NEAR (a.rear, -0.08, 1e-15);
}

TEST (SlipAngles, RejectsNonPositiveSpeed)
{
    VehicleParams p;
    p.v_x = 0.0;
    EXPECT_THROW (slip_angles ({}, p, 0.0), std::invalid_argument);
}

TEST (TireForces, LinearMap)
{
    VehicleParams p;
    p.c_alpha_front = 20000.0;
    auto f = tire_forces ({0.0, 0.0}, p);
    EXPECT_DOUBLE_EQ (f.lateral_front, 0.0);
    EXPECT_DOUBLE_EQ (f.lateral_rear, 0.0);
    f = tire_forces ({0.1, 0.0}, p);
    EXPECT_DOUBLE_EQ (f.lateral_front, -2000.0);
    EXPECT_DOUBLE_EQ (f.longitudinal_front, 0.0);
    EXPECT_DOUBLE_EQ (f.longitudinal_rear, 0.0);
}

TEST (StateDerivative, StraightLineAndRotatedFrame)
{
    const VehicleParams p;
    auto d = state_derivative (VehicleState{}, 0.0, p);
    EXPECT_DOUBLE_EQ (d.x_dot, 15.0);
    EXPECT_DOUBLE_EQ (d.y_dot, 0.0);
    EXPECT_DOUBLE_EQ (d.theta_dot, 0.0);
    EXPECT_DOUBLE_EQ (d.v_y_dot, 0.0);
    EXPECT_DOUBLE_EQ (d.r_dot, 0.0);

    d = state_derivative (VehicleState{0, 0, std::numbers::pi / 2, 0, 0}, 0.0, p);
    EXPECT_NEAR (d.x_dot, 0.0, 1e-14);
    EXPECT_DOUBLE_EQ (d.y_dot, 15.0);
}

TEST (StateDerivative, MatchesHighPrecisionEvaluation)
{
    // 30-digit evaluation of the model equations
    const auto d = state_derivative (VehicleState{1.0, 2.0, 0.3, 0.5, 0.2}, 0.1, VehicleParams{});
    EXPECT_NEAR (d.x_dot, 14.182287233553421, 1e-12);
    EXPECT_NEAR (d.y_dot, 4.9104713444828966, 1e-12);
    EXPECT_NEAR (d.theta_dot, 0.2, 1e-15);
    EXPECT_NEAR (d.v_y_dot, -2.5134284379282359, 1e-12);
    EXPECT_NEAR (d.r_dot, 0.60569152469167015, 1e-12);
}

TEST (StateDerivative, ArrayFormMatches)
{
    const VehicleParams p;
    const VehicleState s{3.0, -1.0, 2.5, -0.4, 0.7};
    const auto a = state_derivative (s.to_array (), -0.3, p);
    const auto b = state_derivative (s, -0.3, p).to_array ();
    for (int i = 0; i < 5; ++i)
        EXPECT_DOUBLE_EQ (a[i], b[i]);
}

TEST (StateDerivative, MirrorSymmetry)
{
    const VehicleParams p;
    for (const VehicleState s : {VehicleState{1, 2, 0.3, 0.5, 0.2}, VehicleState{-4, 7, -1.2, -0.8, 0.9}})
        for (double delta : {0.1, -0.5, 0.7})
        {
            const auto d = state_derivative (s, delta, p);
            const auto m = state_derivative (VehicleState{s.x, -s.y, -s.theta, -s.v_y, -s.r}, -delta, p);
            EXPECT_NEAR (m.x_dot, d.x_dot, 1e-12);
            EXPECT_NEAR (m.y_dot, -d.y_dot, 1e-12);
            EXPECT_NEAR (m.theta_dot, -d.theta_dot, 1e-12);
            EXPECT_NEAR (m.v_y_dot, -d.v_y_dot, 1e-12);
            EXPECT_NEAR (m.r_dot, -d.r_dot, 1e-12);
        }
}

TEST (StateDerivative, ZeroInputIsLateralEquilibrium)
{
    const auto d = state_derivative (VehicleState{12, -3, 0.8, 0, 0}, 0.0, VehicleParams{});
    EXPECT_DOUBLE_EQ (d.v_y_dot, 0.0);
    EXPECT_DOUBLE_EQ (d.r_dot, 0.0);
    EXPECT_DOUBLE_EQ (d.theta_dot, 0.0);
}

TEST (StateDerivative, JacobianIsSmooth)
{
    // Central differences at two step sizes agree, so the map is smooth at this point.
    const VehicleParams p;
    const std::array<double, 6> base{1.0, 2.0, 0.3, 0.5, 0.2, 0.1};
    auto f = [&] (std::array<double, 6> in) {
        return state_derivative (std::array<double, 5>{in[0], in[1], in[2], in[3], in[4]}, in[5], p);
    };
    for (std::size_t i = 0; i < 6; ++i)
    {
        auto column = [&] (double eps) {
            auto up = base, dn = base;
            up[i] += eps;
            dn[i] -= eps;
            const auto a = f (up), b = f (dn);
            std::array<double, 5> c{};
            for (std::size_t k = 0; k < 5; ++k)
                c[k] = (a[k] - b[k]) / (2 * eps);
            return c;
        };
        const auto fine = column (1e-6), coarse = column (1e-4);
        for (std::size_t k = 0; k < 5; ++k)
            EXPECT_NEAR (fine[k], coarse[k], 1e-4 * std::max (1.0, std::abs (coarse[k]))) << i << "," << k;
    }
}

TEST (SteerToward, Examples)
{
    const VehicleParams p;
    EXPECT_DOUBLE_EQ (steer_toward ({0, 0, 0, 0, 0}, {10, 0}, p), 0.0);
    EXPECT_DOUBLE_EQ (steer_toward ({0, 0, 0, 0, 0}, {0, 10}, p), std::numbers::pi / 4);
    const double e = -0.2;
    EXPECT_NEAR (steer_toward ({0, 0, 0, 0, 0}, {std::cos (e), std::sin (e)}, p), -0.2, 1e-12);
}

TEST (WrapAngle, HalfOpenInterval)
{
    EXPECT_DOUBLE_EQ (wrap_angle (std::numbers::pi), std::numbers::pi);
    EXPECT_DOUBLE_EQ (wrap_angle (-std::numbers::pi), std::numbers::pi);
    EXPECT_NEAR (wrap_angle (3 * std::numbers::pi / 2), -std::numbers::pi / 2, 1e-15);
}

TEST (VehicleParams, ValidateNamesViolations)
{
    VehicleParams p;
    EXPECT_NO_THROW (p.validate ());
    p.mass = -1.0;
    EXPECT_THROW (p.validate (), std::invalid_argument);
}
