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
 * @brief Single-track (bicycle) vehicle model with a linear tire model and a
 *        constant longitudinal speed.
 *
 * State: world position (x, y), heading theta, body-frame lateral speed v_y
 * and yaw rate r. Longitudinal speed v_x is a parameter, so longitudinal tire
 * forces are identically zero.
 */

#include "dsbp/geometry.hpp"

#include <array>
#include <numbers>

namespace dsbp::dynamics
{
    using geometry::Point2;

    struct VehicleState
    {
        double x{0.0};      ///< m
        double y{0.0};      ///< m
        double theta{0.0};  ///< rad, wrapped to (-pi, pi]
        double v_y{0.0};    ///< m/s, body frame
        double r{0.0};      ///< rad/s

        friend bool operator== (const VehicleState &, const VehicleState &) = default;

        Point2 position () const { return {x, y}; }
        bool finite () const;

        std::array<double, 5> to_array () const { return {x, y, theta, v_y, r}; }
        /// Inverse of to_array(); wraps the heading.
        static VehicleState from_array (const std::array<double, 5> &a);
    };

    /// Time derivative of VehicleState (same field order, per-second units).
    struct StateDerivative
    {
        double x_dot{0.0};
        double y_dot{0.0};
        double theta_dot{0.0};
        double v_y_dot{0.0};
        double r_dot{0.0};

        std::array<double, 5> to_array () const { return {x_dot, y_dot, theta_dot, v_y_dot, r_dot}; }
    };

    /// Defaults are a generic mid-size passenger car; all are overridable.
    struct VehicleParams
    {
        double mass{1500.0};            ///< kg
        double yaw_inertia{2500.0};     ///< kg m^2
        double l_front{1.2};            ///< CoG to front axle, m
        double l_rear{1.6};             ///< CoG to rear axle, m
        double c_alpha_front{19000.0};  ///< N/rad
        double c_alpha_rear{19000.0};   ///< N/rad
        double v_x{15.0};               ///< m/s
        double delta_max{std::numbers::pi / 4.0};
        double footprint_radius{1.5};   ///< m
        double steer_gain{1.0};         ///< heading-error gain of steer_toward()

        friend bool operator== (const VehicleParams &, const VehicleParams &) = default;

        /// Throws std::invalid_argument naming the violated bound.
        void validate () const;
    };

    struct SlipAngles
    {
        double front{0.0};
        double rear{0.0};
    };

    struct WheelForces
    {
        double lateral_front{0.0};
        double lateral_rear{0.0};
        double longitudinal_front{0.0};
        double longitudinal_rear{0.0};
    };

    /// Wraps an angle to (-pi, pi].
    double wrap_angle (double a);

    /// Throws std::invalid_argument when v_x <= 0.
    SlipAngles slip_angles (const VehicleState &state, const VehicleParams &params, double delta);

    WheelForces tire_forces (const SlipAngles &slip, const VehicleParams &params);

    StateDerivative state_derivative (const VehicleState &state, double delta, const VehicleParams &params);

    /// Array form used by the integrators; the heading is not wrapped.
    std::array<double, 5> state_derivative (const std::array<double, 5> &state, double delta, const VehicleParams &params);

    /// Saturated proportional heading controller towards @p target.
    double steer_toward (const VehicleState &state, const Point2 &target, const VehicleParams &params);

} // namespace dsbp::dynamics
