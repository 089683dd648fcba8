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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dsbp::dynamics
{
    namespace
    {
        void require_positive (double v, const char *name)
        {
            if (!(std::isfinite (v) && v > 0.0))
                throw std::invalid_argument (std::string ("vehicle params: ") + name + " must be finite and > 0");
        }
    } // namespace

    bool VehicleState::finite () const
    {
        return std::isfinite (x) && std::isfinite (y) && std::isfinite (theta) && std::isfinite (v_y) &&
               std::isfinite (r);
    }

    VehicleState VehicleState::from_array (const std::array<double, 5> &a)
    {
        return {a[0], a[1], wrap_angle (a[2]), a[3], a[4]};
    }

    void VehicleParams::validate () const
    {
        require_positive (mass, "mass_kg");
        require_positive (yaw_inertia, "yaw_inertia_kgm2");
        require_positive (l_front, "l_front_m");
        require_positive (l_rear, "l_rear_m");
        require_positive (c_alpha_front, "c_alpha_front_npr");
        require_positive (c_alpha_rear, "c_alpha_rear_npr");
        require_positive (v_x, "v_x_mps");
        require_positive (footprint_radius, "footprint_radius_m");
        require_positive (steer_gain, "steer_gain");
        if (!(delta_max > 0.0 && delta_max <= std::numbers::pi / 2.0))
            throw std::invalid_argument ("vehicle params: delta_max_rad must be in (0, pi/2]");
    }

    double wrap_angle (double a)
    {
        if (!std::isfinite (a))
            return a;
        constexpr double two_pi = 2.0 * std::numbers::pi;
        a = std::fmod (a, two_pi);
        if (a > std::numbers::pi)
            a -= two_pi;
        else if (a <= -std::numbers::pi)
            a += two_pi;
        return a;
    }

    SlipAngles slip_angles (const VehicleState &state, const VehicleParams &params, double delta)
    {
        if (!(params.v_x > 0.0))
            throw std::invalid_argument ("slip_angles: longitudinal speed must be > 0");
        // Rear slip uses the rear axle distance and divides by v_x (standard single-track form).
        return {(state.v_y + params.l_front * state.r) / params.v_x - delta,
                (state.v_y - params.l_rear * state.r) / params.v_x};
    }

    WheelForces tire_forces (const SlipAngles &slip, const VehicleParams &params)
    {
        return {-params.c_alpha_front * slip.front, -params.c_alpha_rear * slip.rear, 0.0, 0.0};
    }

    StateDerivative state_derivative (const VehicleState &state, double delta, const VehicleParams &params)
    {
        const auto d = state_derivative (state.to_array (), delta, params);
        return {d[0], d[1], d[2], d[3], d[4]};
    }

    std::array<double, 5> state_derivative (const std::array<double, 5> &s, double delta, const VehicleParams &params)
    {
        const VehicleState state{s[0], s[1], s[2], s[3], s[4]};
        const WheelForces f = tire_forces (slip_angles (state, params, delta), params);

        const double c = std::cos (state.theta);
        const double sn = std::sin (state.theta);
        const double cd = std::cos (delta);
        const double sd = std::sin (delta);
        const double vx = params.v_x;

        return {
            vx * c - state.v_y * sn,
            vx * sn + state.v_y * c,
            state.r,
            f.lateral_front / params.mass * cd - f.longitudinal_front / params.mass * sd + f.lateral_rear / params.mass -
                vx * state.r,
            params.l_front / params.yaw_inertia * (f.lateral_front * cd - f.longitudinal_front * sd) -
                params.l_rear / params.yaw_inertia * f.lateral_rear,
        };
    }

    double steer_toward (const VehicleState &state, const Point2 &target, const VehicleParams &params)
    {
        const double bearing = std::atan2 (target.y - state.y, target.x - state.x);
        const double err = wrap_angle (bearing - state.theta);
        return std::clamp (params.steer_gain * err, -params.delta_max, params.delta_max);
    }

} // namespace dsbp::dynamics
