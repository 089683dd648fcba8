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

#include <cmath>
#include <stdexcept>

namespace dsbp::integrators
{
    std::string_view to_string (IntegratorKind kind)
    {
        switch (kind)
        {
        case IntegratorKind::EulerForward:
            return "EulerForward";
        case IntegratorKind::EulerBackward:
            return "EulerBackward";
        case IntegratorKind::Trapezoidal:
            return "Trapezoidal";
        case IntegratorKind::RK3:
            return "RK3";
        case IntegratorKind::RK4:
            return "RK4";
        case IntegratorKind::RK6:
            return "RK6";
        case IntegratorKind::DormandPrince:
            return "DormandPrince";
        case IntegratorKind::AdamsBashforth4:
            return "AdamsBashforth4";
        }
        return "?";
    }

    std::optional<IntegratorKind> parse_integrator (std::string_view name)
    {
        for (IntegratorKind k : kAllIntegrators)
            if (to_string (k) == name)
                return k;
        return std::nullopt;
    }

    int nominal_order (IntegratorKind kind)
    {
        switch (kind)
        {
        case IntegratorKind::EulerForward:
        case IntegratorKind::EulerBackward:
            return 1;
        case IntegratorKind::Trapezoidal:
            return 2;
        case IntegratorKind::RK3:
            return 3;
        case IntegratorKind::RK4:
        case IntegratorKind::AdamsBashforth4:
            return 4;
        case IntegratorKind::DormandPrince:
            return 5;
        case IntegratorKind::RK6:
            return 6;
        }
        return 0;
    }

    std::vector<double> time_grid (double horizon, double h)
    {
        if (!(h > 0.0) || !(horizon > 0.0))
            throw std::invalid_argument ("time_grid: horizon and h must be > 0");
        if (h > horizon * (1.0 + 1e-12))
            throw std::invalid_argument ("time_grid: h must not exceed the horizon");

        const auto n = static_cast<std::size_t> (std::ceil (horizon / h * (1.0 - 1e-12)));
        std::vector<double> grid;
        grid.reserve (n + 1);
        for (std::size_t k = 0; k < n; ++k)
            grid.push_back (static_cast<double> (k) * h);
        grid.push_back (horizon);
        return grid;
    }

    double Trajectory::arc_length () const
    {
        double len = 0.0;
        for (std::size_t i = 1; i < states.size (); ++i)
            len += geometry::distance (states[i - 1].position (), states[i].position ());
        return len;
    }

    std::vector<geometry::Point2> Trajectory::positions () const
    {
        std::vector<geometry::Point2> out;
        out.reserve (states.size ());
        for (const auto &s : states)
            out.push_back (s.position ());
        return out;
    }

    VehicleStep step (IntegratorKind kind, const VehicleState &state, double delta, const VehicleParams &params,
                      double h, std::span<const StateDerivative> history)
    {
        auto f = [&] (double, const Vec<5> &y) { return dynamics::state_derivative (y, delta, params); };

        std::array<Vec<5>, 3> hist{};
        std::span<const Vec<5>> hist_view;
        if (!history.empty ())
        {
            if (history.size () != 3)
                throw std::invalid_argument ("step: history must hold exactly 3 derivatives");
            for (std::size_t i = 0; i < 3; ++i)
                hist[i] = history[i].to_array ();
            hist_view = hist;
        }

        const auto r = step<5> (kind, f, 0.0, state.to_array (), h, hist_view);
        return {VehicleState::from_array (r.state), r.status};
    }

    Trajectory integrate (IntegratorKind kind, const VehicleState &initial, const SteerSchedule &steer,
                          const VehicleParams &params, double horizon, double h, const AdaptiveTolerance &tol)
    {
        if (!(horizon > 0.0) || !(h > 0.0) || h > horizon * (1.0 + 1e-12))
            throw std::invalid_argument ("integrate: need 0 < h <= horizon");
        params.validate ();

        auto f = [&] (double t, const Vec<5> &y) { return dynamics::state_derivative (y, steer (t), params); };

        const Solution<5> sol = kind == IntegratorKind::DormandPrince
                                    ? integrate_adaptive<5> (f, initial.to_array (), time_grid (horizon, h), tol)
                                    : integrate_fixed<5> (kind, f, initial.to_array (), horizon, h);

        Trajectory traj;
        traj.diverged = sol.diverged;
        traj.times = sol.times;
        traj.states.reserve (sol.states.size ());
        traj.steer_angles.reserve (sol.states.size ());
        for (std::size_t i = 0; i < sol.states.size (); ++i)
        {
            traj.states.push_back (VehicleState::from_array (sol.states[i]));
            traj.steer_angles.push_back (steer (sol.times[i]));
        }
        return traj;
    }

} // namespace dsbp::integrators
