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
 * @brief Fixed-step and adaptive ODE steppers.
 *
 * The steppers are generic over the state dimension and the derivative
 * callback `f(t, y) -> y'`, so they can be validated on scalar test ODEs and
 * then applied to the bicycle model unchanged.
 */

#include "dsbp/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace dsbp::integrators
{
    enum class IntegratorKind
    {
        EulerForward,
        EulerBackward,
        Trapezoidal,
        RK3,
        RK4,
        RK6,
        DormandPrince,
        AdamsBashforth4,
    };

    inline constexpr std::array<IntegratorKind, 8> kAllIntegrators{
        IntegratorKind::EulerForward, IntegratorKind::EulerBackward, IntegratorKind::Trapezoidal,
        IntegratorKind::RK3,          IntegratorKind::RK4,           IntegratorKind::RK6,
        IntegratorKind::DormandPrince, IntegratorKind::AdamsBashforth4,
    };

    std::string_view to_string (IntegratorKind kind);
    std::optional<IntegratorKind> parse_integrator (std::string_view name);

    /// Classical order of accuracy (DormandPrince: order of the propagated solution).
    int nominal_order (IntegratorKind kind);

    template <std::size_t N> using Vec = std::array<double, N>;

    enum class StepStatus
    {
        Ok,
        NotConverged, ///< implicit solve hit its iteration cap
        NonFinite,
    };

    template <std::size_t N> struct StepResult
    {
        Vec<N> state{};
        StepStatus status{StepStatus::Ok};
    };

    struct ImplicitOptions
    {
        double tolerance{1e-10};
        int max_iterations{50};
    };

    namespace detail
    {
        template <std::size_t N> Vec<N> axpy (const Vec<N> &y, double a, const Vec<N> &x)
        {
            Vec<N> out;
            for (std::size_t i = 0; i < N; ++i)
                out[i] = y[i] + a * x[i];
            return out;
        }

        template <std::size_t N> bool all_finite (const Vec<N> &v)
        {
            return std::all_of (v.begin (), v.end (), [] (double x) { return std::isfinite (x); });
        }

        template <std::size_t N> double max_abs (const Vec<N> &v)
        {
            double m = 0.0;
            for (double x : v)
                m = std::max (m, std::abs (x));
            return m;
        }

        /// Explicit Runge-Kutta step for a lower-triangular tableau with S stages.
        template <std::size_t S, std::size_t N, class F>
        Vec<N> explicit_rk (const std::array<std::array<double, S>, S> &a, const std::array<double, S> &b,
                            const std::array<double, S> &c, F &f, double t, const Vec<N> &y, double h,
                            std::array<Vec<N>, S> *stages = nullptr)
        {
            std::array<Vec<N>, S> k{};
            for (std::size_t s = 0; s < S; ++s)
            {
                Vec<N> yi = y;
                for (std::size_t j = 0; j < s; ++j)
                    if (a[s][j] != 0.0)
                        yi = axpy (yi, h * a[s][j], k[j]);
                k[s] = f (t + c[s] * h, yi);
            }
            Vec<N> out = y;
            for (std::size_t s = 0; s < S; ++s)
                if (b[s] != 0.0)
                    out = axpy (out, h * b[s], k[s]);
            if (stages)
                *stages = k;
            return out;
        }

        // Kutta's third-order method.
        inline constexpr std::array<std::array<double, 3>, 3> kRk3A{{{0, 0, 0}, {0.5, 0, 0}, {-1.0, 2.0, 0}}};
        inline constexpr std::array<double, 3> kRk3B{1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0};
        inline constexpr std::array<double, 3> kRk3C{0.0, 0.5, 1.0};

        inline constexpr std::array<std::array<double, 4>, 4> kRk4A{
            {{0, 0, 0, 0}, {0.5, 0, 0, 0}, {0, 0.5, 0, 0}, {0, 0, 1.0, 0}}};
        inline constexpr std::array<double, 4> kRk4B{1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0};
        inline constexpr std::array<double, 4> kRk4C{0.0, 0.5, 0.5, 1.0};

        // Butcher's 7-stage, 6th-order method.
        inline constexpr std::array<std::array<double, 7>, 7> kRk6A{{
            {0, 0, 0, 0, 0, 0, 0},
            {1.0 / 3.0, 0, 0, 0, 0, 0, 0},
            {0, 2.0 / 3.0, 0, 0, 0, 0, 0},
            {1.0 / 12.0, 1.0 / 3.0, -1.0 / 12.0, 0, 0, 0, 0},
            {-1.0 / 16.0, 9.0 / 8.0, -3.0 / 16.0, -3.0 / 8.0, 0, 0, 0},
            {0, 9.0 / 8.0, -3.0 / 8.0, -3.0 / 4.0, 1.0 / 2.0, 0, 0},
            {9.0 / 44.0, -9.0 / 11.0, 63.0 / 44.0, 18.0 / 11.0, 0, -16.0 / 11.0, 0},
        }};
        inline constexpr std::array<double, 7> kRk6B{11.0 / 120.0, 0, 27.0 / 40.0, 27.0 / 40.0,
                                                     -4.0 / 15.0,  -4.0 / 15.0, 11.0 / 120.0};
        inline constexpr std::array<double, 7> kRk6C{0, 1.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0, 0.5, 0.5, 1.0};

        // Dormand-Prince 5(4).
        inline constexpr std::array<std::array<double, 7>, 7> kDpA{{
            {0, 0, 0, 0, 0, 0, 0},
            {1.0 / 5.0, 0, 0, 0, 0, 0, 0},
            {3.0 / 40.0, 9.0 / 40.0, 0, 0, 0, 0, 0},
            {44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0, 0, 0, 0},
            {19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0, 0, 0},
            {9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0, 0},
            {35.0 / 384.0, 0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0},
        }};
        inline constexpr std::array<double, 7> kDpB{35.0 / 384.0,     0, 500.0 / 1113.0, 125.0 / 192.0,
                                                    -2187.0 / 6784.0, 11.0 / 84.0, 0};
        /// b5 - b4*: embedded error weights.
        inline constexpr std::array<double, 7> kDpE{71.0 / 57600.0,      0, -71.0 / 16695.0, 71.0 / 1920.0,
                                                    -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0};
        inline constexpr std::array<double, 7> kDpC{0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0};

        /**
         * Damped fixed-point solve of z = y + h * (w_prev * f(t, y) + w_next * f(t + h, z)).
         * The damping factor halves whenever an update grows.
         */
        template <std::size_t N, class F>
        StepResult<N> implicit_solve (F &f, double t, const Vec<N> &y, double h, double w_prev, double w_next,
                                      const ImplicitOptions &opt)
        {
            const Vec<N> f0 = f (t, y);
            const Vec<N> base = w_prev != 0.0 ? axpy (y, h * w_prev, f0) : y;
            Vec<N> z = axpy (y, h, f0);
            double omega = 1.0;
            double last_update = std::numeric_limits<double>::infinity ();

            for (int it = 0; it < opt.max_iterations; ++it)
            {
                const Vec<N> g = axpy (base, h * w_next, f (t + h, z));
                if (!all_finite (g))
                    return {g, StepStatus::NonFinite};
                Vec<N> next;
                double update = 0.0;
                for (std::size_t i = 0; i < N; ++i)
                {
                    next[i] = (1.0 - omega) * z[i] + omega * g[i];
                    update = std::max (update, std::abs (next[i] - z[i]));
                }
                z = next;
                if (update <= opt.tolerance * std::max (1.0, max_abs (z)))
                    return {z, StepStatus::Ok};
                if (update > last_update && omega > 1.0 / 64.0)
                    omega *= 0.5;
                last_update = update;
            }
            return {z, StepStatus::NotConverged};
        }
    } // namespace detail

    /**
     * @brief One step of the named scheme.
     *
     * @p history holds the derivatives at the three previous grid points, oldest
     * first; only AdamsBashforth4 reads it and requires exactly 3 entries.
     * DormandPrince here is a single fixed-size step of the 5th-order solution.
     */
    template <std::size_t N, class F>
    StepResult<N> step (IntegratorKind kind, F &&f, double t, const Vec<N> &y, double h,
                        std::span<const Vec<N>> history = {}, const ImplicitOptions &implicit = {})
    {
        if (!(h > 0.0))
            throw std::invalid_argument ("step: h must be > 0");

        StepResult<N> out;
        switch (kind)
        {
        case IntegratorKind::EulerForward:
            out.state = detail::axpy (y, h, f (t, y));
            break;
        case IntegratorKind::EulerBackward:
            out = detail::implicit_solve<N> (f, t, y, h, 0.0, 1.0, implicit);
            break;
        case IntegratorKind::Trapezoidal:
            out = detail::implicit_solve<N> (f, t, y, h, 0.5, 0.5, implicit);
            break;
        case IntegratorKind::RK3:
            out.state = detail::explicit_rk (detail::kRk3A, detail::kRk3B, detail::kRk3C, f, t, y, h);
            break;
        case IntegratorKind::RK4:
            out.state = detail::explicit_rk (detail::kRk4A, detail::kRk4B, detail::kRk4C, f, t, y, h);
            break;
        case IntegratorKind::RK6:
            out.state = detail::explicit_rk (detail::kRk6A, detail::kRk6B, detail::kRk6C, f, t, y, h);
            break;
        case IntegratorKind::DormandPrince:
            out.state = detail::explicit_rk (detail::kDpA, detail::kDpB, detail::kDpC, f, t, y, h);
            break;
        case IntegratorKind::AdamsBashforth4: {
            if (history.size () != 3)
                throw std::invalid_argument ("step: AdamsBashforth4 needs 3 prior derivatives");
            const Vec<N> fn = f (t, y);
            Vec<N> next;
            for (std::size_t i = 0; i < N; ++i)
                next[i] = y[i] + h / 24.0 *
                                     (55.0 * fn[i] - 59.0 * history[2][i] + 37.0 * history[1][i] - 9.0 * history[0][i]);
            out.state = next;
            break;
        }
        }
        if (out.status == StepStatus::Ok && !detail::all_finite (out.state))
            out.status = StepStatus::NonFinite;
        return out;
    }

    /// Output of a generic integration on a time grid.
    template <std::size_t N> struct Solution
    {
        std::vector<double> times;
        std::vector<Vec<N>> states;
        bool diverged{false};
        StepStatus failure{StepStatus::Ok}; ///< why integration stopped early, if it did
    };

    /// Grid 0, h, 2h, ..., horizon; the last interval is shortened to land on @p horizon.
    std::vector<double> time_grid (double horizon, double h);

    /**
     * @brief Fixed-step integration over time_grid(horizon, h).
     *
     * AdamsBashforth4 bootstraps its first three steps with RK4 and also uses RK4
     * for a shortened final step, where the 4-step formula's uniform spacing no
     * longer holds. Stops at the first failed step and marks the solution diverged.
     */
    template <std::size_t N, class F>
    Solution<N> integrate_fixed (IntegratorKind kind, F &&f, const Vec<N> &y0, double horizon, double h,
                                 const ImplicitOptions &implicit = {})
    {
        Solution<N> sol;
        sol.times = time_grid (horizon, h);
        sol.states.reserve (sol.times.size ());
        sol.states.push_back (y0);

        std::vector<Vec<N>> derivs; // f at grid points, for AB4
        if (kind == IntegratorKind::AdamsBashforth4)
            derivs.push_back (f (0.0, y0));

        for (std::size_t k = 0; k + 1 < sol.times.size (); ++k)
        {
            const double t = sol.times[k];
            const double dt = sol.times[k + 1] - t;
            const Vec<N> &y = sol.states.back ();

            StepResult<N> r;
            if (kind == IntegratorKind::AdamsBashforth4)
            {
                const bool uniform = std::abs (dt - h) <= 1e-12 * h;
                if (k < 3 || !uniform)
                    r = step<N> (IntegratorKind::RK4, f, t, y, dt);
                else
                {
                    const std::span<const Vec<N>> hist (derivs.data () + (k - 3), 3);
                    r = step<N> (kind, f, t, y, dt, hist);
                }
            }
            else
                r = step<N> (kind, f, t, y, dt, {}, implicit);

            if (r.status != StepStatus::Ok)
            {
                sol.times.resize (sol.states.size ());
                sol.diverged = true;
                sol.failure = r.status;
                return sol;
            }
            sol.states.push_back (r.state);
            if (kind == IntegratorKind::AdamsBashforth4)
                derivs.push_back (f (sol.times[k + 1], r.state));
        }
        return sol;
    }

    struct AdaptiveTolerance
    {
        double abs{1e-9};
        double rel{1e-9};
    };

    /**
     * @brief Adaptive Dormand-Prince 5(4) integration reporting states exactly at @p grid.
     *
     * Steps are truncated at grid points rather than interpolated, so outputs
     * carry the full local accuracy of the controller.
     */
    template <std::size_t N, class F>
    Solution<N> integrate_adaptive (F &&f, const Vec<N> &y0, const std::vector<double> &grid,
                                    const AdaptiveTolerance &tol = {}, std::size_t max_steps = 10'000'000)
    {
        Solution<N> sol;
        sol.times.push_back (grid.front ());
        sol.states.push_back (y0);

        Vec<N> y = y0;
        double t = grid.front ();
        double h = grid.size () > 1 ? grid[1] - grid[0] : 0.0;
        std::size_t steps = 0;

        for (std::size_t g = 1; g < grid.size (); ++g)
        {
            const double target = grid[g];
            while (t < target)
            {
                if (++steps > max_steps)
                {
                    sol.diverged = true;
                    sol.failure = StepStatus::NotConverged;
                    return sol;
                }
                bool last = false;
                double dt = h;
                if (t + dt >= target || target - (t + dt) < 1e-12 * std::max (1.0, std::abs (target)))
                {
                    dt = target - t;
                    last = true;
                }

                std::array<Vec<N>, 7> k;
                const Vec<N> y5 = detail::explicit_rk (detail::kDpA, detail::kDpB, detail::kDpC, f, t, y, dt, &k);
                double err = 0.0;
                for (std::size_t i = 0; i < N; ++i)
                {
                    double e = 0.0;
                    for (std::size_t s = 0; s < 7; ++s)
                        e += detail::kDpE[s] * k[s][i];
                    e *= dt;
                    const double scale = tol.abs + tol.rel * std::max (std::abs (y[i]), std::abs (y5[i]));
                    err = std::max (err, std::abs (e) / scale);
                }
                if (!std::isfinite (err) || !detail::all_finite (y5))
                {
                    sol.diverged = true;
                    sol.failure = StepStatus::NonFinite;
                    return sol;
                }

                const double factor = err == 0.0 ? 5.0 : std::clamp (0.9 * std::pow (err, -0.2), 0.2, 5.0);
                if (err <= 1.0)
                {
                    t = last ? target : t + dt;
                    y = y5;
                    // Grid-truncated steps never grow h.
                    if (!last || factor < 1.0)
                        h = dt * factor;
                }
                else
                {
                    h = dt * factor;
                    if (h < 1e-14 * std::max (1.0, std::abs (t)))
                    {
                        sol.diverged = true;
                        sol.failure = StepStatus::NotConverged;
                        return sol;
                    }
                }
            }
            sol.times.push_back (target);
            sol.states.push_back (y);
        }
        return sol;
    }

    // ------------------------------------------------------------ vehicle API

    using dynamics::StateDerivative;
    using dynamics::VehicleParams;
    using dynamics::VehicleState;

    /// Sampled rollout of the bicycle model.
    struct Trajectory
    {
        std::vector<double> times;
        std::vector<VehicleState> states;
        std::vector<double> steer_angles;
        bool diverged{false}; ///< states stop at the last finite state when set

        std::size_t size () const { return states.size (); }
        const VehicleState &back () const { return states.back (); }
        /// Planar length of the sampled polyline.
        double arc_length () const;
        std::vector<geometry::Point2> positions () const;
    };

    struct VehicleStep
    {
        VehicleState state;
        StepStatus status{StepStatus::Ok};
    };

    /// One step with constant steering over the step.
    VehicleStep step (IntegratorKind kind, const VehicleState &state, double delta, const VehicleParams &params,
                      double h, std::span<const StateDerivative> history = {});

    using SteerSchedule = std::function<double (double)>;

    /**
     * @brief Integrates the bicycle model on time_grid(horizon, h).
     *
     * DormandPrince adapts its internal step to @p tol and reports at the grid.
     * Throws std::invalid_argument unless 0 < h <= horizon.
     */
    Trajectory integrate (IntegratorKind kind, const VehicleState &initial, const SteerSchedule &steer,
                          const VehicleParams &params, double horizon, double h, const AdaptiveTolerance &tol = {});

} // namespace dsbp::integrators
