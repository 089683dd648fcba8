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

#include "format.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace dsbp::integrators
{
    namespace
    {
        struct Reference
        {
            Vec<5> range{};
            double max_abs_r{0.0};
        };

        Reference dense_reference (const dynamics::VehicleParams &params, const BenchSettings &s)
        {
            auto f = [&] (double, const Vec<5> &y) { return dynamics::state_derivative (y, s.steer, params); };
            const double h = std::min (1e-3, s.horizon);
            const auto sol = integrate_adaptive<5> (f, Vec<5>{}, time_grid (s.horizon, h),
                                                    {s.reference_tolerance, s.reference_tolerance});
            Reference ref;
            Vec<5> lo, hi;
            lo.fill (std::numeric_limits<double>::infinity ());
            hi.fill (-std::numeric_limits<double>::infinity ());
            for (const auto &y : sol.states)
            {
                for (std::size_t i = 0; i < 5; ++i)
                {
                    lo[i] = std::min (lo[i], y[i]);
                    hi[i] = std::max (hi[i], y[i]);
                }
                ref.max_abs_r = std::max (ref.max_abs_r, std::abs (y[4]));
            }
            for (std::size_t i = 0; i < 5; ++i)
                ref.range[i] = hi[i] - lo[i] > 0.0 ? hi[i] - lo[i] : 1.0;
            return ref;
        }

        BenchRow run_cell (const dynamics::VehicleParams &params, IntegratorKind kind, double h,
                           const BenchSettings &s, const Reference &dense)
        {
            auto f = [&] (double, const Vec<5> &y) { return dynamics::state_derivative (y, s.steer, params); };
            const auto grid = time_grid (s.horizon, h);
            const AdaptiveTolerance tight{s.reference_tolerance, s.reference_tolerance};

            const auto t0 = std::chrono::steady_clock::now ();
            const Solution<5> sol = kind == IntegratorKind::DormandPrince
                                        ? integrate_adaptive<5> (f, Vec<5>{}, grid, tight)
                                        : integrate_fixed<5> (kind, f, Vec<5>{}, s.horizon, h);
            const auto t1 = std::chrono::steady_clock::now ();

            BenchRow row;
            row.method = kind;
            row.step_size = h;
            row.wall_time_s = std::chrono::duration<double> (t1 - t0).count ();

            for (const auto &y : sol.states)
                row.max_abs_yaw_rate = std::max (row.max_abs_yaw_rate, std::abs (y[4]));

            if (sol.diverged)
            {
                row.stable = false;
                row.max_error = std::numeric_limits<double>::infinity ();
                return row;
            }
            row.stable = row.max_abs_yaw_rate <= s.stability_factor * dense.max_abs_r;

            const auto ref = integrate_adaptive<5> (f, Vec<5>{}, grid, tight);
            double err = 0.0;
            for (std::size_t k = 0; k < sol.states.size (); ++k)
                for (std::size_t i = 0; i < 5; ++i)
                    err = std::max (err, std::abs (sol.states[k][i] - ref.states[k][i]) / dense.range[i]);
            row.max_error = std::isfinite (err) ? err : std::numeric_limits<double>::infinity ();
            return row;
        }
    } // namespace

    std::vector<double> default_step_sizes () { return {0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001}; }

    std::vector<BenchRow> bench_integrators (const dynamics::VehicleParams &params, std::span<const double> step_sizes,
                                             const BenchSettings &settings, std::span<const IntegratorKind> methods)
    {
        if (step_sizes.empty ())
            throw std::invalid_argument ("bench_integrators: step list must not be empty");
        params.validate ();

        const Reference dense = dense_reference (params, settings);
        std::vector<BenchRow> rows;
        rows.reserve (methods.size () * step_sizes.size ());
        for (IntegratorKind kind : methods)
            for (double h : step_sizes)
                rows.push_back (run_cell (params, kind, h, settings, dense));
        return rows;
    }

    std::optional<double> fit_convergence_order (std::span<const BenchRow> rows, IntegratorKind method,
                                                 double error_floor)
    {
        std::vector<std::pair<double, double>> pts;
        for (const auto &r : rows)
            if (r.method == method && r.stable && std::isfinite (r.max_error) && r.max_error > error_floor)
                pts.emplace_back (std::log (r.step_size), std::log (r.max_error));
        if (pts.size () < 2)
            return std::nullopt;

        double mx = 0.0, my = 0.0;
        for (const auto &[x, y] : pts)
        {
            mx += x;
            my += y;
        }
        mx /= static_cast<double> (pts.size ());
        my /= static_cast<double> (pts.size ());
        double sxy = 0.0, sxx = 0.0;
        for (const auto &[x, y] : pts)
        {
            sxy += (x - mx) * (y - my);
            sxx += (x - mx) * (x - mx);
        }
        if (sxx == 0.0)
            return std::nullopt;
        return sxy / sxx;
    }

    std::optional<double> first_unstable_step (const dynamics::VehicleParams &params, IntegratorKind method,
                                               std::span<const double> step_sizes, const BenchSettings &settings)
    {
        std::vector<double> sorted (step_sizes.begin (), step_sizes.end ());
        std::sort (sorted.begin (), sorted.end ());
        const IntegratorKind one[] = {method};
        for (const auto &row : bench_integrators (params, sorted, settings, one))
            if (!row.stable)
                return row.step_size;
        return std::nullopt;
    }

    void write_bench_csv (std::ostream &os, std::span<const BenchRow> rows)
    {
        os << "method,step_size,max_error,wall_time_s,stable\n";
        for (const auto &r : rows)
            os << to_string (r.method) << ',' << io::num (r.step_size) << ',' << io::num (r.max_error) << ','
               << io::num (r.wall_time_s) << ',' << (r.stable ? "true" : "false") << '\n';
    }

} // namespace dsbp::integrators
