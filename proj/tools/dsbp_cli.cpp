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

// dsbp: command-line front end.
//
// Exit codes: 0 success, 1 planning or verification failure, 2 input error,
// 3 output I/O error.

#include "dsbp/integrator_bench.hpp"
#include "dsbp/scenario.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

namespace
{
    namespace fs = std::filesystem;
    using namespace dsbp;

    constexpr int kOk = 0;
    constexpr int kPlanFailure = 1;
    constexpr int kInputError = 2;
    constexpr int kOutputError = 3;

    struct Common
    {
        std::string scenario;
        std::optional<std::uint64_t> seed;
        std::string out;
        std::optional<std::string> format;
    };

    scenario::Scenario load (const Common &c)
    {
        scenario::Scenario sc = scenario::load_scenario (c.scenario);
        if (c.seed)
            sc.seed = *c.seed;
        return sc;
    }

    scenario::OutputFormat format_of (const Common &c, const scenario::Scenario &sc)
    {
        return c.format ? scenario::parse_output_format (*c.format) : sc.output.format;
    }

    void print_summary (const scenario::RunReport &rep)
    {
        std::printf ("scenario %s seed %llu\n", rep.scenario.c_str (), static_cast<unsigned long long> (rep.seed));
        for (const auto &v : rep.vehicles)
        {
            if (v.timed)
                std::printf ("  %-10s path %7.2f m  arrival %6.2f s  irrt_iter %zu  tree %zu\n", v.id.c_str (),
                             v.path_length, v.arrival_time, v.irrt_iterations, v.tree_size);
            else
                std::printf ("  %-10s FAILED: %s\n", v.id.c_str (), v.failure.c_str ());
        }
        std::printf ("maneuver time %.3f s, verify %s (min pair margin %.3f m, min clearance %.3f m)\n",
                     rep.maneuver_time, rep.verify_passed ? "passed" : "FAILED", rep.min_pair_margin,
                     rep.min_static_clearance);
        std::printf ("wall time %.3f s\n", rep.wall_time);
    }

    int cmd_run (const Common &c)
    {
        const auto sc = load (c);
        const auto res = scenario::run_scenario (sc);
        scenario::write_run_artifacts (sc, res, c.out, format_of (c, sc));
        print_summary (res.report);
        return res.report.success () ? kOk : kPlanFailure;
    }

    int cmd_plan (const Common &c)
    {
        const auto sc = load (c);
        const auto res = scenario::plan_scenario (sc);
        scenario::write_plan_artifacts (sc, res, c.out, format_of (c, sc));
        bool ok = true;
        for (std::size_t i = 0; i < res.ordered.size (); ++i)
        {
            const auto &r = res.results[i];
            ok = ok && r.success ();
            std::printf ("  %-10s %s  iterations %zu  tree %zu  length %.2f m\n", res.ordered[i].id.c_str (),
                         r.success () ? "ok    " : "FAILED", r.iterations, r.tree.size (),
                         r.path ? r.path->total_length () : 0.0);
        }
        return ok ? kOk : kPlanFailure;
    }

    int cmd_time (const Common &c, const std::string &paths_dir)
    {
        const auto sc = load (c);
        const auto ordered = coordination::order_by_priority (sc.vehicles);
        std::vector<irrt::GeometricPath> paths;
        for (const auto &t : ordered)
        {
            const fs::path p = fs::path (paths_dir) / ("vehicle_" + t.id + "_path.csv");
            std::ifstream in (p);
            if (!in)
                throw std::invalid_argument (p.string () + ": cannot open path file");
            try
            {
                paths.push_back (scenario::read_path_csv (in));
            }
            catch (const std::invalid_argument &e)
            {
                throw std::invalid_argument (p.string () + ": " + e.what ());
            }
        }
        const auto res = scenario::time_scenario (sc, std::move (paths));
        scenario::write_run_artifacts (sc, res, c.out, format_of (c, sc));
        print_summary (res.report);
        return res.report.success () ? kOk : kPlanFailure;
    }

    int cmd_bench_integrators (const std::string &out)
    {
        const auto steps = integrators::default_step_sizes ();
        const auto rows = integrators::bench_integrators (dynamics::VehicleParams{}, steps);
        if (out.empty ())
        {
            integrators::write_bench_csv (std::cout, rows);
        }
        else
        {
            std::ofstream f (out, std::ios::binary);
            integrators::write_bench_csv (f, rows);
            f.close ();
            if (!f)
                throw scenario::ArtifactError (out + ": write failed");
        }
        for (auto kind : integrators::kAllIntegrators)
        {
            const auto order = integrators::fit_convergence_order (rows, kind);
            std::fprintf (stderr, "%-14s fitted order %s\n", std::string (integrators::to_string (kind)).c_str (),
                          order ? std::to_string (*order).c_str () : "n/a");
        }
        return kOk;
    }

    int cmd_bench_rrt (const std::vector<std::string> &files, std::size_t seeds, std::uint64_t base,
                       const std::string &out)
    {
        std::vector<scenario::Scenario> scs;
        for (const auto &f : files)
            scs.push_back (scenario::load_scenario (f));
        const auto runs = scenario::bench_rrt_vs_irrt (scs, seeds, base);
        const auto rows = scenario::summarize (runs);
        if (out.empty ())
        {
            scenario::write_planner_bench_csv (std::cout, rows);
        }
        else
        {
            std::ofstream f (out, std::ios::binary);
            scenario::write_planner_bench_csv (f, rows);
            f.close ();
            if (!f)
                throw scenario::ArtifactError (out + ": write failed");
        }
        return kOk;
    }
} // namespace

int main (int argc, char **argv)
{
    CLI::App app{"Multi-vehicle decoupled motion planner"};
    app.require_subcommand (1);

    Common common;
    auto add_common = [&] (CLI::App *sub, bool need_out) {
        sub->add_option ("--scenario", common.scenario, "Scenario file (.scn)")->required ()->check (CLI::ExistingFile);
        sub->add_option ("--seed", common.seed, "Override the scenario seed");
        auto *o = sub->add_option ("--out", common.out, "Output directory");
        if (need_out)
            o->required ();
        sub->add_option ("--format", common.format, "Artifact format")
            ->check (CLI::IsMember ({"csv", "svg", "both"}));
    };

    auto *plan = app.add_subcommand ("plan", "Geometric path search only");
    add_common (plan, true);

    std::string paths_dir;
    auto *time = app.add_subcommand ("time", "Velocity tuning over existing paths");
    add_common (time, true);
    time->add_option ("--paths", paths_dir, "Directory with vehicle_<id>_path.csv files")
        ->required ()
        ->check (CLI::ExistingDirectory);

    auto *run = app.add_subcommand ("run", "Full pipeline with verification");
    add_common (run, true);

    std::string bench_out;
    auto *bi = app.add_subcommand ("bench-integrators", "Integrator accuracy and stability sweep");
    bi->add_option ("--out", bench_out, "CSV file (stdout if omitted)");

    std::vector<std::string> bench_files;
    std::size_t bench_seeds = 20;
    std::uint64_t bench_seed = 0;
    auto *br = app.add_subcommand ("bench-rrt", "IRRT versus baseline RRT");
    br->add_option ("--scenario", bench_files, "Scenario files (repeatable)")->required ()->check (CLI::ExistingFile);
    br->add_option ("--seeds", bench_seeds, "Seeds per map (>= 5)");
    br->add_option ("--seed", bench_seed, "Base seed");
    br->add_option ("--out", bench_out, "CSV file (stdout if omitted)");

    try
    {
        app.parse (argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit (e);
        return code == 0 ? kOk : kInputError;
    }

    try
    {
        if (*plan)
            return cmd_plan (common);
        if (*time)
            return cmd_time (common, paths_dir);
        if (*run)
            return cmd_run (common);
        if (*bi)
            return cmd_bench_integrators (bench_out);
        if (*br)
            return cmd_bench_rrt (bench_files, bench_seeds, bench_seed, bench_out);
    }
    catch (const scenario::ScenarioError &e)
    {
        std::cerr << "input error: " << e.what () << '\n';
        return kInputError;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "input error: " << e.what () << '\n';
        return kInputError;
    }
    catch (const scenario::ArtifactError &e)
    {
        std::cerr << "output error: " << e.what () << '\n';
        return kOutputError;
    }
    return kInputError;
}
