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

#include "dsbp/scenario.hpp"
#include "support/oracle.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

using namespace dsbp;
using namespace dsbp::scenario;
namespace fs = std::filesystem;

namespace
{
    const fs::path kScenarios = DSBP_SCENARIO_DIR;

    fs::path scratch (const std::string &name)
    {
        const fs::path p = fs::temp_directory_path () / ("dsbp_unit_" + name);
        fs::remove_all (p);
        return p;
    }

    std::string slurp (const fs::path &p)
    {
        std::ifstream in (p, std::ios::binary);
        return {std::istreambuf_iterator<char> (in), std::istreambuf_iterator<char> ()};
    }

    std::vector<std::string> lines (const std::string &s)
    {
        std::vector<std::string> out;
        std::istringstream is (s);
        for (std::string l; std::getline (is, l);)
            out.push_back (l);
        return out;
    }

    irrt::GeometricPath straight (geometry::Point2 a, geometry::Point2 b)
    {
        const double h = std::atan2 (b.y - a.y, b.x - a.x);
        const std::vector<dynamics::VehicleState> s{{a.x, a.y, h, 0, 0}, {b.x, b.y, h, 0, 0}};
        return irrt::GeometricPath::from_states (s);
    }

    ScenarioError::Kind kind_of (const std::string &text)
    {
        try
        {
            parse_scenario (text);
        }
        catch (const ScenarioError &e)
        {
            return e.kind ();
        }
        ADD_FAILURE () << "no error for: " << text;
        return ScenarioError::Kind::Parse;
    }

    const std::string kMinimal = R"({"name": "m", "map": {"bounds": {"min_m": [0, 0], "max_m": [100, 100]}},
        "vehicles": [{"id": "a", "start": {"x_m": 10, "y_m": 10, "heading_rad": 0}, "goal": {"x_m": 90, "y_m": 90}}]})";

    std::string with (const std::string &extra)
    {
        std::string s = kMinimal;
        s.insert (s.rfind ('}'), ", " + extra);
        return s;
    }
} // namespace

TEST (LoadScenario, BundledCross)
{
    const auto sc = load_scenario (kScenarios / "cross.scn");
    EXPECT_EQ (sc.name, "cross");
    EXPECT_EQ (sc.vehicles.size (), 2u);
    EXPECT_TRUE (sc.map.obstacles.empty ());
    EXPECT_EQ (sc.seed, 42u);
}

TEST (LoadScenario, AllBundledScenariosValidate)
{
    for (const char *name : {"cross", "narrow_passage", "obstacle_rich", "overtake"})
        EXPECT_NO_THROW (load_scenario (kScenarios / (std::string (name) + ".scn")).validate ()) << name;
}

TEST (ParseScenario, DefaultsApply)
{
    const auto sc = parse_scenario (kMinimal);
    EXPECT_EQ (sc.irrt, irrt::IrrtConfig{});
    EXPECT_EQ (sc.vt, timing::VtConfig{});
    EXPECT_EQ (sc.vehicles[0].params, dynamics::VehicleParams{});
    EXPECT_EQ (sc.output.format, OutputFormat::Both);
}

TEST (ParseScenario, RhoPrimeOutOfRangeNamesInvariant)
{
    try
    {
        parse_scenario (with (R"("irrt": {"rho_prime": 1.5})"));
        FAIL ();
    }
    catch (const ScenarioError &e)
    {
        EXPECT_EQ (e.kind (), ScenarioError::Kind::Invariant);
        EXPECT_NE (std::string (e.what ()).find ("[0, 1]"), std::string::npos) << e.what ();
    }
}

TEST (ParseScenario, ErrorKinds)
{
    EXPECT_EQ (kind_of ("{\"name\": "), ScenarioError::Kind::Parse);
    EXPECT_EQ (kind_of (with (R"("colour": "red")")), ScenarioError::Kind::Schema);
    EXPECT_EQ (kind_of (with (R"("seed": "x")")), ScenarioError::Kind::Schema);
    EXPECT_EQ (kind_of (with (R"("irrt": {"integrator": "Heun"})")), ScenarioError::Kind::Invariant);
    EXPECT_EQ (kind_of (with (R"("vt": {"k": 1})")), ScenarioError::Kind::Invariant);
    EXPECT_EQ (kind_of (with (R"("output": {"format": "png"})")), ScenarioError::Kind::Invariant);

    std::string bad_id = kMinimal;
    bad_id.replace (bad_id.find ("\"a\""), 3, "\"a b\"");
    EXPECT_EQ (kind_of (bad_id), ScenarioError::Kind::Invariant);
}

TEST (ParseScenario, ParseErrorReportsPosition)
{
    try
    {
        parse_scenario ("{\n  \"name\": \"x\",\n  oops\n}");
        FAIL ();
    }
    catch (const ScenarioError &e)
    {
        EXPECT_NE (std::string (e.what ()).find ("line 3"), std::string::npos) << e.what ();
    }
}

TEST (ParseScenario, PriorityAllOrNone)
{
    const std::string two = R"({"name": "m", "map": {"bounds": {"min_m": [0, 0], "max_m": [100, 100]}},
        "vehicles": [{"id": "a", "priority": 2, "start": {"x_m": 10, "y_m": 10, "heading_rad": 0}, "goal": {"x_m": 90, "y_m": 90}},
                     {"id": "b", "start": {"x_m": 10, "y_m": 90, "heading_rad": 0}, "goal": {"x_m": 90, "y_m": 10}}]})";
    EXPECT_THROW (parse_scenario (two), ScenarioError);
}

TEST (LoadScenario, MissingFileIsParseError)
{
    try
    {
        load_scenario ("/nonexistent/x.scn");
        FAIL ();
    }
    catch (const ScenarioError &e)
    {
        EXPECT_EQ (e.kind (), ScenarioError::Kind::Parse);
    }
}

TEST (SaveScenario, RoundTrip)
{
    for (const char *name : {"cross", "obstacle_rich", "overtake"})
    {
        const auto sc = load_scenario (kScenarios / (std::string (name) + ".scn"));
        EXPECT_EQ (parse_scenario (dump_scenario (sc)), sc) << name;
        const fs::path file = scratch (std::string (name) + ".scn");
        save_scenario (sc, file);
        EXPECT_EQ (load_scenario (file), sc) << name;
        fs::remove (file);
    }
}

TEST (PathCsv, RoundTripAndRejects)
{
    const auto p = straight ({1.25, 2}, {30.125, -7});
    std::ostringstream os;
    write_path_csv (os, p);
    std::istringstream is (os.str ());
    EXPECT_EQ (read_path_csv (is), p);

    std::istringstream bad_header ("x,y\n1,2\n");
    EXPECT_THROW (read_path_csv (bad_header), std::invalid_argument);
    std::istringstream bad_row ("x_m,y_m,theta_rad,v_y_mps,r_radps\n1,2,3\n");
    EXPECT_THROW (read_path_csv (bad_row), std::invalid_argument);
}

TEST (ReportJson, OmitsWallTime)
{
    RunReport rep;
    rep.scenario = "x";
    rep.wall_time = 12.5;
    const std::string j = report_json (rep);
    EXPECT_EQ (j.find ("wall"), std::string::npos);
    EXPECT_EQ (j.find ("12.5"), std::string::npos);
}

TEST (TimeScenario, SingleVehicleSpeedIsConstant)
{
    auto sc = parse_scenario (kMinimal);
    const auto res = time_scenario (sc, {straight ({10, 10}, {90, 90})});
    ASSERT_TRUE (res.report.success ());
    const auto &m = res.plan.motions[0];
    std::ostringstream os;
    write_trajectory_csv (os, m, 0.01, m.arrival_time);
    const auto rows = lines (os.str ());
    ASSERT_EQ (rows[0], "t_s,x_m,y_m,theta_rad,v_y_mps,r_radps,s_norm");
    double px = 0, py = 0, pt = 0;
    for (std::size_t i = 1; i < rows.size (); ++i)
    {
        double t, x, y;
        ASSERT_EQ (std::sscanf (rows[i].c_str (), "%lf,%lf,%lf", &t, &x, &y), 3);
        if (i > 1)
            // 10 significant digits: 5e-9 m per coordinate over a 0.01 s step
            EXPECT_NEAR (std::hypot (x - px, y - py) / (t - pt), 15.0, 1.5e-6) << rows[i];
        px = x, py = y, pt = t;
    }
}

TEST (WriteRunArtifacts, FilesReparseAndPlotMatchesGrid)
{
    const auto sc = load_scenario (kScenarios / "cross.scn");
    const auto res = time_scenario (sc, {straight ({10, 50}, {90, 50}), straight ({50, 10}, {50, 90})});
    ASSERT_TRUE (res.report.success ());
    const fs::path dir = scratch ("artifacts");
    write_run_artifacts (sc, res, dir, OutputFormat::Both);

    for (const char *f : {"report.json", "paths.svg", "speed.svg", "distance.svg", "distance.csv", "st_A.svg", "st_B.svg",
                          "vehicle_A_trajectory.csv", "vehicle_A_path.csv", "vehicle_A_tree.csv",
                          "vehicle_A_timing.csv", "vehicle_B_st_grid.pgm"})
        EXPECT_TRUE (fs::exists (dir / f)) << f;

    std::ifstream path_in (dir / "vehicle_B_path.csv");
    EXPECT_EQ (read_path_csv (path_in), res.plan.motions[1].path);

    const auto timing = lines (slurp (dir / "vehicle_B_timing.csv"));
    EXPECT_EQ (timing[0], "t_s,s");
    EXPECT_EQ (timing.size (), res.plan.motions[1].sigma.knots ().size () + 1);

    const auto dist = lines (slurp (dir / "distance.csv"));
    EXPECT_EQ (dist[0], "t_s,d_A_B_m");
    for (std::size_t i = 1; i < dist.size (); ++i)
        ASSERT_EQ (std::count (dist[i].begin (), dist[i].end (), ','), 1) << dist[i];

    // dark cells of the S-T plot are exactly the blocked grid cells
    const auto &grid = *res.plan.motions[1].st_grid;
    std::set<std::pair<std::size_t, std::size_t>> drawn;
    const std::string svg = slurp (dir / "st_B.svg");
    const std::regex cell (R"re(class="blocked" data-i="(\d+)" data-j="(\d+)")re");
    for (auto it = std::sregex_iterator (svg.begin (), svg.end (), cell); it != std::sregex_iterator (); ++it)
        drawn.emplace (std::stoul ((*it)[1]), std::stoul ((*it)[2]));
    std::set<std::pair<std::size_t, std::size_t>> blocked;
    for (std::size_t i = 0; i < grid.t_cells (); ++i)
        for (std::size_t j = 0; j < grid.s_cells (); ++j)
            if (grid.blocked (i, j))
                blocked.emplace (i, j);
    EXPECT_FALSE (blocked.empty ());
    EXPECT_EQ (drawn, blocked);

    const auto pgm = lines (slurp (dir / "vehicle_B_st_grid.pgm"));
    EXPECT_EQ (pgm[0], "P2");
    EXPECT_EQ (pgm.size (), 3 + grid.s_cells ());
    fs::remove_all (dir);
}

TEST (WriteRunArtifacts, SameInputsGiveIdenticalBytes)
{
    const auto sc = load_scenario (kScenarios / "cross.scn");
    const std::vector<irrt::GeometricPath> paths{straight ({10, 50}, {90, 50}), straight ({50, 10}, {50, 90})};
    const fs::path a = scratch ("det_a"), b = scratch ("det_b");
    write_run_artifacts (sc, time_scenario (sc, paths), a, OutputFormat::Both);
    write_run_artifacts (sc, time_scenario (sc, paths), b, OutputFormat::Both);
    EXPECT_EQ (oracle::hash_tree (a), oracle::hash_tree (b));
    fs::remove_all (a);
    fs::remove_all (b);
}

TEST (WriteRunArtifacts, FormatSelectsFiles)
{
    const auto sc = parse_scenario (kMinimal);
    const auto res = time_scenario (sc, {straight ({10, 10}, {90, 90})});
    const fs::path csv = scratch ("csv_only"), svg = scratch ("svg_only");
    write_run_artifacts (sc, res, csv, OutputFormat::Csv);
    write_run_artifacts (sc, res, svg, OutputFormat::Svg);
    EXPECT_TRUE (fs::exists (csv / "vehicle_a_trajectory.csv"));
    EXPECT_FALSE (fs::exists (csv / "paths.svg"));
    EXPECT_TRUE (fs::exists (svg / "paths.svg"));
    EXPECT_FALSE (fs::exists (svg / "vehicle_a_trajectory.csv"));
    EXPECT_TRUE (fs::exists (svg / "report.json"));
    fs::remove_all (csv);
    fs::remove_all (svg);
}

TEST (WriteRunArtifacts, UnwritableDirectoryThrows)
{
    const auto sc = parse_scenario (kMinimal);
    const auto res = time_scenario (sc, {straight ({10, 10}, {90, 90})});
    const fs::path file = scratch ("a_file");
    std::ofstream (file) << "x";
    EXPECT_THROW (write_run_artifacts (sc, res, file / "sub", OutputFormat::Both), ArtifactError);
    fs::remove (file);
}

TEST (RunScenario, DeterministicReport)
{
    auto sc = load_scenario (kScenarios / "cross.scn");
    sc.irrt.max_iterations = 300;
    const auto a = run_scenario (sc), b = run_scenario (sc);
    EXPECT_EQ (report_json (a.report), report_json (b.report));
}

TEST (Bench, SixCellsAndSingleCandidateEquivalence)
{
    std::vector<Scenario> maps;
    for (const char *name : {"cross", "narrow_passage", "obstacle_rich"})
    {
        auto sc = load_scenario (kScenarios / (std::string (name) + ".scn"));
        sc.irrt.max_iterations = 300;
        sc.irrt.k = 1;
        maps.push_back (sc);
    }
    const auto runs = bench_rrt_vs_irrt (maps, 5, 7);
    const auto rows = summarize (runs);
    ASSERT_EQ (rows.size (), 6u);
    for (const auto &r : rows)
        EXPECT_EQ (r.runs, 5u);

    for (const auto &a : runs)
        if (a.algorithm == "IRRT")
            for (const auto &b : runs)
                if (b.algorithm == "RRT" && b.map == a.map && b.seed == a.seed)
                {
                    EXPECT_EQ (a.tree_size, b.tree_size) << a.map << " " << a.seed;
                    EXPECT_EQ (a.iterations, b.iterations);
                }

    std::ostringstream os;
    write_planner_bench_csv (os, rows);
    EXPECT_EQ (lines (os.str ())[0], "map,algorithm,runs,success_rate,median_iterations,iqr_iterations,"
                                     "median_tree_size,iqr_tree_size,median_wall_time_s,iqr_wall_time_s");
    EXPECT_THROW (bench_rrt_vs_irrt (maps, 4, 7), std::invalid_argument);
}

TEST (Quantile, TypeSeven)
{
    EXPECT_DOUBLE_EQ (quantile ({1, 2, 3, 4}, 0.5), 2.5);
    EXPECT_DOUBLE_EQ (quantile ({4, 1, 3, 2}, 0.25), 1.75);
    EXPECT_DOUBLE_EQ (quantile ({5}, 0.75), 5.0);
    EXPECT_THROW (quantile ({}, 0.5), std::invalid_argument);
}

TEST (OutputFormat, Parse)
{
    EXPECT_EQ (parse_output_format ("csv"), OutputFormat::Csv);
    EXPECT_EQ (to_string (OutputFormat::Svg), "svg");
    EXPECT_THROW (parse_output_format ("pdf"), std::invalid_argument);
}
