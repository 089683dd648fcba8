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
 * @brief Scenario files, end-to-end runs, artifact emission and planner benchmarks.
 *
 * Scenario files (`.scn`) are JSON documents with a strict schema: unknown
 * keys are rejected and every physical quantity carries its unit in the key
 * name. See scenarios/README.md for the schema.
 */

#include "dsbp/coordination.hpp"
#include "dsbp/irrt.hpp"
#include "dsbp/timing.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dsbp::scenario
{
    enum class OutputFormat
    {
        Csv,
        Svg,
        Both,
    };

    std::string_view to_string (OutputFormat f);
    /// Throws std::invalid_argument on anything but csv, svg or both.
    OutputFormat parse_output_format (std::string_view s);

    struct OutputOptions
    {
        OutputFormat format{OutputFormat::Both};
        double sample_period{0.01}; ///< s, trajectory CSV row spacing

        friend bool operator== (const OutputOptions &, const OutputOptions &) = default;
    };

    struct Scenario
    {
        std::string name;
        std::string description; ///< free text, optional
        geometry::ObstacleMap map;
        std::vector<coordination::VehicleTask> vehicles;
        irrt::IrrtConfig irrt;
        timing::VtConfig vt;
        coordination::DsbpOptions coordination;
        std::uint64_t seed{0};
        OutputOptions output;

        friend bool operator== (const Scenario &, const Scenario &) = default;

        /// Throws std::invalid_argument naming the violated invariant.
        void validate () const;
    };

    class ScenarioError : public std::runtime_error
    {
      public:
        enum class Kind
        {
            Parse,     ///< not well-formed JSON
            Schema,    ///< missing, unknown or mistyped key
            Invariant, ///< well-typed but invalid value
        };

        ScenarioError (Kind kind, const std::string &what) : std::runtime_error (what), kind_ (kind) {}
        Kind kind () const { return kind_; }

      private:
        Kind kind_;
    };

    /// Output directory or file could not be written.
    class ArtifactError : public std::runtime_error
    {
      public:
        using std::runtime_error::runtime_error;
    };

    Scenario parse_scenario (std::string_view text);
    /// Throws ScenarioError; a missing file is a Parse error.
    Scenario load_scenario (const std::filesystem::path &file);
    std::string dump_scenario (const Scenario &sc);
    void save_scenario (const Scenario &sc, const std::filesystem::path &file);

    struct VehicleReport
    {
        std::string id;
        int priority{1};
        bool path_found{false};
        bool timed{false};
        std::size_t irrt_iterations{0};
        std::size_t tree_size{0};
        double path_length{0.0};  ///< m
        double arrival_time{0.0}; ///< s
        std::size_t vt_iterations{0};
        bool t_max_doubled{false};
        std::vector<std::string> obstacle_ids;
        std::string failure;
    };

    struct RunReport
    {
        std::string scenario;
        std::uint64_t seed{0};
        std::vector<VehicleReport> vehicles;
        double maneuver_time{0.0}; ///< s, latest arrival
        bool verify_passed{false};
        double min_pair_distance{0.0};
        double min_pair_margin{0.0};
        double min_static_clearance{0.0};
        std::optional<coordination::Violation> first_violation;
        double wall_time{0.0}; ///< s; printed, never written to files

        bool all_planned () const;
        bool success () const { return all_planned () && verify_passed; }
    };

    struct RunResult
    {
        RunReport report;
        std::vector<coordination::VehicleTask> ordered;
        coordination::DsbpResult plan;
        coordination::VerifyReport verify;
    };

    /// Full pipeline: path search, timing, verification on a 1 ms grid.
    RunResult run_scenario (const Scenario &sc);

    /// Timing and verification only, over paths given per vehicle id in priority order.
    RunResult time_scenario (const Scenario &sc, std::vector<irrt::GeometricPath> paths);

    /// Report JSON without wall time.
    std::string report_json (const RunReport &rep);

    /**
     * @brief Writes everything for a run into @p dir (created if missing).
     *
     * CSV: report.json, vehicle_<id>_{trajectory,path,tree,timing}.csv,
     * vehicle_<id>_st_grid.pgm, distance.csv. SVG: paths.svg, st_<id>.svg,
     * speed.svg, distance.svg. Throws ArtifactError on I/O failure.
     */
    void write_run_artifacts (const Scenario &sc, const RunResult &res, const std::filesystem::path &dir,
                              OutputFormat format);

    struct PathPlanResult
    {
        std::vector<coordination::VehicleTask> ordered;
        std::vector<irrt::PlanResult> results;
    };

    /// Path search only.
    PathPlanResult plan_scenario (const Scenario &sc);

    /// Writes vehicle_<id>_{path,tree}.csv, paths.svg and plan.json. Throws ArtifactError.
    void write_plan_artifacts (const Scenario &sc, const PathPlanResult &res, const std::filesystem::path &dir,
                               OutputFormat format);

    /// Header: x_m,y_m,theta_rad,v_y_mps,r_radps (full precision).
    void write_path_csv (std::ostream &os, const irrt::GeometricPath &path);
    /// Throws std::invalid_argument on a wrong header or malformed row.
    irrt::GeometricPath read_path_csv (std::istream &is);

    /// Header: t_s,x_m,y_m,theta_rad,v_y_mps,r_radps,s_norm; rows every @p period up to @p until.
    void write_trajectory_csv (std::ostream &os, const coordination::PlannedMotion &m, double period, double until);

    // ------------------------------------------------------------ benchmark

    struct PlannerRun
    {
        std::string map;
        std::string algorithm; ///< "IRRT" or "RRT"
        std::uint64_t seed{0};
        bool success{false};
        std::size_t iterations{0};
        std::size_t tree_size{0};
        double wall_time{0.0};
        double path_length{0.0};
        std::optional<irrt::GeometricPath> path;
        double footprint{0.0};
    };

    struct PlannerSummary
    {
        std::string map;
        std::string algorithm;
        std::size_t runs{0};
        double success_rate{0.0};
        double median_iterations{0.0};
        double iqr_iterations{0.0};
        double median_tree_size{0.0};
        double iqr_tree_size{0.0};
        double median_wall_time{0.0};
        double iqr_wall_time{0.0};
    };

    /**
     * @brief IRRT and baseline RRT on the highest-priority vehicle of each
     *        scenario, for seeds mix_seed(base_seed, k), k < @p seeds.
     *        Throws std::invalid_argument for no scenarios or fewer than 5 seeds.
     */
    std::vector<PlannerRun> bench_rrt_vs_irrt (std::span<const Scenario> scenarios, std::size_t seeds,
                                               std::uint64_t base_seed, bool keep_paths = false);

    /// One row per (map, algorithm), in first-seen order.
    std::vector<PlannerSummary> summarize (std::span<const PlannerRun> runs);

    /// Type-7 quantile of @p v (linear interpolation); @p v must be non-empty.
    double quantile (std::vector<double> v, double q);

    /// Header: map,algorithm,runs,success_rate,median_iterations,iqr_iterations,
    /// median_tree_size,iqr_tree_size,median_wall_time_s,iqr_wall_time_s
    void write_planner_bench_csv (std::ostream &os, std::span<const PlannerSummary> rows);

} // namespace dsbp::scenario
