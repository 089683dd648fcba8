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

#include "dsbp/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace dsbp::scenario
{
    using json = nlohmann::ordered_json;
    using coordination::VehicleTask;
    using geometry::Obstacle;
    using geometry::ObstacleMap;
    using geometry::Point2;

    std::string_view to_string (OutputFormat f)
    {
        switch (f)
        {
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Svg: return "svg";
        case OutputFormat::Both: return "both";
        }
        return "both";
    }

    OutputFormat parse_output_format (std::string_view s)
    {
        if (s == "csv")
            return OutputFormat::Csv;
        if (s == "svg")
            return OutputFormat::Svg;
        if (s == "both")
            return OutputFormat::Both;
        throw std::invalid_argument ("output format must be csv, svg or both");
    }

    // ------------------------------------------------------------ validation

    void Scenario::validate () const
    {
        if (name.empty ())
            throw std::invalid_argument ("name must not be empty");
        map.validate ();
        irrt.validate ();
        vt.validate ();
        if (!(coordination.t_max_factor >= 1.0 && std::isfinite (coordination.t_max_factor)))
            throw std::invalid_argument ("coordination: t_max_factor must be >= 1");
        if (coordination.grid_t_cells < 2 || coordination.grid_s_cells < 2)
            throw std::invalid_argument ("coordination: grid cells must be >= 2 in each dimension");
        if (!(output.sample_period > 0.0 && std::isfinite (output.sample_period)))
            throw std::invalid_argument ("output: sample_period_s must be > 0");
        if (vehicles.empty ())
            throw std::invalid_argument ("vehicles: at least one vehicle is required");

        static const std::regex id_re ("[A-Za-z0-9_-]{1,64}");
        for (const auto &v : vehicles)
        {
            const std::string who = "vehicle '" + v.id + "': ";
            if (!std::regex_match (v.id, id_re))
                throw std::invalid_argument (who + "id must match [A-Za-z0-9_-]{1,64}");
            try
            {
                v.params.validate ();
            }
            catch (const std::invalid_argument &e)
            {
                throw std::invalid_argument (who + e.what ());
            }
            if (!v.start.finite () || !v.goal.finite () || !std::isfinite (v.start_heading))
                throw std::invalid_argument (who + "start and goal must be finite");
            const Point2 s[] = {v.start};
            if (geometry::swept_path_collides (s, v.params.footprint_radius, map))
                throw std::invalid_argument (who + "start footprint collides with the map");
            const auto &b = map.bounds;
            if (v.goal.x < b.min.x || v.goal.x > b.max.x || v.goal.y < b.min.y || v.goal.y > b.max.y)
                throw std::invalid_argument (who + "goal lies outside the map bounds");
        }
        (void) coordination::order_by_priority (vehicles);
        for (std::size_t i = 0; i < vehicles.size (); ++i)
            for (std::size_t j = i + 1; j < vehicles.size (); ++j)
                if (geometry::distance (vehicles[i].start, vehicles[j].start) <=
                    vehicles[i].params.footprint_radius + vehicles[j].params.footprint_radius)
                    throw std::invalid_argument ("vehicles '" + vehicles[i].id + "' and '" + vehicles[j].id +
                                                 "': start footprints overlap");
    }

    // --------------------------------------------------------------- parsing

    namespace
    {
        [[noreturn]] void schema (const std::string &msg) { throw ScenarioError (ScenarioError::Kind::Schema, msg); }

        /// Strict object reader: every key must be consumed before finish().
        class Obj
        {
          public:
            Obj (const json &j, std::string where) : j_ (j), where_ (std::move (where))
            {
                if (!j_.is_object ())
                    schema ((where_.empty () ? std::string ("document") : where_) + ": expected an object");
            }

            std::string path (const std::string &k) const { return where_.empty () ? k : where_ + "." + k; }

            bool has (const std::string &k)
            {
                seen_.insert (k);
                return j_.contains (k);
            }

            const json &at (const std::string &k)
            {
                if (!has (k))
                    schema (path (k) + ": missing required key");
                return j_.at (k);
            }

            double num (const std::string &k)
            {
                const json &v = at (k);
                if (!v.is_number ())
                    schema (path (k) + ": expected a number");
                return v.get<double> ();
            }
            double num (const std::string &k, double def) { return has (k) ? num (k) : def; }

            std::uint64_t u64 (const std::string &k)
            {
                const json &v = at (k);
                if (!v.is_number_unsigned ())
                    schema (path (k) + ": expected a non-negative integer");
                return v.get<std::uint64_t> ();
            }
            std::uint64_t u64 (const std::string &k, std::uint64_t def) { return has (k) ? u64 (k) : def; }

            int integer (const std::string &k)
            {
                const json &v = at (k);
                if (!v.is_number_integer ())
                    schema (path (k) + ": expected an integer");
                const auto x = v.get<std::int64_t> ();
                if (x < std::numeric_limits<int>::min () || x > std::numeric_limits<int>::max ())
                    schema (path (k) + ": integer out of range");
                return static_cast<int> (x);
            }

            std::string str (const std::string &k)
            {
                const json &v = at (k);
                if (!v.is_string ())
                    schema (path (k) + ": expected a string");
                return v.get<std::string> ();
            }

            Point2 point (const std::string &k) { return as_point (at (k), path (k)); }

            static Point2 as_point (const json &v, const std::string &where)
            {
                if (!v.is_array () || v.size () != 2 || !v[0].is_number () || !v[1].is_number ())
                    schema (where + ": expected [x, y]");
                return {v[0].get<double> (), v[1].get<double> ()};
            }

            const json &array (const std::string &k)
            {
                const json &v = at (k);
                if (!v.is_array ())
                    schema (path (k) + ": expected an array");
                return v;
            }

            void finish () const
            {
                for (auto it = j_.begin (); it != j_.end (); ++it)
                    if (!seen_.count (it.key ()))
                        schema (path (it.key ()) + ": unknown key");
            }

          private:
            const json &j_;
            std::string where_;
            std::set<std::string> seen_;
        };

        template <class F>
        auto invariant (const std::string &where, F &&f)
        {
            try
            {
                return f ();
            }
            catch (const std::invalid_argument &e)
            {
                throw ScenarioError (ScenarioError::Kind::Invariant, where + ": " + e.what ());
            }
        }

        Obstacle read_obstacle (const json &j, const std::string &where)
        {
            Obj o (j, where);
            const std::string type = o.str ("type");
            Obstacle out = Obstacle::circle ({0.0, 0.0}, 1.0);
            if (type == "rectangle")
            {
                const Point2 lo = o.point ("min_m");
                const Point2 hi = o.point ("max_m");
                out = invariant (where, [&] { return Obstacle::rectangle (lo, hi); });
            }
            else if (type == "circle")
            {
                const Point2 c = o.point ("center_m");
                const double r = o.num ("radius_m");
                out = invariant (where, [&] { return Obstacle::circle (c, r); });
            }
            else if (type == "polygon")
            {
                std::vector<Point2> vs;
                const json &arr = o.array ("vertices_m");
                for (std::size_t i = 0; i < arr.size (); ++i)
                    vs.push_back (Obj::as_point (arr[i], o.path ("vertices_m") + "[" + std::to_string (i) + "]"));
                out = invariant (where, [&] { return Obstacle::polygon (std::move (vs)); });
            }
            else
            {
                schema (o.path ("type") + ": expected rectangle, circle or polygon");
            }
            o.finish ();
            return out;
        }

        ObstacleMap read_map (const json &j)
        {
            Obj o (j, "map");
            ObstacleMap map;
            Obj b (o.at ("bounds"), "map.bounds");
            map.bounds = {b.point ("min_m"), b.point ("max_m")};
            b.finish ();
            if (o.has ("obstacles"))
            {
                const json &arr = o.array ("obstacles");
                for (std::size_t i = 0; i < arr.size (); ++i)
                    map.obstacles.push_back (read_obstacle (arr[i], "map.obstacles[" + std::to_string (i) + "]"));
            }
            o.finish ();
            return map;
        }

        dynamics::VehicleParams read_params (const json &j, const std::string &where)
        {
            Obj o (j, where);
            dynamics::VehicleParams p;
            p.mass = o.num ("mass_kg", p.mass);
            p.yaw_inertia = o.num ("yaw_inertia_kgm2", p.yaw_inertia);
            p.l_front = o.num ("l_front_m", p.l_front);
            p.l_rear = o.num ("l_rear_m", p.l_rear);
            p.c_alpha_front = o.num ("c_alpha_front_npr", p.c_alpha_front);
            p.c_alpha_rear = o.num ("c_alpha_rear_npr", p.c_alpha_rear);
            p.v_x = o.num ("v_x_mps", p.v_x);
            p.delta_max = o.num ("delta_max_rad", p.delta_max);
            p.footprint_radius = o.num ("footprint_radius_m", p.footprint_radius);
            p.steer_gain = o.num ("steer_gain", p.steer_gain);
            o.finish ();
            return p;
        }

        std::vector<VehicleTask> read_vehicles (const json &arr)
        {
            std::vector<VehicleTask> out;
            std::size_t explicit_ranks = 0;
            for (std::size_t i = 0; i < arr.size (); ++i)
            {
                const std::string where = "vehicles[" + std::to_string (i) + "]";
                Obj o (arr[i], where);
                VehicleTask t;
                t.id = o.str ("id");
                if (o.has ("priority"))
                {
                    t.priority = o.integer ("priority");
                    ++explicit_ranks;
                }
                else
                {
                    t.priority = static_cast<int> (i) + 1;
                }
                Obj s (o.at ("start"), where + ".start");
                t.start = {s.num ("x_m"), s.num ("y_m")};
                t.start_heading = s.num ("heading_rad");
                s.finish ();
                Obj g (o.at ("goal"), where + ".goal");
                t.goal = {g.num ("x_m"), g.num ("y_m")};
                g.finish ();
                if (o.has ("params"))
                    t.params = read_params (o.at ("params"), where + ".params");
                o.finish ();
                out.push_back (std::move (t));
            }
            if (explicit_ranks != 0 && explicit_ranks != out.size ())
                schema ("vehicles: priority must be given for all vehicles or none");
            return out;
        }

        irrt::IrrtConfig read_irrt (const json &j)
        {
            Obj o (j, "irrt");
            irrt::IrrtConfig c;
            c.k = o.u64 ("k", c.k);
            c.rho_prime = o.num ("rho_prime", c.rho_prime);
            c.terminal_half_width = o.num ("terminal_half_width_m", c.terminal_half_width);
            c.horizon = o.num ("horizon_s", c.horizon);
            c.step = o.num ("step_s", c.step);
            if (o.has ("integrator"))
            {
                const std::string name = o.str ("integrator");
                const auto kind = integrators::parse_integrator (name);
                if (!kind)
                    throw ScenarioError (ScenarioError::Kind::Invariant, "irrt.integrator: unknown integrator '" +
                                                                             name + "'");
                c.integrator = *kind;
            }
            c.max_iterations = o.u64 ("max_iterations", c.max_iterations);
            o.finish ();
            return c;
        }

        timing::VtConfig read_vt (const json &j)
        {
            Obj o (j, "vt");
            timing::VtConfig c;
            c.k = o.u64 ("k", c.k);
            c.v_min = o.num ("v_min", c.v_min);
            c.v_max = o.num ("v_max", c.v_max);
            c.dt_step = o.num ("dt_step", c.dt_step);
            c.max_iterations = o.u64 ("max_iterations", c.max_iterations);
            o.finish ();
            return c;
        }

        coordination::DsbpOptions read_coordination (const json &j)
        {
            Obj o (j, "coordination");
            coordination::DsbpOptions c;
            c.t_max_factor = o.num ("t_max_factor", c.t_max_factor);
            c.grid_t_cells = o.u64 ("grid_t_cells", c.grid_t_cells);
            c.grid_s_cells = o.u64 ("grid_s_cells", c.grid_s_cells);
            if (o.has ("parallel_paths"))
            {
                const json &v = o.at ("parallel_paths");
                if (!v.is_boolean ())
                    schema ("coordination.parallel_paths: expected a boolean");
                c.parallel_paths = v.get<bool> ();
            }
            o.finish ();
            return c;
        }

        OutputOptions read_output (const json &j)
        {
            Obj o (j, "output");
            OutputOptions c;
            if (o.has ("format"))
            {
                const std::string f = o.str ("format");
                c.format = invariant ("output.format", [&] { return parse_output_format (f); });
            }
            c.sample_period = o.num ("sample_period_s", c.sample_period);
            o.finish ();
            return c;
        }

        std::pair<std::size_t, std::size_t> line_col (std::string_view text, std::size_t byte)
        {
            std::size_t line = 1, col = 1;
            for (std::size_t i = 0; i + 1 < byte && i < text.size (); ++i)
            {
                if (text[i] == '\n')
                {
                    ++line;
                    col = 1;
                }
                else
                {
                    ++col;
                }
            }
            return {line, col};
        }
    } // namespace

    Scenario parse_scenario (std::string_view text)
    {
        json doc;
        try
        {
            doc = json::parse (text.begin (), text.end ());
        }
        catch (const json::parse_error &e)
        {
            const auto [line, col] = line_col (text, e.byte);
            throw ScenarioError (ScenarioError::Kind::Parse, "line " + std::to_string (line) + ", column " +
                                                                 std::to_string (col) + ": malformed JSON");
        }

        Obj o (doc, "");
        Scenario sc;
        sc.name = o.str ("name");
        if (o.has ("description"))
            sc.description = o.str ("description");
        sc.seed = o.u64 ("seed", 0);
        sc.map = read_map (o.at ("map"));
        sc.vehicles = read_vehicles (o.array ("vehicles"));
        if (o.has ("irrt"))
            sc.irrt = read_irrt (o.at ("irrt"));
        if (o.has ("vt"))
            sc.vt = read_vt (o.at ("vt"));
        if (o.has ("coordination"))
            sc.coordination = read_coordination (o.at ("coordination"));
        if (o.has ("output"))
            sc.output = read_output (o.at ("output"));
        o.finish ();

        invariant ("scenario", [&] {
            sc.validate ();
            return 0;
        });
        return sc;
    }

    Scenario load_scenario (const std::filesystem::path &file)
    {
        std::ifstream in (file, std::ios::binary);
        if (!in)
            throw ScenarioError (ScenarioError::Kind::Parse, file.string () + ": cannot open file");
        std::ostringstream ss;
        ss << in.rdbuf ();
        try
        {
            return parse_scenario (ss.str ());
        }
        catch (const ScenarioError &e)
        {
            throw ScenarioError (e.kind (), file.string () + ": " + e.what ());
        }
    }

    // ---------------------------------------------------------------- saving

    namespace
    {
        json pt (const Point2 &p) { return json::array ({p.x, p.y}); }

        json obstacle_json (const Obstacle &o)
        {
            return std::visit (
                [] (const auto &s) -> json {
                    using T = std::decay_t<decltype (s)>;
                    json j;
                    if constexpr (std::is_same_v<T, geometry::Rect>)
                    {
                        j["type"] = "rectangle";
                        j["min_m"] = pt (s.min);
                        j["max_m"] = pt (s.max);
                    }
                    else if constexpr (std::is_same_v<T, geometry::Circle>)
                    {
                        j["type"] = "circle";
                        j["center_m"] = pt (s.center);
                        j["radius_m"] = s.radius;
                    }
                    else
                    {
                        j["type"] = "polygon";
                        j["vertices_m"] = json::array ();
                        for (const auto &v : s.vertices)
                            j["vertices_m"].push_back (pt (v));
                    }
                    return j;
                },
                o.shape ());
        }
    } // namespace

    std::string dump_scenario (const Scenario &sc)
    {
        json j;
        j["name"] = sc.name;
        if (!sc.description.empty ())
            j["description"] = sc.description;
        j["seed"] = sc.seed;

        json map;
        map["bounds"] = {{"min_m", pt (sc.map.bounds.min)}, {"max_m", pt (sc.map.bounds.max)}};
        map["obstacles"] = json::array ();
        for (const auto &o : sc.map.obstacles)
            map["obstacles"].push_back (obstacle_json (o));
        j["map"] = map;

        j["vehicles"] = json::array ();
        for (const auto &v : sc.vehicles)
        {
            const auto &p = v.params;
            json jv;
            jv["id"] = v.id;
            jv["priority"] = v.priority;
            jv["start"] = {{"x_m", v.start.x}, {"y_m", v.start.y}, {"heading_rad", v.start_heading}};
            jv["goal"] = {{"x_m", v.goal.x}, {"y_m", v.goal.y}};
            jv["params"] = {{"mass_kg", p.mass},
                            {"yaw_inertia_kgm2", p.yaw_inertia},
                            {"l_front_m", p.l_front},
                            {"l_rear_m", p.l_rear},
                            {"c_alpha_front_npr", p.c_alpha_front},
                            {"c_alpha_rear_npr", p.c_alpha_rear},
                            {"v_x_mps", p.v_x},
                            {"delta_max_rad", p.delta_max},
                            {"footprint_radius_m", p.footprint_radius},
                            {"steer_gain", p.steer_gain}};
            j["vehicles"].push_back (jv);
        }

        j["irrt"] = {{"k", sc.irrt.k},
                     {"rho_prime", sc.irrt.rho_prime},
                     {"terminal_half_width_m", sc.irrt.terminal_half_width},
                     {"horizon_s", sc.irrt.horizon},
                     {"step_s", sc.irrt.step},
                     {"integrator", integrators::to_string (sc.irrt.integrator)},
                     {"max_iterations", sc.irrt.max_iterations}};
        j["vt"] = {{"k", sc.vt.k},
                   {"v_min", sc.vt.v_min},
                   {"v_max", sc.vt.v_max},
                   {"dt_step", sc.vt.dt_step},
                   {"max_iterations", sc.vt.max_iterations}};
        j["coordination"] = {{"t_max_factor", sc.coordination.t_max_factor},
                             {"grid_t_cells", sc.coordination.grid_t_cells},
                             {"grid_s_cells", sc.coordination.grid_s_cells},
                             {"parallel_paths", sc.coordination.parallel_paths}};
        j["output"] = {{"format", std::string (to_string (sc.output.format))},
                       {"sample_period_s", sc.output.sample_period}};
        return j.dump (2) + "\n";
    }

    void save_scenario (const Scenario &sc, const std::filesystem::path &file)
    {
        std::ofstream out (file, std::ios::binary);
        out << dump_scenario (sc);
        if (!out)
            throw ArtifactError (file.string () + ": write failed");
    }

    // ------------------------------------------------------------------- run

    bool RunReport::all_planned () const
    {
        return std::all_of (vehicles.begin (), vehicles.end (),
                            [] (const VehicleReport &v) { return v.path_found && v.timed; });
    }

    namespace
    {
        irrt::IrrtConfig seeded_irrt (const Scenario &sc)
        {
            irrt::IrrtConfig c = sc.irrt;
            c.seed = mix_seed (sc.seed, 1);
            return c;
        }

        timing::VtConfig seeded_vt (const Scenario &sc)
        {
            timing::VtConfig c = sc.vt;
            c.seed = mix_seed (sc.seed, 2);
            return c;
        }

        RunReport make_report (const Scenario &sc, const std::vector<VehicleTask> &ordered,
                               const coordination::DsbpResult &plan, const coordination::VerifyReport &verify)
        {
            RunReport rep;
            rep.scenario = sc.name;
            rep.seed = sc.seed;
            for (const auto &task : ordered)
            {
                VehicleReport v;
                v.id = task.id;
                v.priority = task.priority;
                auto m = std::find_if (plan.motions.begin (), plan.motions.end (),
                                       [&] (const coordination::PlannedMotion &x) { return x.id == task.id; });
                auto f = std::find_if (plan.failures.begin (), plan.failures.end (),
                                       [&] (const coordination::VehicleFailure &x) { return x.id == task.id; });
                if (m != plan.motions.end ())
                {
                    v.path_found = v.timed = true;
                    v.irrt_iterations = m->irrt_iterations;
                    v.tree_size = m->tree.size ();
                    v.path_length = m->path.total_length ();
                    v.arrival_time = m->arrival_time;
                    v.vt_iterations = m->vt_iterations;
                    v.t_max_doubled = m->t_max_doubled;
                    v.obstacle_ids = m->obstacle_ids;
                    rep.maneuver_time = std::max (rep.maneuver_time, m->arrival_time);
                }
                else if (f != plan.failures.end ())
                {
                    v.path_found = f->stage == coordination::FailureStage::Timing;
                    v.irrt_iterations = f->irrt_iterations;
                    v.tree_size = f->tree_size;
                    v.path_length = f->path_length;
                    v.vt_iterations = f->vt_iterations;
                    v.failure = f->message;
                }
                rep.vehicles.push_back (std::move (v));
            }
            rep.verify_passed = verify.passed ();
            rep.min_pair_distance = verify.min_pair_distance;
            rep.min_pair_margin = verify.min_pair_margin;
            rep.min_static_clearance = verify.min_static_clearance;
            rep.first_violation = verify.first_violation;
            return rep;
        }

        RunResult finish_run (const Scenario &sc, std::vector<VehicleTask> ordered, coordination::DsbpResult plan,
                              std::chrono::steady_clock::time_point t0)
        {
            RunResult res;
            res.verify = coordination::verify_plan (plan.motions, sc.map);
            res.report = make_report (sc, ordered, plan, res.verify);
            res.report.wall_time =
                std::chrono::duration<double> (std::chrono::steady_clock::now () - t0).count ();
            res.ordered = std::move (ordered);
            res.plan = std::move (plan);
            return res;
        }
    } // namespace

    RunResult run_scenario (const Scenario &sc)
    {
        sc.validate ();
        const auto t0 = std::chrono::steady_clock::now ();
        auto ordered = coordination::order_by_priority (sc.vehicles);
        auto plan = coordination::dsbp_plan (ordered, sc.map, seeded_irrt (sc), seeded_vt (sc), sc.coordination);
        return finish_run (sc, std::move (ordered), std::move (plan), t0);
    }

    RunResult time_scenario (const Scenario &sc, std::vector<irrt::GeometricPath> paths)
    {
        sc.validate ();
        const auto t0 = std::chrono::steady_clock::now ();
        auto ordered = coordination::order_by_priority (sc.vehicles);
        if (paths.size () != ordered.size ())
            throw std::invalid_argument ("time: expected one path per vehicle");

        std::vector<irrt::PlanResult> results;
        for (std::size_t i = 0; i < ordered.size (); ++i)
        {
            const auto &t = ordered[i];
            irrt::PlanResult r{irrt::PlanStatus::Success, std::move (paths[i]),
                               irrt::PlanTree ({t.start.x, t.start.y, t.start_heading, 0.0, 0.0}), 0, std::nullopt,
                               0};
            results.push_back (std::move (r));
        }
        auto plan = coordination::time_paths (ordered, std::move (results), seeded_vt (sc), sc.coordination);
        return finish_run (sc, std::move (ordered), std::move (plan), t0);
    }

    PathPlanResult plan_scenario (const Scenario &sc)
    {
        sc.validate ();
        PathPlanResult out;
        out.ordered = coordination::order_by_priority (sc.vehicles);
        out.results =
            coordination::plan_paths (out.ordered, sc.map, seeded_irrt (sc), sc.coordination.parallel_paths);
        return out;
    }

    std::string report_json (const RunReport &rep)
    {
        auto finite_or_null = [] (double v) -> json { return std::isfinite (v) ? json (v) : json (nullptr); };

        json j;
        j["scenario"] = rep.scenario;
        j["seed"] = rep.seed;
        j["success"] = rep.success ();
        j["maneuver_time_s"] = rep.maneuver_time;
        json v;
        v["passed"] = rep.verify_passed;
        v["min_pair_distance_m"] = finite_or_null (rep.min_pair_distance);
        v["min_pair_margin_m"] = finite_or_null (rep.min_pair_margin);
        v["min_static_clearance_m"] = finite_or_null (rep.min_static_clearance);
        if (rep.first_violation)
            v["first_violation"] = {{"time_s", rep.first_violation->time},
                                    {"first", rep.first_violation->first},
                                    {"second", rep.first_violation->second},
                                    {"distance_m", rep.first_violation->distance}};
        else
            v["first_violation"] = nullptr;
        j["verify"] = v;

        j["vehicles"] = json::array ();
        for (const auto &x : rep.vehicles)
        {
            json jv;
            jv["id"] = x.id;
            jv["priority"] = x.priority;
            jv["path_found"] = x.path_found;
            jv["timed"] = x.timed;
            jv["irrt_iterations"] = x.irrt_iterations;
            jv["tree_size"] = x.tree_size;
            jv["path_length_m"] = x.path_length;
            jv["arrival_time_s"] = x.arrival_time;
            jv["vt_iterations"] = x.vt_iterations;
            jv["t_max_doubled"] = x.t_max_doubled;
            jv["timed_against"] = x.obstacle_ids;
            jv["failure"] = x.failure.empty () ? json (nullptr) : json (x.failure);
            j["vehicles"].push_back (jv);
        }
        return j.dump (2) + "\n";
    }

} // namespace dsbp::scenario
