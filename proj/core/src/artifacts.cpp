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

#include "format.hpp"
#include "svg.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace dsbp::scenario
{
    namespace fs = std::filesystem;
    using coordination::PlannedMotion;

    void write_path_csv (std::ostream &os, const irrt::GeometricPath &path)
    {
        os << "x_m,y_m,theta_rad,v_y_mps,r_radps\n";
        for (const auto &w : path.waypoints ())
            os << io::num (w.x, 17) << ',' << io::num (w.y, 17) << ',' << io::num (w.theta, 17) << ','
               << io::num (w.v_y, 17) << ',' << io::num (w.r, 17) << '\n';
    }

    irrt::GeometricPath read_path_csv (std::istream &is)
    {
        std::string line;
        if (!std::getline (is, line) || line != "x_m,y_m,theta_rad,v_y_mps,r_radps")
            throw std::invalid_argument ("path csv: expected header x_m,y_m,theta_rad,v_y_mps,r_radps");
        std::vector<dynamics::VehicleState> states;
        std::size_t row = 1;
        while (std::getline (is, line))
        {
            ++row;
            if (line.empty ())
                continue;
            std::array<double, 5> v{};
            std::istringstream ss (line);
            std::string cell;
            std::size_t n = 0;
            while (std::getline (ss, cell, ','))
            {
                if (n >= 5)
                    throw std::invalid_argument ("path csv: too many columns on line " + std::to_string (row));
                std::size_t used = 0;
                try
                {
                    v[n] = std::stod (cell, &used);
                }
                catch (const std::exception &)
                {
                    used = 0;
                }
                if (used != cell.size () || cell.empty ())
                    throw std::invalid_argument ("path csv: bad number on line " + std::to_string (row));
                ++n;
            }
            if (n != 5)
                throw std::invalid_argument ("path csv: expected 5 columns on line " + std::to_string (row));
            states.push_back ({v[0], v[1], v[2], v[3], v[4]});
        }
        return irrt::GeometricPath::from_states (states);
    }

    void write_trajectory_csv (std::ostream &os, const PlannedMotion &m, double period, double until)
    {
        os << "t_s,x_m,y_m,theta_rad,v_y_mps,r_radps,s_norm\n";
        auto row = [&] (double t) {
            const double s = timing::sigma_eval (m.sigma, t);
            const auto st = m.path.state_at (s);
            os << io::num (t) << ',' << io::num (st.x) << ',' << io::num (st.y) << ',' << io::num (st.theta) << ','
               << io::num (st.v_y) << ',' << io::num (st.r) << ',' << io::num (s) << '\n';
        };
        const auto n = static_cast<std::size_t> (std::floor (until / period + 1e-9));
        for (std::size_t k = 0; k <= n; ++k)
            row (static_cast<double> (k) * period);
        if (static_cast<double> (n) * period < until - 1e-12)
            row (until);
    }

    namespace
    {
        class OutFile
        {
          public:
            explicit OutFile (const fs::path &p) : path_ (p), os_ (p, std::ios::binary | std::ios::trunc)
            {
                if (!os_)
                    throw ArtifactError (p.string () + ": cannot open for writing");
            }
            std::ostream &stream () { return os_; }
            void close ()
            {
                os_.close ();
                if (!os_)
                    throw ArtifactError (path_.string () + ": write failed");
            }

          private:
            fs::path path_;
            std::ofstream os_;
        };

        template <class F>
        void write_file (const fs::path &p, F &&body)
        {
            OutFile f (p);
            body (f.stream ());
            f.close ();
        }

        void make_dir (const fs::path &dir)
        {
            std::error_code ec;
            fs::create_directories (dir, ec);
            if (ec || !fs::is_directory (dir))
                throw ArtifactError (dir.string () + ": cannot create directory");
        }

        bool csv (OutputFormat f) { return f != OutputFormat::Svg; }
        bool svg_on (OutputFormat f) { return f != OutputFormat::Csv; }

        svg::Series speed_series (const PlannedMotion &m, double until)
        {
            svg::Series s{m.id, {}, {}};
            const auto &k = m.sigma.knots ();
            const double scale = m.path.total_length () / m.sigma.t_max ();
            for (std::size_t i = 1; i < k.size (); ++i)
            {
                const double v = (k[i].s - k[i - 1].s) / (k[i].t - k[i - 1].t) * scale;
                s.x.push_back (k[i - 1].t * m.sigma.t_max ());
                s.y.push_back (v);
                s.x.push_back (k[i].t * m.sigma.t_max ());
                s.y.push_back (v);
            }
            if (m.arrival_time < until - 1e-12)
            {
                s.x.push_back (m.arrival_time);
                s.y.push_back (0.0);
                s.x.push_back (until);
                s.y.push_back (0.0);
            }
            return s;
        }
    } // namespace

    void write_run_artifacts (const Scenario &sc, const RunResult &res, const fs::path &dir, OutputFormat format)
    {
        make_dir (dir);
        const auto &motions = res.plan.motions;
        const double until = res.report.maneuver_time;
        const double period = sc.output.sample_period;

        write_file (dir / "report.json", [&] (std::ostream &os) { os << report_json (res.report); });

        const auto &times = res.verify.times;
        const double dt = times.size () > 1 ? times[1] - times[0] : period;
        const auto stride = static_cast<std::size_t> (std::max (1.0, std::round (period / dt)));

        if (csv (format))
        {
            for (const auto &m : motions)
            {
                const std::string stem = "vehicle_" + m.id;
                write_file (dir / (stem + "_trajectory.csv"),
                            [&] (std::ostream &os) { write_trajectory_csv (os, m, period, until); });
                write_file (dir / (stem + "_path.csv"), [&] (std::ostream &os) { write_path_csv (os, m.path); });
                write_file (dir / (stem + "_tree.csv"), [&] (std::ostream &os) { irrt::write_tree_csv (os, m.tree); });
                write_file (dir / (stem + "_timing.csv"),
                            [&] (std::ostream &os) { timing::write_knots_csv (os, m.sigma); });
                if (m.st_grid)
                    write_file (dir / (stem + "_st_grid.pgm"),
                                [&] (std::ostream &os) { timing::write_grid_pgm (os, *m.st_grid); });
            }
            write_file (dir / "distance.csv", [&] (std::ostream &os) {
                os << "t_s";
                for (const auto &[a, b] : res.verify.pairs)
                    os << ",d_" << a << '_' << b << "_m";
                os << '\n';
                for (std::size_t k = 0; k < times.size (); k += stride)
                {
                    os << io::num (times[k]);
                    for (const auto &series : res.verify.pair_distances)
                        os << ',' << io::num (series[k]);
                    os << '\n';
                }
            });
        }

        if (svg_on (format))
        {
            std::vector<svg::PathLayer> layers;
            for (const auto &t : res.ordered)
            {
                auto m = std::find_if (motions.begin (), motions.end (),
                                       [&] (const PlannedMotion &x) { return x.id == t.id; });
                layers.push_back ({t.id, m != motions.end () ? &m->tree : nullptr,
                                   m != motions.end () ? &m->path : nullptr, t.start, t.goal});
            }
            write_file (dir / "paths.svg", [&] (std::ostream &os) { svg::paths (os, sc.map, layers); });

            for (const auto &m : motions)
                write_file (dir / ("st_" + m.id + ".svg"), [&] (std::ostream &os) {
                    svg::st_map (os, "S-T map: " + m.id, m.st_grid ? &*m.st_grid : nullptr, m.st_tree, m.sigma);
                });

            std::vector<svg::Series> speeds;
            for (const auto &m : motions)
                speeds.push_back (speed_series (m, until));
            write_file (dir / "speed.svg",
                        [&] (std::ostream &os) { svg::line_chart (os, "Speed", "t [s]", "speed [m/s]", speeds); });

            std::vector<svg::Series> dists;
            std::vector<double> refs;
            for (std::size_t p = 0; p < res.verify.pairs.size (); ++p)
            {
                const auto &[a, b] = res.verify.pairs[p];
                svg::Series s{a + "-" + b, {}, {}};
                for (std::size_t k = 0; k < times.size (); k += stride)
                {
                    s.x.push_back (times[k]);
                    s.y.push_back (res.verify.pair_distances[p][k]);
                }
                dists.push_back (std::move (s));
                double fa = 0.0, fb = 0.0;
                for (const auto &m : motions)
                {
                    if (m.id == a)
                        fa = m.footprint;
                    if (m.id == b)
                        fb = m.footprint;
                }
                if (std::find (refs.begin (), refs.end (), fa + fb) == refs.end ())
                    refs.push_back (fa + fb);
            }
            write_file (dir / "distance.svg", [&] (std::ostream &os) {
                svg::line_chart (os, "Inter-vehicle distance", "t [s]", "distance [m]", dists, refs);
            });
        }
    }

    void write_plan_artifacts (const Scenario &sc, const PathPlanResult &res, const fs::path &dir,
                               OutputFormat format)
    {
        make_dir (dir);
        nlohmann::ordered_json j;
        j["scenario"] = sc.name;
        j["seed"] = sc.seed;
        j["vehicles"] = nlohmann::ordered_json::array ();
        for (std::size_t i = 0; i < res.ordered.size (); ++i)
        {
            const auto &r = res.results[i];
            j["vehicles"].push_back ({{"id", res.ordered[i].id},
                                      {"path_found", r.success ()},
                                      {"iterations", r.iterations},
                                      {"tree_size", r.tree.size ()},
                                      {"path_length_m", r.path ? r.path->total_length () : 0.0}});
        }
        write_file (dir / "plan.json", [&] (std::ostream &os) { os << j.dump (2) << '\n'; });

        if (csv (format))
            for (std::size_t i = 0; i < res.ordered.size (); ++i)
            {
                const std::string stem = "vehicle_" + res.ordered[i].id;
                const auto &r = res.results[i];
                write_file (dir / (stem + "_tree.csv"), [&] (std::ostream &os) { irrt::write_tree_csv (os, r.tree); });
                if (r.path)
                    write_file (dir / (stem + "_path.csv"), [&] (std::ostream &os) { write_path_csv (os, *r.path); });
            }

        if (svg_on (format))
        {
            std::vector<svg::PathLayer> layers;
            for (std::size_t i = 0; i < res.ordered.size (); ++i)
                layers.push_back ({res.ordered[i].id, &res.results[i].tree,
                                   res.results[i].path ? &*res.results[i].path : nullptr, res.ordered[i].start,
                                   res.ordered[i].goal});
            write_file (dir / "paths.svg", [&] (std::ostream &os) { svg::paths (os, sc.map, layers); });
        }
    }

} // namespace dsbp::scenario
