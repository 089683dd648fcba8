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

#include "svg.hpp"

#include "format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <variant>

namespace dsbp::svg
{
    namespace
    {
        constexpr const char *kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

        const char *colour (std::size_t i) { return kPalette[i % std::size (kPalette)]; }

        std::string escape (const std::string &s)
        {
            std::string out;
            for (char c : s)
            {
                switch (c)
                {
                case '<': out += "&lt;"; break;
                case '>': out += "&gt;"; break;
                case '&': out += "&amp;"; break;
                case '"': out += "&quot;"; break;
                default: out += c;
                }
            }
            return out;
        }

        void header (std::ostream &os, double w, double h)
        {
            os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << io::fixed (w) << "\" height=\""
               << io::fixed (h) << "\" viewBox=\"0 0 " << io::fixed (w) << ' ' << io::fixed (h) << "\">\n"
               << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        }

        struct Frame
        {
            double x0, y0, sx, sy, ox, oy; ///< data origin, scale, pixel origin (bottom-left)

            double px (double x) const { return ox + (x - x0) * sx; }
            double py (double y) const { return oy - (y - y0) * sy; }
        };
    } // namespace

    void paths (std::ostream &os, const geometry::ObstacleMap &map, std::span<const PathLayer> layers)
    {
        const double margin = 20.0;
        const double wm = std::max (map.bounds.width (), 1e-9);
        const double hm = std::max (map.bounds.height (), 1e-9);
        const double scale = 760.0 / std::max (wm, hm);
        const double w = wm * scale + 2 * margin;
        const double h = hm * scale + 2 * margin;
        const Frame f{map.bounds.min.x, map.bounds.min.y, scale, scale, margin, h - margin};

        header (os, w, h);
        os << "<rect class=\"bounds\" x=\"" << io::fixed (margin) << "\" y=\"" << io::fixed (margin)
           << "\" width=\"" << io::fixed (wm * scale) << "\" height=\"" << io::fixed (hm * scale)
           << "\" fill=\"none\" stroke=\"black\"/>\n";

        for (const auto &o : map.obstacles)
        {
            std::visit (
                [&] (const auto &s) {
                    using T = std::decay_t<decltype (s)>;
                    if constexpr (std::is_same_v<T, geometry::Rect>)
                        os << "<rect class=\"obstacle\" x=\"" << io::fixed (f.px (s.min.x)) << "\" y=\""
                           << io::fixed (f.py (s.max.y)) << "\" width=\"" << io::fixed (s.width () * scale)
                           << "\" height=\"" << io::fixed (s.height () * scale) << "\" fill=\"#555\"/>\n";
                    else if constexpr (std::is_same_v<T, geometry::Circle>)
                        os << "<circle class=\"obstacle\" cx=\"" << io::fixed (f.px (s.center.x)) << "\" cy=\""
                           << io::fixed (f.py (s.center.y)) << "\" r=\"" << io::fixed (s.radius * scale)
                           << "\" fill=\"#555\"/>\n";
                    else
                    {
                        os << "<polygon class=\"obstacle\" points=\"";
                        for (std::size_t i = 0; i < s.vertices.size (); ++i)
                            os << (i ? " " : "") << io::fixed (f.px (s.vertices[i].x)) << ','
                               << io::fixed (f.py (s.vertices[i].y));
                        os << "\" fill=\"#555\"/>\n";
                    }
                },
                o.shape ());
        }

        for (std::size_t k = 0; k < layers.size (); ++k)
        {
            const PathLayer &l = layers[k];
            const char *c = colour (k);
            if (l.tree)
            {
                os << "<g class=\"tree\" data-vehicle=\"" << escape (l.id) << "\" stroke=\"" << c
                   << "\" stroke-opacity=\"0.3\" stroke-width=\"0.5\" fill=\"none\">\n";
                for (const auto &n : l.tree->nodes ())
                {
                    if (!n.parent)
                        continue;
                    const auto &p = l.tree->node (*n.parent).state;
                    os << "<line x1=\"" << io::fixed (f.px (p.x)) << "\" y1=\"" << io::fixed (f.py (p.y))
                       << "\" x2=\"" << io::fixed (f.px (n.state.x)) << "\" y2=\"" << io::fixed (f.py (n.state.y))
                       << "\"/>\n";
                }
                os << "</g>\n";
            }
            if (l.path)
            {
                os << "<polyline class=\"path\" data-vehicle=\"" << escape (l.id) << "\" fill=\"none\" stroke=\""
                   << c << "\" stroke-width=\"2\" points=\"";
                const auto &wp = l.path->waypoints ();
                for (std::size_t i = 0; i < wp.size (); ++i)
                    os << (i ? " " : "") << io::fixed (f.px (wp[i].x)) << ',' << io::fixed (f.py (wp[i].y));
                os << "\"/>\n";
            }
            os << "<circle class=\"start\" cx=\"" << io::fixed (f.px (l.start.x)) << "\" cy=\""
               << io::fixed (f.py (l.start.y)) << "\" r=\"4\" fill=\"" << c << "\"/>\n";
            os << "<rect class=\"goal\" x=\"" << io::fixed (f.px (l.goal.x) - 4) << "\" y=\""
               << io::fixed (f.py (l.goal.y) - 4) << "\" width=\"8\" height=\"8\" fill=\"none\" stroke=\"" << c
               << "\"/>\n";
            os << "<text x=\"" << io::fixed (f.px (l.start.x) + 6) << "\" y=\"" << io::fixed (f.py (l.start.y) - 6)
               << "\" font-size=\"12\" fill=\"" << c << "\">" << escape (l.id) << "</text>\n";
        }
        os << "</svg>\n";
    }

    void st_map (std::ostream &os, const std::string &title, const timing::StObstacleGrid *grid,
                 const timing::StTree &tree, const timing::TimingFunction &sigma)
    {
        const double side = 500.0;
        const double left = 60.0, top = 40.0, bottom = 50.0, right = 20.0;
        const double w = left + side + right;
        const double h = top + side + bottom;
        const Frame f{0.0, 0.0, side, side, left, top + side};

        header (os, w, h);
        os << "<text x=\"" << io::fixed (w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
           << escape (title) << "</text>\n";

        if (grid)
        {
            const double cw = side / static_cast<double> (grid->t_cells ());
            const double ch = side / static_cast<double> (grid->s_cells ());
            os << "<g class=\"blocked-cells\" fill=\"#222\" data-t-cells=\"" << grid->t_cells ()
               << "\" data-s-cells=\"" << grid->s_cells () << "\">\n";
            for (std::size_t i = 0; i < grid->t_cells (); ++i)
                for (std::size_t j = 0; j < grid->s_cells (); ++j)
                    if (grid->blocked (i, j))
                        os << "<rect class=\"blocked\" data-i=\"" << i << "\" data-j=\"" << j << "\" x=\""
                           << io::fixed (left + static_cast<double> (i) * cw) << "\" y=\""
                           << io::fixed (top + side - static_cast<double> (j + 1) * ch) << "\" width=\""
                           << io::fixed (cw) << "\" height=\"" << io::fixed (ch) << "\"/>\n";
            os << "</g>\n";
        }

        os << "<g class=\"st-tree\" stroke=\"#1f77b4\" stroke-opacity=\"0.4\" stroke-width=\"0.7\">\n";
        for (const auto &n : tree.nodes)
        {
            if (!n.parent)
                continue;
            const auto &p = tree.nodes[*n.parent].point;
            os << "<line x1=\"" << io::fixed (f.px (p.t)) << "\" y1=\"" << io::fixed (f.py (p.s)) << "\" x2=\""
               << io::fixed (f.px (n.point.t)) << "\" y2=\"" << io::fixed (f.py (n.point.s)) << "\"/>\n";
        }
        os << "</g>\n";

        os << "<polyline class=\"timing\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2.5\" points=\"";
        const auto &k = sigma.knots ();
        for (std::size_t i = 0; i < k.size (); ++i)
            os << (i ? " " : "") << io::fixed (f.px (k[i].t)) << ',' << io::fixed (f.py (k[i].s));
        os << "\"/>\n";

        os << "<rect x=\"" << io::fixed (left) << "\" y=\"" << io::fixed (top) << "\" width=\"" << io::fixed (side)
           << "\" height=\"" << io::fixed (side) << "\" fill=\"none\" stroke=\"black\"/>\n";
        os << "<text x=\"" << io::fixed (left + side / 2) << "\" y=\"" << io::fixed (h - 15)
           << "\" text-anchor=\"middle\" font-size=\"12\">t / t_max (t_max = " << io::num (sigma.t_max (), 4)
           << " s)</text>\n";
        os << "<text x=\"18\" y=\"" << io::fixed (top + side / 2) << "\" font-size=\"12\" transform=\"rotate(-90 18 "
           << io::fixed (top + side / 2) << ")\" text-anchor=\"middle\">s</text>\n";
        os << "</svg>\n";
    }

    void line_chart (std::ostream &os, const std::string &title, const std::string &x_label,
                     const std::string &y_label, std::span<const Series> series, std::span<const double> references)
    {
        const double pw = 640.0, ph = 360.0;
        const double left = 70.0, top = 40.0, bottom = 50.0, right = 140.0;
        const double w = left + pw + right;
        const double h = top + ph + bottom;

        double x0 = std::numeric_limits<double>::infinity (), x1 = -x0;
        double y0 = 0.0, y1 = -std::numeric_limits<double>::infinity ();
        for (const auto &s : series)
            for (std::size_t i = 0; i < s.x.size (); ++i)
            {
                x0 = std::min (x0, s.x[i]);
                x1 = std::max (x1, s.x[i]);
                y0 = std::min (y0, s.y[i]);
                y1 = std::max (y1, s.y[i]);
            }
        for (double r : references)
            y1 = std::max (y1, r);
        if (!std::isfinite (x0))
        {
            x0 = 0.0;
            x1 = 1.0;
        }
        if (!std::isfinite (y1))
            y1 = 1.0;
        if (x1 <= x0)
            x1 = x0 + 1.0;
        y1 = y1 <= y0 ? y0 + 1.0 : y1 + 0.05 * (y1 - y0);
        const Frame f{x0, y0, pw / (x1 - x0), ph / (y1 - y0), left, top + ph};

        header (os, w, h);
        os << "<text x=\"" << io::fixed (left + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
           << escape (title) << "</text>\n";
        os << "<rect x=\"" << io::fixed (left) << "\" y=\"" << io::fixed (top) << "\" width=\"" << io::fixed (pw)
           << "\" height=\"" << io::fixed (ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

        for (int k = 0; k <= 4; ++k)
        {
            const double xv = x0 + (x1 - x0) * k / 4.0;
            const double yv = y0 + (y1 - y0) * k / 4.0;
            os << "<text x=\"" << io::fixed (f.px (xv)) << "\" y=\"" << io::fixed (top + ph + 16)
               << "\" text-anchor=\"middle\" font-size=\"10\">" << io::num (xv, 3) << "</text>\n";
            os << "<text x=\"" << io::fixed (left - 6) << "\" y=\"" << io::fixed (f.py (yv) + 3)
               << "\" text-anchor=\"end\" font-size=\"10\">" << io::num (yv, 3) << "</text>\n";
        }
        os << "<text x=\"" << io::fixed (left + pw / 2) << "\" y=\"" << io::fixed (h - 12)
           << "\" text-anchor=\"middle\" font-size=\"12\">" << escape (x_label) << "</text>\n";
        os << "<text x=\"16\" y=\"" << io::fixed (top + ph / 2) << "\" font-size=\"12\" transform=\"rotate(-90 16 "
           << io::fixed (top + ph / 2) << ")\" text-anchor=\"middle\">" << escape (y_label) << "</text>\n";

        for (double r : references)
            os << "<line class=\"reference\" x1=\"" << io::fixed (left) << "\" y1=\"" << io::fixed (f.py (r))
               << "\" x2=\"" << io::fixed (left + pw) << "\" y2=\"" << io::fixed (f.py (r))
               << "\" stroke=\"#888\" stroke-dasharray=\"6 4\"/>\n";

        for (std::size_t k = 0; k < series.size (); ++k)
        {
            const auto &s = series[k];
            os << "<polyline class=\"series\" data-name=\"" << escape (s.name) << "\" fill=\"none\" stroke=\""
               << colour (k) << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < s.x.size (); ++i)
                os << (i ? " " : "") << io::fixed (f.px (s.x[i])) << ',' << io::fixed (f.py (s.y[i]));
            os << "\"/>\n";
            os << "<text x=\"" << io::fixed (left + pw + 10) << "\" y=\"" << io::fixed (top + 14 + 16.0 * k)
               << "\" font-size=\"12\" fill=\"" << colour (k) << "\">" << escape (s.name) << "</text>\n";
        }
        os << "</svg>\n";
    }

} // namespace dsbp::svg
