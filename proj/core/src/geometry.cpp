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

#include "dsbp/geometry.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dsbp::geometry
{
    namespace
    {
        double orient (const Point2 &a, const Point2 &b, const Point2 &c) { return cross (b - a, c - a); }

        // c is collinear with ab; is it within the closed segment's box?
        bool on_segment (const Point2 &a, const Point2 &b, const Point2 &c)
        {
            return std::min (a.x, b.x) <= c.x && c.x <= std::max (a.x, b.x) && std::min (a.y, b.y) <= c.y &&
                   c.y <= std::max (a.y, b.y);
        }

        bool segments_touch (const Point2 &a, const Point2 &b, const Point2 &c, const Point2 &d)
        {
            const double d1 = orient (c, d, a);
            const double d2 = orient (c, d, b);
            const double d3 = orient (a, b, c);
            const double d4 = orient (a, b, d);

            if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
                return true;

            return (d1 == 0 && on_segment (c, d, a)) || (d2 == 0 && on_segment (c, d, b)) ||
                   (d3 == 0 && on_segment (a, b, c)) || (d4 == 0 && on_segment (a, b, d));
        }

        bool boxes_overlap (const Rect &a, const Rect &b, double margin)
        {
            return a.min.x - margin <= b.max.x && b.min.x <= a.max.x + margin && a.min.y - margin <= b.max.y &&
                   b.min.y <= a.max.y + margin;
        }

        Rect segment_box (const Point2 &a, const Point2 &b)
        {
            return {{std::min (a.x, b.x), std::min (a.y, b.y)}, {std::max (a.x, b.x), std::max (a.y, b.y)}};
        }

        bool ring_contains (const std::vector<Point2> &ring, const Point2 &p)
        {
            const std::size_t n = ring.size ();
            for (std::size_t i = 0; i < n; ++i)
                if (orient (ring[i], ring[(i + 1) % n], p) < 0)
                    return false;
            return true;
        }

        double ring_segment_distance (const std::vector<Point2> &ring, const Point2 &a, const Point2 &b)
        {
            if (ring_contains (ring, a) || ring_contains (ring, b))
                return 0.0;
            double best = std::numeric_limits<double>::infinity ();
            const std::size_t n = ring.size ();
            for (std::size_t i = 0; i < n; ++i)
            {
                best = std::min (best, segment_segment_distance (a, b, ring[i], ring[(i + 1) % n]));
                if (best == 0.0)
                    break;
            }
            return best;
        }

        std::array<Point2, 4> rect_ring (const Rect &r)
        {
            return {r.min, Point2{r.max.x, r.min.y}, r.max, Point2{r.min.x, r.max.y}};
        }

    } // namespace

    double distance (const Point2 &p, const Point2 &q) { return std::hypot (p.x - q.x, p.y - q.y); }

    double point_segment_distance (const Point2 &p, const Point2 &a, const Point2 &b)
    {
        const Point2 ab = b - a;
        const double len2 = dot (ab, ab);
        if (len2 == 0.0)
            return distance (p, a);
        const double t = std::clamp (dot (p - a, ab) / len2, 0.0, 1.0);
        return distance (p, a + ab * t);
    }

    double segment_segment_distance (const Point2 &a, const Point2 &b, const Point2 &c, const Point2 &d)
    {
        if (segments_touch (a, b, c, d))
            return 0.0;
        return std::min ({point_segment_distance (a, c, d), point_segment_distance (b, c, d),
                          point_segment_distance (c, a, b), point_segment_distance (d, a, b)});
    }

    // ---------------------------------------------------------------- Obstacle

    Obstacle::Obstacle (Shape s) : shape_ (std::move (s))
    {
        if (const auto *r = std::get_if<Rect> (&shape_))
        {
            bbox_ = *r;
            const auto ring = rect_ring (*r);
            ring_.assign (ring.begin (), ring.end ());
        }
        else if (const auto *c = std::get_if<Circle> (&shape_))
        {
            bbox_ = {{c->center.x - c->radius, c->center.y - c->radius}, {c->center.x + c->radius, c->center.y + c->radius}};
        }
        else
        {
            ring_ = std::get<ConvexPolygon> (shape_).vertices;
            bbox_ = {ring_.front (), ring_.front ()};
            for (const auto &v : ring_)
            {
                bbox_.min = {std::min (bbox_.min.x, v.x), std::min (bbox_.min.y, v.y)};
                bbox_.max = {std::max (bbox_.max.x, v.x), std::max (bbox_.max.y, v.y)};
            }
        }
    }

    Obstacle Obstacle::rectangle (Point2 min, Point2 max)
    {
        if (!min.finite () || !max.finite ())
            throw std::invalid_argument ("rectangle: corners must be finite");
        if (!(min.x < max.x && min.y < max.y))
            throw std::invalid_argument ("rectangle: min corner must be < max corner componentwise");
        return Obstacle (Rect{min, max});
    }

    Obstacle Obstacle::circle (Point2 center, double radius)
    {
        if (!center.finite () || !std::isfinite (radius))
            throw std::invalid_argument ("circle: center and radius must be finite");
        if (!(radius > 0.0))
            throw std::invalid_argument ("circle: radius must be > 0");
        return Obstacle (Circle{center, radius});
    }

    Obstacle Obstacle::polygon (std::vector<Point2> ccw_vertices)
    {
        const std::size_t n = ccw_vertices.size ();
        if (n < 3)
            throw std::invalid_argument ("polygon: needs at least 3 vertices");
        for (const auto &v : ccw_vertices)
            if (!v.finite ())
                throw std::invalid_argument ("polygon: vertices must be finite");
        for (std::size_t i = 0; i < n; ++i)
        {
            const Point2 &a = ccw_vertices[i];
            const Point2 &b = ccw_vertices[(i + 1) % n];
            const Point2 &c = ccw_vertices[(i + 2) % n];
            if (!(orient (a, b, c) > 0))
                throw std::invalid_argument ("polygon: vertices must be strictly convex and counter-clockwise");
        }
        // Turning left at every vertex still admits a star that winds twice.
        double winding = 0.0;
        for (std::size_t i = 0; i < n; ++i)
        {
            const Point2 e0 = ccw_vertices[(i + 1) % n] - ccw_vertices[i];
            const Point2 e1 = ccw_vertices[(i + 2) % n] - ccw_vertices[(i + 1) % n];
            winding += std::atan2 (cross (e0, e1), dot (e0, e1));
        }
        if (std::abs (winding - 2.0 * std::numbers::pi) > 1e-6)
            throw std::invalid_argument ("polygon: vertices must be strictly convex and counter-clockwise");
        return Obstacle (ConvexPolygon{std::move (ccw_vertices)});
    }

    bool Obstacle::contains (const Point2 &p) const
    {
        if (const auto *c = std::get_if<Circle> (&shape_))
            return distance (p, c->center) <= c->radius;
        return ring_contains (ring_, p);
    }

    double Obstacle::distance_to (const Point2 &p) const
    {
        if (const auto *c = std::get_if<Circle> (&shape_))
            return std::max (0.0, distance (p, c->center) - c->radius);
        if (ring_contains (ring_, p))
            return 0.0;
        double best = std::numeric_limits<double>::infinity ();
        for (std::size_t i = 0; i < ring_.size (); ++i)
            best = std::min (best, point_segment_distance (p, ring_[i], ring_[(i + 1) % ring_.size ()]));
        return best;
    }

    double Obstacle::segment_distance (const Point2 &a, const Point2 &b) const
    {
        if (const auto *c = std::get_if<Circle> (&shape_))
            return std::max (0.0, point_segment_distance (c->center, a, b) - c->radius);
        return ring_segment_distance (ring_, a, b);
    }

    // ------------------------------------------------------------- ObstacleMap

    void ObstacleMap::validate () const
    {
        if (!bounds.min.finite () || !bounds.max.finite ())
            throw std::invalid_argument ("map: bounds must be finite");
        if (!(bounds.min.x <= bounds.max.x && bounds.min.y <= bounds.max.y))
            throw std::invalid_argument ("map: bounds min corner must not exceed max corner");

        const auto corners = rect_ring (bounds);
        const std::vector<Point2> bounds_ring (corners.begin (), corners.end ());
        for (std::size_t i = 0; i < obstacles.size (); ++i)
        {
            const Obstacle &o = obstacles[i];
            bool hit = boxes_overlap (o.bounding_box (), bounds, 0.0);
            if (hit)
            {
                if (const auto *c = std::get_if<Circle> (&o.shape ()))
                {
                    const Point2 q{std::clamp (c->center.x, bounds.min.x, bounds.max.x),
                                   std::clamp (c->center.y, bounds.min.y, bounds.max.y)};
                    hit = distance (q, c->center) <= c->radius;
                }
                else
                {
                    std::vector<Point2> verts;
                    if (const auto *r = std::get_if<Rect> (&o.shape ()))
                    {
                        const auto ring = rect_ring (*r);
                        verts.assign (ring.begin (), ring.end ());
                    }
                    else
                        verts = std::get<ConvexPolygon> (o.shape ()).vertices;

                    // Edges cross, bounds inside the obstacle, or obstacle inside the bounds.
                    hit = o.contains (bounds.min) || ring_contains (bounds_ring, verts.front ());
                    for (std::size_t k = 0; k < 4 && !hit; ++k)
                        hit = o.segment_distance (corners[k], corners[(k + 1) % 4]) == 0.0;
                }
            }
            if (!hit)
                throw std::invalid_argument ("map: obstacle " + std::to_string (i) + " does not intersect the bounds");
        }
    }

    bool ObstacleMap::inside_bounds (const Point2 &p, double radius) const
    {
        return p.x - radius > bounds.min.x && p.x + radius < bounds.max.x && p.y - radius > bounds.min.y &&
               p.y + radius < bounds.max.y;
    }

    bool segment_collides (const Point2 &p, const Point2 &q, const ObstacleMap &map)
    {
        const Point2 samples[] = {p, q};
        return swept_path_collides (samples, 0.0, map);
    }

    bool swept_path_collides (std::span<const Point2> samples, double footprint_radius, const ObstacleMap &map)
    {
        if (samples.empty ())
            return false;

        const std::size_t segments = samples.size () == 1 ? 1 : samples.size () - 1;
        for (std::size_t i = 0; i < segments; ++i)
        {
            const Point2 &a = samples[i];
            const Point2 &b = samples.size () == 1 ? samples[i] : samples[i + 1];
            if (!map.inside_bounds (a, footprint_radius) || !map.inside_bounds (b, footprint_radius))
                return true;

            const Rect box = segment_box (a, b);
            for (const auto &o : map.obstacles)
            {
                if (!boxes_overlap (box, o.bounding_box (), footprint_radius))
                    continue;
                if (o.segment_distance (a, b) <= footprint_radius)
                    return true;
            }
        }
        return false;
    }

    double clearance (const Point2 &p, double radius, const ObstacleMap &map)
    {
        double gap = std::min ({p.x - map.bounds.min.x, map.bounds.max.x - p.x, p.y - map.bounds.min.y,
                                map.bounds.max.y - p.y});
        for (const auto &o : map.obstacles)
            gap = std::min (gap, o.distance_to (p));
        return gap - radius;
    }

} // namespace dsbp::geometry
