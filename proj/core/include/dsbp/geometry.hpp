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
 * @brief Planar primitives, static obstacles and the collision predicates
 *        shared by the path planners and the plan verifier.
 *
 * Conventions:
 * - All obstacles are closed sets. Touching an obstacle boundary is a
 *   collision, and so is touching the workspace boundary.
 * - The vehicle footprint is a disc; footprint checks are done by inflating
 *   obstacles (distance <= radius) instead of sweeping the disc.
 */

#include <cmath>
#include <span>
#include <variant>
#include <vector>

namespace dsbp::geometry
{
    struct Point2
    {
        double x{0.0};
        double y{0.0};

        friend bool operator== (const Point2 &, const Point2 &) = default;

        Point2 operator+ (const Point2 &o) const { return {x + o.x, y + o.y}; }
        Point2 operator- (const Point2 &o) const { return {x - o.x, y - o.y}; }
        Point2 operator* (double k) const { return {x * k, y * k}; }

        bool finite () const { return std::isfinite (x) && std::isfinite (y); }
    };

    inline double dot (const Point2 &a, const Point2 &b) { return a.x * b.x + a.y * b.y; }
    inline double cross (const Point2 &a, const Point2 &b) { return a.x * b.y - a.y * b.x; }

    /// Euclidean distance.
    double distance (const Point2 &p, const Point2 &q);

    /// Distance from @p p to the closed segment ab.
    double point_segment_distance (const Point2 &p, const Point2 &a, const Point2 &b);

    /// Distance between closed segments ab and cd (0 when they touch or cross).
    double segment_segment_distance (const Point2 &a, const Point2 &b, const Point2 &c, const Point2 &d);

    struct Rect
    {
        Point2 min;
        Point2 max;

        friend bool operator== (const Rect &, const Rect &) = default;

        double width () const { return max.x - min.x; }
        double height () const { return max.y - min.y; }
    };

    struct Circle
    {
        Point2 center;
        double radius{0.0};

        friend bool operator== (const Circle &, const Circle &) = default;
    };

    /// Counter-clockwise, strictly convex vertex loop (not closed: last != first).
    struct ConvexPolygon
    {
        std::vector<Point2> vertices;

        friend bool operator== (const ConvexPolygon &, const ConvexPolygon &) = default;
    };

    using Shape = std::variant<Rect, Circle, ConvexPolygon>;

    /**
     * @brief A static obstacle. Construction goes through the named factories,
     *        which validate the shape invariants and throw std::invalid_argument.
     */
    class Obstacle
    {
      public:
        static Obstacle rectangle (Point2 min, Point2 max);
        static Obstacle circle (Point2 center, double radius);
        static Obstacle polygon (std::vector<Point2> ccw_vertices);

        const Shape &shape () const { return shape_; }

        /// Axis-aligned bounding box of the shape.
        Rect bounding_box () const { return bbox_; }

        /// Closed containment test.
        bool contains (const Point2 &p) const;

        /// Distance from @p p to the shape; 0 inside.
        double distance_to (const Point2 &p) const;

        /// Distance from the closed segment ab to the shape; 0 on contact.
        double segment_distance (const Point2 &a, const Point2 &b) const;

        friend bool operator== (const Obstacle &a, const Obstacle &b) { return a.shape_ == b.shape_; }

      private:
        explicit Obstacle (Shape s);

        Shape shape_;
        Rect bbox_;
        std::vector<Point2> ring_; ///< Vertex loop for rectangles and polygons.
    };

    struct ObstacleMap
    {
        Rect bounds;
        std::vector<Obstacle> obstacles;

        friend bool operator== (const ObstacleMap &, const ObstacleMap &) = default;

        /// Throws std::invalid_argument if bounds are inverted or an obstacle lies fully outside.
        void validate () const;

        /// True iff the disc of @p radius at @p p lies strictly inside the bounds.
        bool inside_bounds (const Point2 &p, double radius = 0.0) const;
    };

    /// True iff the closed segment pq touches any obstacle or leaves the bounds.
    bool segment_collides (const Point2 &p, const Point2 &q, const ObstacleMap &map);

    /**
     * @brief Footprint test along a sampled path.
     *
     * True iff some sample disc of @p footprint_radius touches an obstacle or the
     * bounds, or some inter-sample segment does so after inflating obstacles by
     * the radius. A single sample is checked as a degenerate segment.
     */
    bool swept_path_collides (std::span<const Point2> samples, double footprint_radius, const ObstacleMap &map);

    /// Smallest gap between the disc (p, radius) and any obstacle or the bounds; negative on overlap.
    double clearance (const Point2 &p, double radius, const ObstacleMap &map);

} // namespace dsbp::geometry
