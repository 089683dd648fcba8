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

#include "dsbp/geometry.hpp"
#include "dsbp/irrt.hpp"
#include "dsbp/timing.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace dsbp::svg
{
    struct PathLayer
    {
        std::string id;
        const irrt::PlanTree *tree{nullptr};
        const irrt::GeometricPath *path{nullptr};
        geometry::Point2 start;
        geometry::Point2 goal;
    };

    /// Map, obstacles, trees and paths in world coordinates (y up).
    void paths (std::ostream &os, const geometry::ObstacleMap &map, std::span<const PathLayer> layers);

    /// Unit path-time square; blocked cells carry data-i / data-j attributes.
    void st_map (std::ostream &os, const std::string &title, const timing::StObstacleGrid *grid,
                 const timing::StTree &tree, const timing::TimingFunction &sigma);

    struct Series
    {
        std::string name;
        std::vector<double> x;
        std::vector<double> y;
    };

    /// Polyline chart with optional dashed horizontal reference lines.
    void line_chart (std::ostream &os, const std::string &title, const std::string &x_label,
                     const std::string &y_label, std::span<const Series> series,
                     std::span<const double> references = {});

} // namespace dsbp::svg
