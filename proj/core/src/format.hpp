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

#include <cmath>
#include <cstdio>
#include <string>

namespace dsbp::io
{
    /// Locale-independent number formatting for CSV and SVG output.
    inline std::string num (double v, int significant = 10)
    {
        if (std::isnan (v))
            return "nan";
        if (std::isinf (v))
            return v > 0 ? "inf" : "-inf";
        if (v == 0.0)
            return "0"; // also folds -0
        char buf[64];
        std::snprintf (buf, sizeof buf, "%.*g", significant, v);
        return buf;
    }

    /// Fixed-point with @p decimals digits; used for SVG coordinates.
    inline std::string fixed (double v, int decimals = 2)
    {
        char buf[64];
        std::snprintf (buf, sizeof buf, "%.*f", decimals, v);
        std::string s = buf;
        if (s == "-0" || s.find_first_not_of ("-0.") == std::string::npos)
            return "0";
        return s;
    }

} // namespace dsbp::io
