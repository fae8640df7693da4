// Copyright 2026 qcog developers
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

#include "qcog/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qcog::optim {

namespace {

struct Point {
    std::vector<double> x;
    double f;
};

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& start, const NelderMeadOptions& options) {
    const std::size_t n = start.size();
    const double alpha = 1.0;   // reflection
    const double gamma = 2.0;   // expansion
    const double rho = 0.5;     // contraction
    const double sigma = 0.5;   // shrink

    std::vector<Point> simplex;
    simplex.reserve(n + 1);
    simplex.push_back({start, f(start)});
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> x = start;
        x[i] += (x[i] != 0.0 ? options.initial_step * std::abs(x[i]) + options.initial_step * 0.1
                             : options.initial_step);
        simplex.push_back({x, f(x)});
    }

    auto by_value = [](const Point& a, const Point& b) { return a.f < b.f; };

    int iter = 0;
    bool converged = false;
    for (; iter < options.max_iterations; ++iter) {
        std::sort(simplex.begin(), simplex.end(), by_value);

        // convergence: value spread and geometric diameter
        const double spread = simplex.back().f - simplex.front().f;
        double diameter = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double lo = simplex[0].x[i], hi = simplex[0].x[i];
            for (const auto& p : simplex) {
                lo = std::min(lo, p.x[i]);
                hi = std::max(hi, p.x[i]);
            }
            diameter = std::max(diameter, hi - lo);
        }
        if (spread < options.f_tol && diameter < options.x_tol) {
            converged = true;
            break;
        }

        // centroid of all but worst
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j + 1 < simplex.size(); ++j) {
                centroid[i] += simplex[j].x[i];
            }
            centroid[i] /= static_cast<double>(n);
        }

        auto blend = [&](double t) {
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = centroid[i] + t * (centroid[i] - simplex.back().x[i]);
            }
            return x;
        };

        const auto reflected = blend(alpha);
        const double f_reflected = f(reflected);
        if (f_reflected < simplex.front().f) {
            const auto expanded = blend(gamma);
            const double f_expanded = f(expanded);
            if (f_expanded < f_reflected) {
                simplex.back() = {expanded, f_expanded};
            } else {
                simplex.back() = {reflected, f_reflected};
            }
            continue;
        }
        if (f_reflected < simplex[simplex.size() - 2].f) {
            simplex.back() = {reflected, f_reflected};
            continue;
        }
        const auto contracted = blend(f_reflected < simplex.back().f ? rho : -rho);
        const double f_contracted = f(contracted);
        if (f_contracted < std::min(f_reflected, simplex.back().f)) {
            simplex.back() = {contracted, f_contracted};
            continue;
        }
        // shrink toward best
        for (std::size_t j = 1; j < simplex.size(); ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                simplex[j].x[i] = simplex[0].x[i] + sigma * (simplex[j].x[i] - simplex[0].x[i]);
            }
            simplex[j].f = f(simplex[j].x);
        }
    }

    std::sort(simplex.begin(), simplex.end(), by_value);
    return {simplex.front().x, simplex.front().f, iter, converged};
}

}  // namespace qcog::optim
