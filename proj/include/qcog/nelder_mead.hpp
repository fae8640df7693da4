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

#ifndef QCOG_NELDER_MEAD_HPP
#define QCOG_NELDER_MEAD_HPP

#include <functional>
#include <vector>

namespace qcog::optim {

struct NelderMeadOptions {
    double initial_step = 0.25;
    double f_tol = 1e-14;     // spread of simplex values
    double x_tol = 1e-12;     // simplex diameter
    int max_iterations = 5000;
};

struct NelderMeadResult {
    std::vector<double> x;
    double fmin = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Downhill simplex minimization of f over R^n from the given start point.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& start,
                             const NelderMeadOptions& options = {});

}  // namespace qcog::optim

#endif  // QCOG_NELDER_MEAD_HPP
