// Copyright 2026 The biasprobe Authors
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

#include <span>
#include <vector>

namespace biasprobe {

/// Correctly rounded floating-point summation (Shewchuk's non-overlapping
/// partials, as in Python's math.fsum). The result is the exact sum rounded
/// once, so it does not depend on the order of the inputs and negating every
/// input negates the result exactly.
class ExactSum {
 public:
  void add(double x);
  double value() const;
  void clear() noexcept { partials_.clear(); }

 private:
  std::vector<double> partials_;
};

double exact_sum(std::span<const double> values);

}  // namespace biasprobe
