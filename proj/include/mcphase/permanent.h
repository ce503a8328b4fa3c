// Copyright 2026 The mcphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MCPHASE_PERMANENT_H
#define MCPHASE_PERMANENT_H

#include "mcphase/photon_model.h"

namespace mcp {

/// Permanent by Ryser's inclusion-exclusion formula, visiting column subsets
/// in Gray-code order so each step updates the row sums by one column.
/// O(2^n n). Accepts n <= 20; the 0x0 permanent is 1.
Complex ryser_permanent(const ComplexMatrix &m);

/// Real-valued overload for nonnegative weight matrices.
double ryser_permanent(const Eigen::MatrixXd &m);

}  // namespace mcp

#endif
