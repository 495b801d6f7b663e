// Copyright 2026 The cqedpairs Authors
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

#include <iosfwd>
#include <string>
#include <vector>

namespace cqed {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Fast analytic-oracle checks: basis sizes, operator identities, the Rabi
/// closed form, dark-state limits, a lossless pulse sequence, CHSH anchors
/// and master-equation trace conservation.
std::vector<CheckResult> run_self_check();

/// Prints one line per check; returns true when all pass.
bool report_self_check(std::ostream& out);

}  // namespace cqed
