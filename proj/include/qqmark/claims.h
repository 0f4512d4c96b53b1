// Copyright 2026 The qqmark Authors
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

#ifndef _QQMARK_CLAIMS_H
#define _QQMARK_CLAIMS_H

#include <array>
#include <string>
#include <vector>

#include "qqmark/solver.h"

namespace qqmark {

struct ClaimResult {
    std::string claim;
    bool pass = false;
    std::string detail;
    /// Solver verdicts stronger than what the scripted strategies establish. These do
    /// not fail the claim.
    std::vector<std::string> findings;
};

struct ClaimOptions {
    SearchBudget budget;
    int jobs = 1;
};

/// Target set for a letter pattern such as "aA aB bB" with a..d and A..D mapped to the
/// given labels (identity order 00,01,10,11 by default).
TargetSet letter_instance(const std::string &pattern, const std::array<BellLabel, 4> &first = BellLabel::all(),
                          const std::array<BellLabel, 4> &second = BellLabel::all());

/// Checks the catalogued markability results for sets of size n (1..7).
std::vector<ClaimResult> check_claims(int n, const ClaimOptions &options = {});

/// One "PASS|FAIL  claim: detail" line per claim, findings indented below.
std::string render_claims(const std::vector<ClaimResult> &results);

}  // namespace qqmark

#endif
