// Copyright 2026 The Multirank Authors.
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

// Interaction CSV, fit-result documents and the synthetic truth sidecar.
//
// Interaction files are UTF-8 CSV with the exact header `winner,loser,type`
// and one record per row. Fields may be double-quoted; quotes inside a quoted
// field are doubled. Labels become dense indices in order of first appearance,
// scanning the winner column before the loser column on each row.

#ifndef MULTIRANK_IO_HPP_
#define MULTIRANK_IO_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

#include "multirank/em.hpp"
#include "multirank/evaluation.hpp"
#include "multirank/model.hpp"
#include "multirank/synthetic.hpp"

namespace multirank {

inline constexpr std::string_view kInteractionHeader = "winner,loser,type";

// Malformed or invalid input. `line` is 1-based; 0 when the problem is not
// tied to a line (for instance an empty document).
class InputError : public std::runtime_error {
 public:
  InputError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                          message
                                    : message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

Dataset ParseInteractions(std::string_view document);

std::string SerializeInteractions(const Dataset& data);

// JSON document: per-individual label, strength, score and 1-based rank (in
// dataset order); per-type label and valence; fit diagnostics.
std::string FitResultJson(const FitResult& result, const Dataset& data);

// Flat CSV "label,score,rank" in dataset order.
std::string FitIndividualsCsv(const FitResult& result, const Dataset& data);

// Flat CSV "type,valence".
std::string FitTypesCsv(const FitResult& result, const Dataset& data);

// {"scores":[...],"valences":[...],"stances":[...]} plus the label arrays
// "individuals" and "types" that the vectors are indexed by.
std::string TruthJson(const SyntheticTruth& truth);

// "label,rank_multimodal,rank_baseline,score_multimodal,score_baseline".
std::string ComparisonCsv(const FitResult& multimodal,
                          const FitResult& baseline, const Dataset& data);

}  // namespace multirank

#endif  // MULTIRANK_IO_HPP_
