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

#include "multirank/model.hpp"

#include <unordered_set>
#include <utility>

namespace multirank {
namespace {

void CheckLabels(const std::vector<std::string>& labels, int expected,
                 const char* what) {
  if (static_cast<int>(labels.size()) != expected) {
    throw std::invalid_argument(std::string(what) + " label count " +
                                std::to_string(labels.size()) +
                                " does not match " + std::to_string(expected));
  }
  std::unordered_set<std::string> seen;
  for (const std::string& label : labels) {
    if (!seen.insert(label).second) {
      throw std::invalid_argument(std::string("duplicate ") + what +
                                  " label '" + label + "'");
    }
  }
}

}  // namespace

void ValidateDataset(const Dataset& data) {
  if (data.n_individuals < 0 || data.n_types < 0) {
    throw std::invalid_argument("negative dataset dimensions");
  }
  CheckLabels(data.individual_labels, data.n_individuals, "individual");
  CheckLabels(data.type_labels, data.n_types, "type");
  for (std::size_t r = 0; r < data.records.size(); ++r) {
    const InteractionRecord& rec = data.records[r];
    if (rec.winner < 0 || rec.winner >= data.n_individuals || rec.loser < 0 ||
        rec.loser >= data.n_individuals) {
      throw std::invalid_argument("record " + std::to_string(r) +
                                  " has an individual index out of range");
    }
    if (rec.itype < 0 || rec.itype >= data.n_types) {
      throw std::invalid_argument("record " + std::to_string(r) +
                                  " has a type index out of range");
    }
    if (rec.winner == rec.loser) {
      throw std::invalid_argument("record " + std::to_string(r) +
                                  " is a self-interaction");
    }
  }
}

Dataset MakeIndexedDataset(int n_individuals, int n_types,
                           std::vector<InteractionRecord> records) {
  Dataset data;
  data.n_individuals = n_individuals;
  data.n_types = n_types;
  data.records = std::move(records);
  for (int i = 0; i < n_individuals; ++i) {
    data.individual_labels.push_back(std::to_string(i));
  }
  for (int t = 0; t < n_types; ++t) {
    data.type_labels.push_back(std::to_string(t));
  }
  ValidateDataset(data);
  return data;
}

}  // namespace multirank
