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

#include "multirank/io.hpp"

#include <cmath>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "multirank/format.hpp"

namespace multirank {
namespace {

using Json = nlohmann::ordered_json;

std::vector<std::string> SplitCsvRow(std::string_view row, int line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < row.size(); ++i) {
    const char c = row[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < row.size() && row[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      if (!field.empty() || was_quoted) {
        throw InputError(line, "stray quote inside a field");
      }
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else {
      if (was_quoted) throw InputError(line, "text after a closing quote");
      field += c;
    }
  }
  if (quoted) throw InputError(line, "unterminated quoted field");
  fields.push_back(std::move(field));
  return fields;
}

std::string QuoteCsvField(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

class LabelRegistry {
 public:
  int Intern(const std::string& label) {
    auto [it, inserted] =
        index_.try_emplace(label, static_cast<int>(labels_.size()));
    if (inserted) labels_.push_back(label);
    return it->second;
  }

  std::vector<std::string> Release() { return std::move(labels_); }

 private:
  std::unordered_map<std::string, int> index_;
  std::vector<std::string> labels_;
};

Json Number(double value) {
  if (!std::isfinite(value)) return Json(nullptr);
  return Json(value);
}

std::vector<int> RankPositions(const FitResult& result) {
  std::vector<int> rank(result.ranking.size());
  for (std::size_t k = 0; k < result.ranking.size(); ++k) {
    rank[static_cast<std::size_t>(result.ranking[k])] = static_cast<int>(k + 1);
  }
  return rank;
}

}  // namespace

Dataset ParseInteractions(std::string_view document) {
  if (document.starts_with("\xEF\xBB\xBF")) document.remove_prefix(3);

  LabelRegistry individuals;
  LabelRegistry types;
  Dataset data;
  bool saw_header = false;
  int line = 0;
  std::size_t pos = 0;
  while (pos < document.size()) {
    std::size_t end = document.find('\n', pos);
    if (end == std::string_view::npos) end = document.size();
    std::string_view row = document.substr(pos, end - pos);
    pos = end + 1;
    ++line;
    if (row.ends_with('\r')) row.remove_suffix(1);

    if (!saw_header) {
      if (row != kInteractionHeader) {
        throw InputError(line, "expected header '" +
                                   std::string(kInteractionHeader) + "'");
      }
      saw_header = true;
      continue;
    }
    if (row.empty()) continue;

    const std::vector<std::string> fields = SplitCsvRow(row, line);
    if (fields.size() != 3) {
      throw InputError(line, "expected 3 columns, found " +
                                 std::to_string(fields.size()));
    }
    for (const std::string& field : fields) {
      if (field.empty()) throw InputError(line, "empty label");
    }
    if (fields[0] == fields[1]) {
      throw InputError(line, "self-interaction of '" + fields[0] + "'");
    }
    InteractionRecord rec;
    rec.winner = individuals.Intern(fields[0]);
    rec.loser = individuals.Intern(fields[1]);
    rec.itype = types.Intern(fields[2]);
    data.records.push_back(rec);
  }
  if (!saw_header) throw InputError(1, "missing header");
  if (data.records.empty()) throw InputError(0, "no interaction records");

  data.individual_labels = individuals.Release();
  data.type_labels = types.Release();
  data.n_individuals = static_cast<int>(data.individual_labels.size());
  data.n_types = static_cast<int>(data.type_labels.size());
  return data;
}

std::string SerializeInteractions(const Dataset& data) {
  ValidateDataset(data);
  std::string out(kInteractionHeader);
  out += '\n';
  for (const InteractionRecord& rec : data.records) {
    out += QuoteCsvField(data.individual_labels[rec.winner]);
    out += ',';
    out += QuoteCsvField(data.individual_labels[rec.loser]);
    out += ',';
    out += QuoteCsvField(data.type_labels[rec.itype]);
    out += '\n';
  }
  return out;
}

std::string FitResultJson(const FitResult& result, const Dataset& data) {
  CheckDimensions(data, result.params);
  const std::vector<int> rank = RankPositions(result);

  Json individuals = Json::array();
  for (int i = 0; i < data.n_individuals; ++i) {
    Json entry;
    entry["label"] = data.individual_labels[i];
    entry["strength"] = Number(result.params.strengths[i]);
    entry["score"] = Number(result.scores[i]);
    entry["rank"] = rank[i];
    individuals.push_back(std::move(entry));
  }
  Json types = Json::array();
  for (int t = 0; t < data.n_types; ++t) {
    Json entry;
    entry["label"] = data.type_labels[t];
    entry["valence"] = Number(result.params.valences[t]);
    types.push_back(std::move(entry));
  }
  Json empty_types = Json::array();
  for (int t : result.empty_types) empty_types.push_back(data.type_labels[t]);

  Json doc;
  doc["individuals"] = std::move(individuals);
  doc["types"] = std::move(types);
  Json& diag = doc["diagnostics"];
  diag["mode"] = FitModeName(result.mode);
  diag["iterations"] = result.outer_iterations;
  diag["converged"] = result.converged;
  diag["flipped"] = result.oriented_flipped;
  diag["final_objective"] = Number(result.final_objective());
  diag["saturated"] = result.saturated;
  diag["empty_types"] = std::move(empty_types);
  return doc.dump(2) + "\n";
}

std::string FitIndividualsCsv(const FitResult& result, const Dataset& data) {
  const std::vector<int> rank = RankPositions(result);
  std::string out = "label,score,rank\n";
  for (int i = 0; i < data.n_individuals; ++i) {
    out += QuoteCsvField(data.individual_labels[i]) + "," +
           FormatDouble(result.scores[i]) + "," + std::to_string(rank[i]) +
           "\n";
  }
  return out;
}

std::string FitTypesCsv(const FitResult& result, const Dataset& data) {
  std::string out = "type,valence\n";
  for (int t = 0; t < data.n_types; ++t) {
    out += QuoteCsvField(data.type_labels[t]) + "," +
           FormatDouble(result.params.valences[t]) + "\n";
  }
  return out;
}

std::string TruthJson(const SyntheticTruth& truth) {
  Json doc;
  doc["scores"] = std::vector<double>(truth.true_scores.begin(),
                                      truth.true_scores.end());
  doc["valences"] = std::vector<double>(truth.true_valences.begin(),
                                        truth.true_valences.end());
  Json stances = Json::array();
  for (std::uint8_t s : truth.true_stances) stances.push_back(int{s});
  doc["stances"] = std::move(stances);
  doc["individuals"] = truth.dataset.individual_labels;
  doc["types"] = truth.dataset.type_labels;
  return doc.dump() + "\n";
}

std::string ComparisonCsv(const FitResult& multimodal,
                          const FitResult& baseline, const Dataset& data) {
  const std::vector<int> rank_multi = RankPositions(multimodal);
  const std::vector<int> rank_base = RankPositions(baseline);
  std::string out =
      "label,rank_multimodal,rank_baseline,score_multimodal,score_baseline\n";
  for (int i = 0; i < data.n_individuals; ++i) {
    out += QuoteCsvField(data.individual_labels[i]) + "," +
           std::to_string(rank_multi[i]) + "," + std::to_string(rank_base[i]) +
           "," + FormatDouble(multimodal.scores[i]) + "," +
           FormatDouble(baseline.scores[i]) + "\n";
  }
  return out;
}

}  // namespace multirank
