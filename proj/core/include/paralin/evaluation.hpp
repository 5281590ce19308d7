// core/include/paralin/evaluation.hpp

// Copyright 2026  paralin authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef PARALIN_EVALUATION_HPP_
#define PARALIN_EVALUATION_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace paralin {

struct ConfusionMatrix {
  std::vector<std::string> class_names;          // sorted truth classes
  std::vector<std::vector<std::int64_t>> counts;  // rows = true, columns = predicted

  std::int64_t total() const;
};

// Classes are the sorted distinct truth labels; a predicted label outside
// that set is a data error.
ConfusionMatrix confusion_matrix(const std::vector<std::string> &truth,
                                 const std::vector<std::string> &predicted);

// Unweighted average recall: mean over classes of diagonal / row total.
// Chance level is 1/K regardless of class imbalance.
double uar(const ConfusionMatrix &cm);
double uar(const std::vector<std::string> &truth, const std::vector<std::string> &predicted);

// Label CSV: header `utterance_id,label`, one row per utterance.
std::vector<std::pair<std::string, std::string>> load_label_csv(const std::string &path);

}  // namespace paralin

#endif  // PARALIN_EVALUATION_HPP_
