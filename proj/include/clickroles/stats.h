// Copyright 2026 The clickroles Authors.
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

#ifndef CLICKROLES_STATS_H_
#define CLICKROLES_STATS_H_

#include <optional>
#include <span>
#include <vector>

namespace clickroles {

// Linear-interpolation quantile between order statistics of an already
// sorted sample: h = (n - 1) p, x[floor h] + frac(h) (x[floor h + 1] - x[floor h]).
double SortedQuantile(std::span<const double> sorted, double p);

// Same quantile computed by selection; reorders `values`. Empty -> nullopt.
std::optional<double> Quantile(std::span<double> values, double p);

// Median with the mean-of-two-central-values rule. Empty -> nullopt.
std::optional<double> Median(std::vector<double> values);

double Mean(std::span<const double> values);

double Pearson(std::span<const double> x, std::span<const double> y);

// Pearson correlation of average ranks.
double Spearman(std::span<const double> x, std::span<const double> y);

// 1-based ranks, ties receive their average rank.
std::vector<double> AverageRanks(std::span<const double> values);

}  // namespace clickroles

#endif  // CLICKROLES_STATS_H_
