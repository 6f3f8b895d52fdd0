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

#include "clickroles/parallel.h"

#include <omp.h>

#include <algorithm>
#include <vector>

namespace clickroles {

namespace {
constexpr size_t kSumBlock = 4096;
}  // namespace

int ResolveThreads(int requested) {
  if (requested > 0) return requested;
  return std::max(1, omp_get_max_threads());
}

void SetDefaultThreads(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

double DeterministicSum(std::span<const double> values, int threads) {
  const size_t n = values.size();
  const size_t blocks = (n + kSumBlock - 1) / kSumBlock;
  std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static) num_threads(ResolveThreads(threads))
  for (long b = 0; b < static_cast<long>(blocks); ++b) {
    const size_t lo = b * kSumBlock;
    const size_t hi = std::min(n, lo + kSumBlock);
    double s = 0.0;
    for (size_t i = lo; i < hi; ++i) s += values[i];
    partial[b] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace clickroles
