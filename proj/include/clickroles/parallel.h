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

#ifndef CLICKROLES_PARALLEL_H_
#define CLICKROLES_PARALLEL_H_

#include <cstddef>
#include <span>

namespace clickroles {

// Resolves a requested worker count; 0 means the OpenMP runtime default.
int ResolveThreads(int requested);

// Sets the process-wide OpenMP default used when a kernel is given 0.
void SetDefaultThreads(int threads);

// Sum with a fixed blocking that does not depend on the thread count, so
// parallel and serial callers get bit-identical results.
double DeterministicSum(std::span<const double> values, int threads = 0);

}  // namespace clickroles

#endif  // CLICKROLES_PARALLEL_H_
