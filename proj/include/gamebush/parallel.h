// Copyright 2026 The gamebush Authors.
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

#ifndef GAMEBUSH_PARALLEL_H_
#define GAMEBUSH_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace gamebush {

// Worker count: GB_THREADS when set (minimum 1), else hardware concurrency.
int WorkerCount();

// Runs fn(i) for i in [0, n). Calls made from inside a worker run serially,
// so nested loops do not multiply threads. Exceptions are rethrown after all
// workers finish (the one from the lowest index wins).
void ParallelFor(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace gamebush

#endif  // GAMEBUSH_PARALLEL_H_
