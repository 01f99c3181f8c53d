/*
Copyright 2026 The roomverb Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef ROOMVERB_PARALLEL_H_
#define ROOMVERB_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace roomverb {

// Worker count: REVERB_CALIB_THREADS when set to a positive integer,
// otherwise the hardware concurrency (at least 1).
int WorkerCount();

// Runs body(i) for i in [0, count). Each index is visited exactly once;
// callers must write results into per-index slots so the outcome does not
// depend on scheduling. The first exception thrown by any body is rethrown.
void ParallelFor(std::size_t count,
                 const std::function<void(std::size_t)>& body,
                 int max_workers = 0);

}  // namespace roomverb

#endif  // ROOMVERB_PARALLEL_H_
