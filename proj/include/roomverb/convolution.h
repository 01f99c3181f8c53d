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

#ifndef ROOMVERB_CONVOLUTION_H_
#define ROOMVERB_CONVOLUTION_H_

#include <span>
#include <vector>

namespace roomverb {

// Full linear convolution, length a.size() + b.size() - 1 (empty if either
// input is empty). Short kernels are summed directly; longer ones go
// through a real FFT of the padded length.
std::vector<double> LinearConvolve(std::span<const double> a,
                                   std::span<const double> b);

}  // namespace roomverb

#endif  // ROOMVERB_CONVOLUTION_H_
