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

#ifndef ROOMVERB_WAV_H_
#define ROOMVERB_WAV_H_

#include <filesystem>

#include "roomverb/core.h"

namespace roomverb {

// Reads a mono RIFF/WAVE file holding 16-bit PCM or 32-bit IEEE float
// samples. PCM16 is normalized by 1/32768.
//
// Throws kIoError when the file cannot be opened, kUnsupportedFormat for
// multichannel or other codecs, and kCorruptFile for truncated or malformed
// chunks.
MonoSignal ReadWav(const std::filesystem::path& path);

// Writes a mono IEEE float32 WAV. Values stored as float32 read back
// bit-exact. Throws kIoError on failure.
void WriteWav(const MonoSignal& signal, const std::filesystem::path& path);

inline void WriteWav(const ImpulseResponse& ir,
                     const std::filesystem::path& path) {
  WriteWav(AsMonoSignal(ir), path);
}

}  // namespace roomverb

#endif  // ROOMVERB_WAV_H_
