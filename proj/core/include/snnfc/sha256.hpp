// Copyright 2026 The snnfc Authors
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

#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <string>

namespace snnfc {

// Minimal streaming SHA-256 used for dataset/split/model fingerprints in
// run manifests.
class Sha256 {
 public:
  Sha256();
  void update(const void* data, size_t len);
  std::array<uint8_t, 32> digest();       // finalizes; object not reusable after
  std::string hex_digest();

  static std::string hex(const void* data, size_t len);
  static std::string hex_of_string(const std::string& s) { return hex(s.data(), s.size()); }
  static std::string hex_of_file(const std::string& path);  // throws on I/O error

 private:
  void process_block(const uint8_t* block);

  uint32_t h_[8];
  uint64_t total_len_ = 0;
  uint8_t buffer_[64];
  size_t buffer_len_ = 0;
  bool finalized_ = false;
};

}  // namespace snnfc
