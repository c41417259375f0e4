// Copyright 2026 The trafficqaoa Authors
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

#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace trafficqaoa {

// A computational basis state. Bit u of the integer is qubit/variable u;
// bit value 1 means q_u = 1, i.e. spin z_u = -1.
using Bitstring = std::uint64_t;

// All experiment randomness flows through this engine, seeded explicitly.
using Rng = std::mt19937_64;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Text form lists qubit 0 first.
std::string to_bitstring(Bitstring state, std::size_t n);
Bitstring parse_bitstring(std::string_view text);

inline int spin(Bitstring state, std::size_t u) {
  return ((state >> u) & 1U) ? -1 : 1;
}

inline Bitstring state_from_bits(const std::vector<std::uint8_t>& bits) {
  Bitstring s = 0;
  for (std::size_t u = 0; u < bits.size(); ++u)
    if (bits[u]) s |= Bitstring{1} << u;
  return s;
}

// Unbiased draw in [0, n) from raw engine output.
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);

// Uniform double in [0, 1).
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// 64-bit FNV-1a, used for stable content digests.
std::uint64_t fnv1a(std::string_view data);

// Independent child seed for task `index` under `base` (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);
std::string hex_digest(std::uint64_t h);

}  // namespace trafficqaoa
