// Copyright 2026 The Distress Authors.
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

#ifndef DISTRESS_HUFFMAN_HPP_
#define DISTRESS_HUFFMAN_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace distress {

// Binary Huffman code over a vocabulary. Internal nodes are numbered
// 0 .. |V|-2 in merge order, so the root is |V|-2. codes[w] and paths[w]
// run from the root down to the leaf of word w.
struct HuffmanTree {
  std::vector<std::vector<std::uint8_t>> codes;
  std::vector<std::vector<std::int32_t>> paths;

  std::size_t leaves() const { return codes.size(); }
  std::size_t internal_nodes() const { return codes.empty() ? 0 : codes.size() - 1; }

  bool operator==(const HuffmanTree&) const = default;
};

// Merges the two lightest nodes first, ties broken by lowest node id (leaves
// are ids 0..|V|-1, merged nodes follow). The lighter node gets bit 0.
// Throws ConfigError when fewer than two words are given.
HuffmanTree build_huffman(std::span<const std::uint64_t> frequencies);

}  // namespace distress

#endif  // DISTRESS_HUFFMAN_HPP_
