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

#include "distress/huffman.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <utility>

#include "distress/error.hpp"

namespace distress {

HuffmanTree build_huffman(std::span<const std::uint64_t> frequencies) {
  const std::size_t n = frequencies.size();
  if (n < 2) throw ConfigError("Huffman coding needs at least two words");

  using Node = std::pair<std::uint64_t, std::size_t>;  // (weight, node id)
  std::priority_queue<Node, std::vector<Node>, std::greater<>> heap;
  for (std::size_t i = 0; i < n; ++i) heap.emplace(frequencies[i], i);

  // parent/bit indexed by node id; ids >= n are internal.
  std::vector<std::size_t> parent(2 * n - 1, 0);
  std::vector<std::uint8_t> bit(2 * n - 1, 0);
  std::size_t next = n;
  while (heap.size() > 1) {
    const Node a = heap.top();
    heap.pop();
    const Node b = heap.top();
    heap.pop();
    parent[a.second] = next;
    parent[b.second] = next;
    bit[a.second] = 0;
    bit[b.second] = 1;
    heap.emplace(a.first + b.first, next);
    ++next;
  }
  const std::size_t root = 2 * n - 2;

  HuffmanTree tree;
  tree.codes.resize(n);
  tree.paths.resize(n);
  for (std::size_t w = 0; w < n; ++w) {
    auto& code = tree.codes[w];
    auto& path = tree.paths[w];
    for (std::size_t node = w; node != root; node = parent[node]) {
      code.push_back(bit[node]);
      path.push_back(static_cast<std::int32_t>(parent[node] - n));
    }
    std::reverse(code.begin(), code.end());
    std::reverse(path.begin(), path.end());
  }
  return tree;
}

}  // namespace distress
