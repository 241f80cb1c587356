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

#ifndef DISTRESS_VOCABULARY_HPP_
#define DISTRESS_VOCABULARY_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "distress/corpus.hpp"

namespace distress {

// Words ordered by descending frequency, ties broken lexicographically.
// Word ids are positions in that order.
class Vocabulary {
 public:
  struct Entry {
    std::string word;
    std::uint64_t count = 0;
    bool operator==(const Entry&) const = default;
  };

  Vocabulary() = default;
  // Throws ConfigError when no word reaches `min_count`.
  static Vocabulary from_counts(const std::map<std::string, std::uint64_t>& counts,
                                std::uint64_t min_count);
  // Rebuilds from entries already in canonical order (model loading).
  static Vocabulary from_entries(std::vector<Entry> entries, std::uint64_t min_count);

  std::size_t size() const { return entries_.size(); }
  const std::string& word(std::size_t id) const { return entries_[id].word; }
  std::uint64_t count(std::size_t id) const { return entries_[id].count; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::uint64_t min_count() const { return min_count_; }
  std::optional<std::int32_t> find(std::string_view word) const;
  std::vector<std::uint64_t> frequencies() const;

  // Maps tokens to ids, dropping out-of-vocabulary tokens.
  std::vector<std::int32_t> encode(const std::vector<std::string>& tokens) const;

  bool operator==(const Vocabulary& other) const {
    return entries_ == other.entries_ && min_count_ == other.min_count_;
  }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::int32_t> index_;
  std::uint64_t min_count_ = 1;
};

// Counts tokens over mention-bearing sentences, or over every stored sentence
// when `all_sentences` is set.
Vocabulary build_vocab(const CorpusStore& store, std::uint64_t min_count,
                       bool all_sentences);

}  // namespace distress

#endif  // DISTRESS_VOCABULARY_HPP_
