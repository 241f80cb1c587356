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

#include "distress/vocabulary.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "distress/error.hpp"

namespace distress {

Vocabulary Vocabulary::from_counts(const std::map<std::string, std::uint64_t>& counts,
                                   std::uint64_t min_count) {
  std::vector<Entry> entries;
  for (const auto& [word, count] : counts) {
    if (count >= min_count) entries.push_back({word, count});
  }
  if (entries.empty()) {
    throw ConfigError(fmt::format("no word occurs at least {} times", min_count));
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.count != b.count ? a.count > b.count : a.word < b.word;
  });
  return from_entries(std::move(entries), min_count);
}

Vocabulary Vocabulary::from_entries(std::vector<Entry> entries, std::uint64_t min_count) {
  Vocabulary v;
  v.entries_ = std::move(entries);
  v.min_count_ = min_count;
  v.index_.reserve(v.entries_.size());
  for (std::size_t i = 0; i < v.entries_.size(); ++i) {
    if (!v.index_.emplace(v.entries_[i].word, static_cast<std::int32_t>(i)).second) {
      throw DataError(fmt::format("duplicate vocabulary word '{}'", v.entries_[i].word));
    }
  }
  return v;
}

std::optional<std::int32_t> Vocabulary::find(std::string_view word) const {
  const auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::uint64_t> Vocabulary::frequencies() const {
  std::vector<std::uint64_t> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.count);
  return out;
}

std::vector<std::int32_t> Vocabulary::encode(const std::vector<std::string>& tokens) const {
  std::vector<std::int32_t> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (const auto id = find(t)) ids.push_back(*id);
  }
  return ids;
}

Vocabulary build_vocab(const CorpusStore& store, std::uint64_t min_count,
                       bool all_sentences) {
  std::map<std::string, std::uint64_t> counts;
  for (const Sentence& s : store.sentences()) {
    if (!all_sentences && !s.sentence_id) continue;
    for (const auto& t : s.tokens) ++counts[t];
  }
  return Vocabulary::from_counts(counts, min_count);
}

}  // namespace distress
