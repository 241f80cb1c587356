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

#ifndef DISTRESS_CORPUS_HPP_
#define DISTRESS_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "distress/date.hpp"

namespace distress {

using EntityId = std::string;
// Dense id assigned to mention-bearing sentences, in corpus order.
using SentenceId = std::int64_t;

struct Document {
  std::string doc_id;
  Date date;
  std::string text;
};

struct SurfaceForm {
  std::vector<std::string> tokens;
  bool case_sensitive = false;

  bool operator==(const SurfaceForm&) const = default;
};

struct EntityLexicon {
  std::map<EntityId, std::vector<SurfaceForm>> entries;
  std::map<EntityId, std::vector<std::string>> groups;

  bool contains(const EntityId& id) const { return entries.count(id) != 0; }
  // All group ids, sorted.
  std::vector<std::string> group_ids() const;
  // Entities belonging to `group`, sorted.
  std::vector<EntityId> members(const std::string& group) const;

  bool operator==(const EntityLexicon&) const = default;
};

// Lexicon lines: entity_id<TAB>groups(comma-sep)<TAB>form[<TAB>form...].
// A form prefixed "cs:" is matched case-sensitively.
EntityLexicon parse_lexicon(std::string_view contents);
EntityLexicon read_lexicon(const std::filesystem::path& path);
std::string format_lexicon(const EntityLexicon& lexicon);

// A sentence ends at '.', '!' or '?' followed by whitespace and an uppercase
// letter, or at end of text. A period right after a lone uppercase letter
// ("I.K.B.") or closing a short token with an inner period ("e.g.") never
// ends a sentence.
std::vector<std::string> split_sentences(std::string_view text);

// Whitespace split with leading/trailing punctuation split off as one token
// per character. Lowercases ASCII letters when `fold_case` is set.
std::vector<std::string> tokenize(std::string_view sentence, bool fold_case = true);

// Entities with a surface form occurring contiguously in the sentence.
// `raw_tokens` are the same tokens before case folding and are used for
// case-sensitive forms.
std::set<EntityId> match_entities(const std::vector<std::string>& folded_tokens,
                                  const std::vector<std::string>& raw_tokens,
                                  const EntityLexicon& lexicon);
std::set<EntityId> match_entities(const std::vector<std::string>& tokens,
                                  const EntityLexicon& lexicon);

struct Sentence {
  std::optional<SentenceId> sentence_id;  // set iff mentions is non-empty
  std::size_t doc_index = 0;
  int position = 0;
  Date date;
  std::vector<std::string> tokens;
  std::vector<EntityId> mentions;  // sorted, unique
  std::string text;

  bool operator==(const Sentence&) const = default;
};

struct DocumentInfo {
  std::string doc_id;
  Date date;
  std::size_t first_sentence = 0;
  std::size_t sentence_count = 0;

  bool operator==(const DocumentInfo&) const = default;
};

struct CorpusCounts {
  std::size_t documents = 0;
  std::size_t sentences = 0;
  std::size_t mention_sentences = 0;
};

// Ingested corpus. Immutable after construction; sentences of a document are
// stored contiguously in position order.
class CorpusStore {
 public:
  CorpusStore() = default;
  CorpusStore(EntityLexicon lexicon, std::vector<DocumentInfo> documents,
              std::vector<Sentence> sentences);

  const EntityLexicon& lexicon() const { return lexicon_; }
  const std::vector<DocumentInfo>& documents() const { return documents_; }
  const std::vector<Sentence>& sentences() const { return sentences_; }
  // Indices into sentences() of mention-bearing sentences, by sentence_id.
  const std::vector<std::size_t>& mention_index() const { return mention_index_; }

  std::size_t mention_count() const { return mention_index_.size(); }
  const Sentence& by_id(SentenceId id) const;
  const std::string& doc_id(const Sentence& s) const {
    return documents_[s.doc_index].doc_id;
  }
  // Sentence `delta` positions away within the same document, if any.
  const Sentence* neighbor(const Sentence& s, int delta) const;

  CorpusCounts counts() const;

  bool operator==(const CorpusStore&) const = default;

 private:
  EntityLexicon lexicon_;
  std::vector<DocumentInfo> documents_;
  std::vector<Sentence> sentences_;
  std::vector<std::size_t> mention_index_;
};

// Corpus lines: doc_id<TAB>YYYY-MM-DD<TAB>text with \t, \n escaped. Throws
// DataError naming the line for malformed records, bad dates and duplicate
// document ids.
std::vector<Document> parse_corpus(std::string_view contents);
CorpusStore build_store(const std::vector<Document>& documents, EntityLexicon lexicon);
CorpusStore ingest(const std::filesystem::path& corpus_file,
                   const std::filesystem::path& lexicon_file);

std::string format_store(const CorpusStore& store);
CorpusStore parse_store(std::string_view contents);
void write_store(const std::filesystem::path& path, const CorpusStore& store);
CorpusStore read_store(const std::filesystem::path& path);

}  // namespace distress

#endif  // DISTRESS_CORPUS_HPP_
