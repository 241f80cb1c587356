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

#include "distress/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include "distress/error.hpp"
#include "distress/text_io.hpp"

namespace distress {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_alpha(char c) { return is_upper(c) || (c >= 'a' && c <= 'z'); }
bool is_punct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && std::ispunct(u);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Lines of `contents` without trailing '\r'.
std::vector<std::string_view> lines_of(std::string_view contents) {
  std::vector<std::string_view> lines = split(contents, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (auto& line : lines) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  }
  return lines;
}

// True when the period at text[dot] must not end a sentence.
bool abbreviation_period(std::string_view text, std::size_t dot) {
  std::size_t begin = dot;
  while (begin > 0 && !is_space(text[begin - 1])) --begin;
  const std::string_view word = text.substr(begin, dot - begin);
  if (word.empty()) return false;
  const char last = word.back();
  if (is_upper(last) && (word.size() == 1 || !is_alpha(word[word.size() - 2]))) {
    return true;
  }
  return word.size() <= 3 && word.find('.') != std::string_view::npos;
}

bool contains_at(const std::vector<std::string>& tokens, std::size_t at,
                 const std::vector<std::string>& form) {
  if (at + form.size() > tokens.size()) return false;
  return std::equal(form.begin(), form.end(), tokens.begin() + at);
}

}  // namespace

std::vector<std::string> EntityLexicon::group_ids() const {
  std::set<std::string> ids;
  for (const auto& [entity, gs] : groups) ids.insert(gs.begin(), gs.end());
  return {ids.begin(), ids.end()};
}

std::vector<EntityId> EntityLexicon::members(const std::string& group) const {
  std::vector<EntityId> out;
  for (const auto& [entity, gs] : groups) {
    if (std::find(gs.begin(), gs.end(), group) != gs.end()) out.push_back(entity);
  }
  return out;
}

EntityLexicon parse_lexicon(std::string_view contents) {
  EntityLexicon lexicon;
  std::size_t line_no = 0;
  for (std::string_view line : lines_of(contents)) {
    ++line_no;
    if (trim(line).empty() || line.front() == '#') continue;
    const auto fields = split(line, '\t');
    if (fields.size() < 3 || fields[0].empty()) {
      throw DataError(fmt::format("lexicon line {}: expected entity_id, groups and "
                                  "at least one surface form",
                                  line_no));
    }
    const EntityId id(fields[0]);
    if (lexicon.contains(id)) {
      throw DataError(fmt::format("lexicon line {}: duplicate entity '{}'", line_no, id));
    }
    std::vector<SurfaceForm> forms;
    for (std::size_t i = 2; i < fields.size(); ++i) {
      std::string_view raw = fields[i];
      SurfaceForm form;
      if (raw.starts_with("cs:")) {
        form.case_sensitive = true;
        raw.remove_prefix(3);
      }
      form.tokens = tokenize(raw, !form.case_sensitive);
      if (form.tokens.empty()) {
        throw DataError(
            fmt::format("lexicon line {}: empty surface form for '{}'", line_no, id));
      }
      forms.push_back(std::move(form));
    }
    std::vector<std::string> groups;
    if (!fields[1].empty()) {
      for (std::string_view g : split(fields[1], ',')) {
        g = trim(g);
        if (g.empty()) {
          throw DataError(fmt::format("lexicon line {}: empty group id", line_no));
        }
        groups.emplace_back(g);
      }
    }
    lexicon.entries.emplace(id, std::move(forms));
    lexicon.groups.emplace(id, std::move(groups));
  }
  return lexicon;
}

EntityLexicon read_lexicon(const std::filesystem::path& path) {
  return parse_lexicon(read_file(path));
}

std::string format_lexicon(const EntityLexicon& lexicon) {
  std::string out;
  for (const auto& [id, forms] : lexicon.entries) {
    out += id;
    out += '\t';
    const auto it = lexicon.groups.find(id);
    if (it != lexicon.groups.end()) {
      out += fmt::format("{}", fmt::join(it->second, ","));
    }
    for (const auto& form : forms) {
      out += '\t';
      if (form.case_sensitive) out += "cs:";
      out += fmt::format("{}", fmt::join(form.tokens, " "));
    }
    out += '\n';
  }
  return out;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  auto emit = [&](std::size_t end) {
    const std::string_view piece = trim(text.substr(start, end - start));
    if (!piece.empty()) out.emplace_back(piece);
    start = end;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    std::size_t j = i + 1;
    if (j >= text.size() || !is_space(text[j])) continue;
    while (j < text.size() && is_space(text[j])) ++j;
    if (j >= text.size() || !is_upper(text[j])) continue;
    if (c == '.' && abbreviation_period(text, i)) continue;
    emit(i + 1);
  }
  emit(text.size());
  return out;
}

std::vector<std::string> tokenize(std::string_view sentence, bool fold_case) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() && is_space(sentence[i])) ++i;
    std::size_t j = i;
    while (j < sentence.size() && !is_space(sentence[j])) ++j;
    std::string_view chunk = sentence.substr(i, j - i);
    i = j;
    if (chunk.empty()) continue;

    std::size_t lead = 0;
    while (lead < chunk.size() && is_punct(chunk[lead])) ++lead;
    std::size_t trail = chunk.size();
    while (trail > lead && is_punct(chunk[trail - 1])) --trail;

    for (std::size_t k = 0; k < lead; ++k) tokens.emplace_back(1, chunk[k]);
    if (trail > lead) {
      std::string core(chunk.substr(lead, trail - lead));
      if (fold_case) {
        for (char& ch : core) {
          if (is_upper(ch)) ch = static_cast<char>(ch - 'A' + 'a');
        }
      }
      tokens.push_back(std::move(core));
    }
    for (std::size_t k = trail; k < chunk.size(); ++k) tokens.emplace_back(1, chunk[k]);
  }
  return tokens;
}

std::set<EntityId> match_entities(const std::vector<std::string>& folded_tokens,
                                  const std::vector<std::string>& raw_tokens,
                                  const EntityLexicon& lexicon) {
  std::set<EntityId> found;
  for (const auto& [id, forms] : lexicon.entries) {
    for (const auto& form : forms) {
      const auto& tokens = form.case_sensitive ? raw_tokens : folded_tokens;
      bool hit = false;
      for (std::size_t at = 0; at < tokens.size() && !hit; ++at) {
        hit = contains_at(tokens, at, form.tokens);
      }
      if (hit) {
        found.insert(id);
        break;
      }
    }
  }
  return found;
}

std::set<EntityId> match_entities(const std::vector<std::string>& tokens,
                                  const EntityLexicon& lexicon) {
  return match_entities(tokens, tokens, lexicon);
}

CorpusStore::CorpusStore(EntityLexicon lexicon, std::vector<DocumentInfo> documents,
                         std::vector<Sentence> sentences)
    : lexicon_(std::move(lexicon)),
      documents_(std::move(documents)),
      sentences_(std::move(sentences)) {
  for (std::size_t i = 0; i < sentences_.size(); ++i) {
    const auto& s = sentences_[i];
    if (!s.sentence_id) continue;
    if (*s.sentence_id != static_cast<SentenceId>(mention_index_.size())) {
      throw DataError(fmt::format("sentence ids are not dense at sentence {}", i));
    }
    mention_index_.push_back(i);
  }
}

const Sentence& CorpusStore::by_id(SentenceId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= mention_index_.size()) {
    throw DataError(fmt::format("unknown sentence id {}", id));
  }
  return sentences_[mention_index_[id]];
}

const Sentence* CorpusStore::neighbor(const Sentence& s, int delta) const {
  const DocumentInfo& doc = documents_[s.doc_index];
  const long pos = static_cast<long>(s.position) + delta;
  if (pos < 0 || pos >= static_cast<long>(doc.sentence_count)) return nullptr;
  return &sentences_[doc.first_sentence + static_cast<std::size_t>(pos)];
}

CorpusCounts CorpusStore::counts() const {
  return {documents_.size(), sentences_.size(), mention_index_.size()};
}

std::vector<Document> parse_corpus(std::string_view contents) {
  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  std::size_t line_no = 0;
  for (std::string_view line : lines_of(contents)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 3 || fields[0].empty()) {
      throw DataError(fmt::format(
          "corpus line {}: malformed record (expected doc_id, date, text)", line_no));
    }
    const auto date = parse_date(fields[1]);
    if (!date) {
      throw DataError(
          fmt::format("corpus line {}: invalid date '{}'", line_no, fields[1]));
    }
    std::string id(fields[0]);
    if (!seen.insert(id).second) {
      throw DataError(fmt::format("corpus line {}: duplicate doc_id '{}'", line_no, id));
    }
    docs.push_back({std::move(id), *date, unescape_field(fields[2])});
  }
  return docs;
}

CorpusStore build_store(const std::vector<Document>& documents, EntityLexicon lexicon) {
  std::vector<DocumentInfo> infos;
  std::vector<Sentence> sentences;
  SentenceId next_id = 0;
  for (std::size_t d = 0; d < documents.size(); ++d) {
    const Document& doc = documents[d];
    DocumentInfo info{doc.doc_id, doc.date, sentences.size(), 0};
    for (const std::string& text : split_sentences(doc.text)) {
      auto raw = tokenize(text, false);
      if (raw.empty()) continue;
      auto folded = tokenize(text, true);
      const auto found = match_entities(folded, raw, lexicon);
      Sentence s;
      s.doc_index = d;
      s.position = static_cast<int>(info.sentence_count);
      s.date = doc.date;
      s.tokens = std::move(folded);
      s.mentions.assign(found.begin(), found.end());
      s.text = text;
      if (!s.mentions.empty()) s.sentence_id = next_id++;
      sentences.push_back(std::move(s));
      ++info.sentence_count;
    }
    infos.push_back(std::move(info));
  }
  return CorpusStore(std::move(lexicon), std::move(infos), std::move(sentences));
}

CorpusStore ingest(const std::filesystem::path& corpus_file,
                   const std::filesystem::path& lexicon_file) {
  EntityLexicon lexicon = read_lexicon(lexicon_file);
  return build_store(parse_corpus(read_file(corpus_file)), std::move(lexicon));
}

// Store file layout, one record per line:
//   #distress-store<TAB>1
//   L<TAB>lexicon line
//   D<TAB>doc_id<TAB>date<TAB>sentence_count
//   S<TAB>sentence_id or -<TAB>doc_index<TAB>position<TAB>mentions<TAB>tokens<TAB>text
std::string format_store(const CorpusStore& store) {
  std::string out = "#distress-store\t1\n";
  const std::string lexicon = format_lexicon(store.lexicon());
  for (const auto& line : lines_of(lexicon)) {
    out += "L\t";
    out += line;
    out += '\n';
  }
  for (const auto& doc : store.documents()) {
    out += fmt::format("D\t{}\t{}\t{}\n", doc.doc_id, format_date(doc.date),
                       doc.sentence_count);
  }
  for (const auto& s : store.sentences()) {
    out += fmt::format("S\t{}\t{}\t{}\t{}\t{}\t{}\n",
                       s.sentence_id ? std::to_string(*s.sentence_id) : "-",
                       s.doc_index, s.position, fmt::join(s.mentions, ","),
                       escape_field(fmt::format("{}", fmt::join(s.tokens, " "))),
                       escape_field(s.text));
  }
  return out;
}

namespace {

template <typename T>
T parse_number(std::string_view text, std::size_t line_no) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw DataError(fmt::format("store line {}: bad number '{}'", line_no, text));
  }
  return value;
}

}  // namespace

CorpusStore parse_store(std::string_view contents) {
  const auto lines = lines_of(contents);
  if (lines.empty() || lines[0] != "#distress-store\t1") {
    throw DataError("store: missing or unsupported header");
  }
  std::string lexicon_text;
  std::vector<DocumentInfo> docs;
  std::vector<Sentence> sentences;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::string_view line = lines[i];
    if (line.starts_with("L\t")) {
      lexicon_text += line.substr(2);
      lexicon_text += '\n';
      continue;
    }
    const auto f = split(line, '\t');
    if (f[0] == "D" && f.size() == 4) {
      const auto date = parse_date(f[2]);
      if (!date) throw DataError(fmt::format("store line {}: bad date", line_no));
      const std::size_t first = docs.empty()
                                    ? 0
                                    : docs.back().first_sentence + docs.back().sentence_count;
      docs.push_back({std::string(f[1]), *date, first,
                      parse_number<std::size_t>(f[3], line_no)});
    } else if (f[0] == "S" && f.size() == 7) {
      Sentence s;
      if (f[1] != "-") s.sentence_id = parse_number<SentenceId>(f[1], line_no);
      s.doc_index = parse_number<std::size_t>(f[2], line_no);
      s.position = parse_number<int>(f[3], line_no);
      if (s.doc_index >= docs.size()) {
        throw DataError(fmt::format("store line {}: unknown document", line_no));
      }
      s.date = docs[s.doc_index].date;
      if (!f[4].empty()) {
        for (auto m : split(f[4], ',')) s.mentions.emplace_back(m);
      }
      const std::string joined = unescape_field(f[5]);
      for (auto t : split(joined, ' ')) {
        if (!t.empty()) s.tokens.emplace_back(t);
      }
      s.text = unescape_field(f[6]);
      sentences.push_back(std::move(s));
    } else {
      throw DataError(fmt::format("store line {}: malformed record", line_no));
    }
  }
  return CorpusStore(parse_lexicon(lexicon_text), std::move(docs), std::move(sentences));
}

void write_store(const std::filesystem::path& path, const CorpusStore& store) {
  write_file(path, format_store(store));
}

CorpusStore read_store(const std::filesystem::path& path) {
  return parse_store(read_file(path));
}

}  // namespace distress
