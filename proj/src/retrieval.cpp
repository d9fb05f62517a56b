// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 KernelGuard Contributors

#include "kernelguard/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace kernelguard::retrieval {

namespace {

using nlohmann::json;

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool is_token_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

double idf_for(double doc_count, double df) {
  return std::log(1.0 + (doc_count - df + 0.5) / (df + 0.5));
}

struct SelectedTerm {
  std::string term;
  double idf = 0.0;
};

// Up to 25 query terms per field, ranked by tf*idf in the query document,
// ties broken by the term itself.
std::vector<SelectedTerm> select_query_terms(const TermCounts& query_terms, double doc_count,
                                             Field field, const InvertedIndex* base,
                                             const InvertedIndex* extra) {
  struct Scored {
    const std::string* term;
    double weight;
    double idf;
  };
  std::vector<Scored> scored;
  scored.reserve(query_terms.size());
  for (const auto& [term, tf] : query_terms) {
    double df = 0.0;
    if (base) df += base->doc_freq(field, term);
    if (extra) df += extra->doc_freq(field, term);
    double idf = idf_for(doc_count, df);
    scored.push_back({&term, static_cast<double>(tf) * idf, idf});
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return *a.term < *b.term;
  });
  if (scored.size() > kMaxQueryTermsPerField) scored.resize(kMaxQueryTermsPerField);
  std::vector<SelectedTerm> selected;
  selected.reserve(scored.size());
  for (const auto& s : scored) selected.push_back({*s.term, s.idf});
  return selected;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (is_token_char(c)) {
      current.push_back(ascii_lower(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

TermCounts shingles(const std::vector<std::string>& tokens, int min_size, int max_size) {
  TermCounts counts;
  for (int size = min_size; size <= max_size; ++size) {
    if (tokens.size() < static_cast<std::size_t>(size)) continue;
    for (std::size_t start = 0; start + size <= tokens.size(); ++start) {
      std::string joined = tokens[start];
      for (int j = 1; j < size; ++j) {
        joined.push_back(' ');
        joined += tokens[start + j];
      }
      ++counts[joined];
    }
  }
  return counts;
}

TermCounts edge_ngrams(const std::vector<std::string>& tokens, int min_gram, int max_gram) {
  TermCounts counts;
  for (const auto& token : tokens) {
    int longest = std::min<int>(max_gram, static_cast<int>(token.size()));
    for (int len = min_gram; len <= longest; ++len) {
      ++counts[token.substr(0, static_cast<std::size_t>(len))];
    }
  }
  return counts;
}

AnalyzedDocument analyze(const std::string& doc_id, std::string_view text) {
  AnalyzedDocument doc;
  doc.doc_id = doc_id;
  auto tokens = tokenize(text);
  doc.shingle_terms = shingles(tokens);
  doc.edgegram_terms = edge_ngrams(tokens);
  for (const auto& [term, tf] : doc.shingle_terms) doc.shingle_length += tf;
  for (const auto& [term, tf] : doc.edgegram_terms) doc.edgegram_length += tf;
  return doc;
}

void InvertedIndex::add(const std::string& doc_id, const std::string& text, std::string meta) {
  if (id_to_ordinal_.count(doc_id)) {
    throw RetrievalError(RetrievalErrorKind::DuplicateDocId,
                         "document id already indexed: " + doc_id);
  }
  auto analyzed = analyze(doc_id, text);
  auto ordinal = static_cast<std::uint32_t>(docs_.size());

  DocInfo info;
  info.id = doc_id;
  info.text = text;
  info.meta = std::move(meta);
  info.inv_len[static_cast<int>(Field::Shingle)] =
      analyzed.shingle_length > 0 ? 1.0 / std::sqrt(static_cast<double>(analyzed.shingle_length))
                                  : 0.0;
  info.inv_len[static_cast<int>(Field::EdgeGram)] =
      analyzed.edgegram_length > 0 ? 1.0 / std::sqrt(static_cast<double>(analyzed.edgegram_length))
                                   : 0.0;
  docs_.push_back(std::move(info));
  id_to_ordinal_.emplace(doc_id, ordinal);

  for (const auto& [term, tf] : analyzed.shingle_terms) {
    postings_[static_cast<int>(Field::Shingle)][term].emplace_back(ordinal, tf);
  }
  for (const auto& [term, tf] : analyzed.edgegram_terms) {
    postings_[static_cast<int>(Field::EdgeGram)][term].emplace_back(ordinal, tf);
  }
  sorted_ = false;
}

void InvertedIndex::finalize() {
  if (sorted_) return;
  for (auto& field : postings_) {
    for (auto& [term, list] : field) {
      std::sort(list.begin(), list.end(),
                [this](const auto& a, const auto& b) { return docs_[a.first].id < docs_[b.first].id; });
    }
  }
  sorted_ = true;
}

bool InvertedIndex::contains(const std::string& doc_id) const {
  return id_to_ordinal_.count(doc_id) > 0;
}

std::uint32_t InvertedIndex::doc_freq(Field field, const std::string& term) const {
  const auto& map = postings_[static_cast<int>(field)];
  auto it = map.find(term);
  return it == map.end() ? 0 : static_cast<std::uint32_t>(it->second.size());
}

const std::vector<std::pair<std::uint32_t, std::uint32_t>>* InvertedIndex::postings(
    Field field, const std::string& term) const {
  const auto& map = postings_[static_cast<int>(field)];
  auto it = map.find(term);
  return it == map.end() ? nullptr : &it->second;
}

std::vector<std::string> InvertedIndex::terms(Field field) const {
  std::vector<std::string> out;
  out.reserve(postings_[static_cast<int>(field)].size());
  for (const auto& [term, list] : postings_[static_cast<int>(field)]) out.push_back(term);
  return out;
}

CandidateSet InvertedIndex::more_like_this(std::string_view query_text, std::size_t limit) const {
  return more_like_this_merged(this, nullptr, query_text, limit);
}

CandidateSet more_like_this_merged(const InvertedIndex* base, const InvertedIndex* extra,
                                   std::string_view query_text, std::size_t limit) {
  const std::size_t base_count = base ? base->doc_count() : 0;
  const std::size_t extra_count = extra ? extra->doc_count() : 0;
  const std::size_t total = base_count + extra_count;

  CandidateSet result;
  result.limit = limit;
  if (total == 0) return result;

  auto query = analyze("__query__", query_text);
  std::vector<double> scores(total, 0.0);

  auto run_field = [&](Field field, const TermCounts& terms) {
    auto selected =
        select_query_terms(terms, static_cast<double>(total), field, base, extra);
    for (const auto& sel : selected) {
      if (base) {
        if (const auto* list = base->postings(field, sel.term)) {
          for (const auto& [ordinal, tf] : *list) {
            scores[ordinal] += static_cast<double>(tf) * sel.idf *
                               base->docs_[ordinal].inv_len[static_cast<int>(field)];
          }
        }
      }
      if (extra) {
        if (const auto* list = extra->postings(field, sel.term)) {
          for (const auto& [ordinal, tf] : *list) {
            scores[base_count + ordinal] += static_cast<double>(tf) * sel.idf *
                                            extra->docs_[ordinal].inv_len[static_cast<int>(field)];
          }
        }
      }
    }
  };
  run_field(Field::Shingle, query.shingle_terms);
  run_field(Field::EdgeGram, query.edgegram_terms);

  std::vector<std::size_t> matched;
  for (std::size_t i = 0; i < total; ++i) {
    if (scores[i] > 0.0) matched.push_back(i);
  }
  auto id_of = [&](std::size_t i) -> const std::string& {
    return i < base_count ? base->docs_[i].id : extra->docs_[i - base_count].id;
  };
  std::sort(matched.begin(), matched.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return id_of(a) < id_of(b);
  });
  if (matched.size() > limit) matched.resize(limit);

  result.entries.reserve(matched.size());
  for (std::size_t i : matched) result.entries.push_back({id_of(i), scores[i]});
  return result;
}

void InvertedIndex::save(std::ostream& out) const {
  json header;
  header["magic"] = std::string(kIndexMagic);
  header["version"] = 1;
  header["doc_count"] = docs_.size();
  out << header.dump() << "\n";
  for (const auto& doc : docs_) {
    json j;
    j["id"] = doc.id;
    j["text"] = doc.text;
    if (!doc.meta.empty()) j["meta"] = doc.meta;
    out << j.dump() << "\n";
  }
  for (int f = 0; f < kFieldCount; ++f) {
    for (const auto& [term, list] : postings_[f]) {
      // persisted postings are sorted by doc id
      auto sorted_list = list;
      std::sort(sorted_list.begin(), sorted_list.end(), [this](const auto& a, const auto& b) {
        return docs_[a.first].id < docs_[b.first].id;
      });
      json j;
      j["f"] = f;
      j["t"] = term;
      json p = json::array();
      for (const auto& [ordinal, tf] : sorted_list) p.push_back({ordinal, tf});
      j["p"] = std::move(p);
      out << j.dump() << "\n";
    }
  }
}

InvertedIndex InvertedIndex::load(std::istream& in) {
  auto bad = [](const std::string& why) -> RetrievalError {
    return RetrievalError(RetrievalErrorKind::BadIndexFile, "bad index file: " + why);
  };

  std::string line;
  if (!std::getline(in, line)) throw bad("missing header");
  json header = json::parse(line, nullptr, false);
  if (header.is_discarded() || header.value("magic", "") != kIndexMagic) {
    throw bad("wrong magic string");
  }
  const auto doc_count = header.value("doc_count", std::size_t{0});

  InvertedIndex index;
  index.docs_.reserve(doc_count);
  for (std::size_t i = 0; i < doc_count; ++i) {
    if (!std::getline(in, line)) throw bad("truncated document table");
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw bad("malformed document record");
    DocInfo info;
    info.id = j.value("id", "");
    info.text = j.value("text", "");
    info.meta = j.value("meta", "");
    if (info.id.empty()) throw bad("document record without id");
    if (index.id_to_ordinal_.count(info.id)) throw bad("duplicate document id " + info.id);
    index.id_to_ordinal_.emplace(info.id, static_cast<std::uint32_t>(index.docs_.size()));
    index.docs_.push_back(std::move(info));
  }

  std::uint64_t lengths[kFieldCount] = {0, 0};
  std::vector<std::uint64_t> doc_lengths[kFieldCount];
  for (int f = 0; f < kFieldCount; ++f) doc_lengths[f].assign(doc_count, 0);

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw bad("malformed postings record");
    int f = j.value("f", -1);
    if (f < 0 || f >= kFieldCount) throw bad("postings record with unknown field");
    std::string term = j.value("t", "");
    auto& list = index.postings_[f][term];
    for (const auto& entry : j.at("p")) {
      std::uint32_t ordinal = entry.at(0).get<std::uint32_t>();
      std::uint32_t tf = entry.at(1).get<std::uint32_t>();
      if (ordinal >= doc_count) throw bad("postings ordinal out of range");
      list.emplace_back(ordinal, tf);
      doc_lengths[f][ordinal] += tf;
    }
  }
  for (std::size_t i = 0; i < doc_count; ++i) {
    for (int f = 0; f < kFieldCount; ++f) {
      lengths[f] = doc_lengths[f][i];
      index.docs_[i].inv_len[f] =
          lengths[f] > 0 ? 1.0 / std::sqrt(static_cast<double>(lengths[f])) : 0.0;
    }
  }
  index.sorted_ = true;  // persisted postings are already id-sorted
  return index;
}

}  // namespace kernelguard::retrieval
