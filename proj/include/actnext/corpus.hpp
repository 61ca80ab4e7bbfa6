#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace actnext {

// Reserved document separator. Contains characters the tokenizer never
// emits, so it cannot collide with a real token, and it never enters a
// vocabulary or any count.
inline const std::string kDocBoundary = "<doc>";

struct WordCorpus {
  std::string name;
  std::vector<std::string> tokens;  // may contain kDocBoundary entries
  std::vector<std::string> source_manifest;
};

struct Vocabulary {
  std::vector<std::string> words;                   // ordered: count desc, then lexicographic
  std::unordered_map<std::string, std::size_t> index;  // word -> position in `words`
  std::vector<std::int64_t> counts;                 // same order as `words`

  std::size_t size() const { return words.size(); }
  bool contains(const std::string& w) const { return index.count(w) != 0; }
  // position of w, or npos
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t lookup(const std::string& w) const {
    auto it = index.find(w);
    return it == index.end() ? npos : it->second;
  }
};

struct CorpusStats {
  std::int64_t total_tokens = 0;
  std::int64_t unique_tokens = 0;
};

// Lowercases and splits on anything that is not a letter or digit.
// Bytes >= 0x80 are kept as token characters so UTF-8 words survive intact
// (no case mapping outside ASCII).
std::vector<std::string> tokenize(const std::string& raw_text);

// Words occurring >= min_count, ordered by descending count then
// lexicographic. Boundary tokens are excluded. Throws UsageError
// "empty vocabulary" when nothing survives the threshold.
Vocabulary build_vocabulary(const WordCorpus& corpus, std::int64_t min_count);

CorpusStats corpus_stats(const WordCorpus& corpus);

// |domain words present in corpus| / |domain words|
double coverage(const Vocabulary& domain_vocab, const WordCorpus& corpus);

// Corpus file: tokens separated by single spaces, kDocBoundary between
// documents, UTF-8.
void save_corpus(const WordCorpus& corpus, const std::string& path);
WordCorpus load_corpus(const std::string& path);

// Builds a corpus from an ingest directory: one UTF-8 text file per
// document. If `dir`/manifest.tsv exists (id<TAB>filename per line) it
// fixes the document order; otherwise *.txt files are taken in name order.
// Documents are tokenized in parallel and merged in manifest order.
WordCorpus ingest_directory(const std::string& dir, const std::string& corpus_name);

}  // namespace actnext
