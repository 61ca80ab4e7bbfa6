#include "actnext/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <unordered_set>

#include "actnext/error.hpp"

namespace fs = std::filesystem;

namespace actnext {

namespace {

bool is_token_char(unsigned char c) {
  return std::isalnum(c) != 0 || c >= 0x80;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<std::string> tokenize(const std::string& raw_text) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char c : raw_text) {
    if (is_token_char(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

Vocabulary build_vocabulary(const WordCorpus& corpus, std::int64_t min_count) {
  std::unordered_map<std::string, std::int64_t> counts;
  for (const auto& t : corpus.tokens) {
    if (t == kDocBoundary) continue;
    ++counts[t];
  }
  std::vector<std::pair<std::string, std::int64_t>> kept;
  for (auto& [w, c] : counts)
    if (c >= min_count) kept.emplace_back(w, c);
  if (kept.empty()) throw UsageError("empty vocabulary");
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  Vocabulary v;
  v.words.reserve(kept.size());
  v.counts.reserve(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    v.index.emplace(kept[i].first, i);
    v.words.push_back(std::move(kept[i].first));
    v.counts.push_back(kept[i].second);
  }
  return v;
}

CorpusStats corpus_stats(const WordCorpus& corpus) {
  CorpusStats s;
  std::unordered_set<std::string_view> seen;
  for (const auto& t : corpus.tokens) {
    if (t == kDocBoundary) continue;
    ++s.total_tokens;
    seen.insert(t);
  }
  s.unique_tokens = static_cast<std::int64_t>(seen.size());
  return s;
}

double coverage(const Vocabulary& domain_vocab, const WordCorpus& corpus) {
  if (domain_vocab.size() == 0) throw UsageError("coverage: empty domain vocabulary");
  std::unordered_set<std::string_view> present;
  for (const auto& t : corpus.tokens)
    if (t != kDocBoundary) present.insert(t);
  std::size_t hit = 0;
  for (const auto& w : domain_vocab.words)
    if (present.count(w)) ++hit;
  return static_cast<double>(hit) / static_cast<double>(domain_vocab.size());
}

void save_corpus(const WordCorpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write file: " + path);
  bool first = true;
  for (const auto& t : corpus.tokens) {
    if (!first) out << ' ';
    out << t;
    first = false;
  }
  out << '\n';
}

WordCorpus load_corpus(const std::string& path) {
  WordCorpus c;
  c.name = fs::path(path).stem().string();
  std::string text = read_file(path);
  std::string cur;
  for (char ch : text) {
    if (ch == ' ' || ch == '\n' || ch == '\r' || ch == '\t') {
      if (!cur.empty()) c.tokens.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) c.tokens.push_back(std::move(cur));
  return c;
}

WordCorpus ingest_directory(const std::string& dir, const std::string& corpus_name) {
  std::vector<std::pair<std::string, std::string>> docs;  // id, path
  fs::path manifest = fs::path(dir) / "manifest.tsv";
  if (fs::exists(manifest)) {
    std::ifstream in(manifest);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto tab = line.find('\t');
      if (tab == std::string::npos)
        throw UsageError("malformed manifest line: " + line);
      docs.emplace_back(line.substr(0, tab), (fs::path(dir) / line.substr(tab + 1)).string());
    }
  } else {
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(dir))
      if (e.is_regular_file() && e.path().extension() == ".txt")
        names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    for (const auto& n : names) docs.emplace_back(n, (fs::path(dir) / n).string());
  }
  if (docs.empty()) throw UsageError("no documents found in " + dir);

  std::vector<std::future<std::vector<std::string>>> jobs;
  jobs.reserve(docs.size());
  for (const auto& [id, path] : docs)
    jobs.push_back(std::async(std::launch::async,
                              [p = path] { return tokenize(read_file(p)); }));

  WordCorpus c;
  c.name = corpus_name;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    auto toks = jobs[i].get();  // merge in manifest order
    if (i > 0) c.tokens.push_back(kDocBoundary);
    c.tokens.insert(c.tokens.end(), std::make_move_iterator(toks.begin()),
                    std::make_move_iterator(toks.end()));
    c.source_manifest.push_back(docs[i].first);
  }
  return c;
}

}  // namespace actnext
