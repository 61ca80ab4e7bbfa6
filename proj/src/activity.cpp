#include "actnext/activity.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "actnext/error.hpp"

namespace actnext {

namespace {

void append_element(std::string& out, const std::vector<std::string>& tokens) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
}

std::vector<std::string> split_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ') {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace

std::string Activity::key() const {
  std::string out;
  const std::vector<std::string>* elems[6] = {&left.verb,  &left.instrument,
                                              &left.structure, &right.verb,
                                              &right.instrument, &right.structure};
  for (int i = 0; i < 6; ++i) {
    if (i) out += '|';
    append_element(out, *elems[i]);
  }
  return out;
}

Activity Activity::from_key(const std::string& key) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : key) {
    if (c == '|') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  if (parts.size() != 6) throw UsageError("activity key must have 6 elements: " + key);
  Activity a;
  a.left.verb = split_tokens(parts[0]);
  a.left.instrument = split_tokens(parts[1]);
  a.left.structure = split_tokens(parts[2]);
  a.right.verb = split_tokens(parts[3]);
  a.right.instrument = split_tokens(parts[4]);
  a.right.structure = split_tokens(parts[5]);
  return a;
}

bool Activity::idle() const {
  return left.verb.empty() && left.instrument.empty() && left.structure.empty() &&
         right.verb.empty() && right.instrument.empty() && right.structure.empty();
}

std::vector<std::string> Activity::tokens() const {
  std::vector<std::string> out;
  const std::vector<std::string>* elems[6] = {&left.verb,  &left.instrument,
                                              &left.structure, &right.verb,
                                              &right.instrument, &right.structure};
  for (const auto* e : elems) out.insert(out.end(), e->begin(), e->end());
  return out;
}

std::size_t ActivitySet::insert(const Activity& a) {
  auto [it, fresh] = index.emplace(a.key(), items.size());
  if (fresh) items.push_back(a);
  return it->second;
}

Dataset Dataset::from_sequences(std::string name, std::vector<InterventionSequence> seqs) {
  Dataset ds;
  ds.name = std::move(name);
  ds.sequences = std::move(seqs);

  std::unordered_map<std::string, std::int64_t> token_counts;
  std::vector<std::string> token_order;
  for (const auto& seq : ds.sequences) {
    if (seq.activities.empty())
      throw UsageError("intervention " + seq.id + " has no activities");
    for (const auto& a : seq.activities) {
      ds.alpha.insert(a);
      for (const auto& t : a.tokens()) {
        auto [it, fresh] = token_counts.emplace(t, 0);
        if (fresh) token_order.push_back(t);
        ++it->second;
      }
    }
  }
  // vocabulary ordered by descending count then lexicographic
  std::sort(token_order.begin(), token_order.end(),
            [&](const std::string& a, const std::string& b) {
              auto ca = token_counts[a], cb = token_counts[b];
              if (ca != cb) return ca > cb;
              return a < b;
            });
  for (std::size_t i = 0; i < token_order.size(); ++i) {
    ds.word_vocab.index.emplace(token_order[i], i);
    ds.word_vocab.counts.push_back(token_counts[token_order[i]]);
  }
  ds.word_vocab.words = std::move(token_order);
  return ds;
}

std::vector<std::string> encode_activity(const Activity& a, int pad_to) {
  if (pad_to < 1) throw UsageError("encode_activity: pad_to must be >= 1");
  std::vector<std::string> out = a.tokens();
  if (out.size() > static_cast<std::size_t>(pad_to)) out.resize(pad_to);
  while (out.size() < static_cast<std::size_t>(pad_to)) out.push_back(kPadToken);
  return out;
}

Window make_window(const InterventionSequence& seq, std::size_t t, std::size_t n) {
  if (n < 1) throw UsageError("make_window: n must be >= 1");
  if (t < 1 || t >= seq.length())
    throw UsageError("make_window: no prediction target at t=" + std::to_string(t) +
                     " (length " + std::to_string(seq.length()) + ")");
  Window w;
  w.sequence_id = seq.id;
  w.t = t;
  w.n = n;
  w.slots.resize(n);
  for (std::size_t slot = 0; slot < n; ++slot) {
    // slot k holds a_{t-n+1+k} (1-based); earlier positions are padding
    std::int64_t pos = static_cast<std::int64_t>(t) - static_cast<std::int64_t>(n) +
                       static_cast<std::int64_t>(slot) + 1;
    if (pos >= 1) w.slots[slot] = seq.activities[static_cast<std::size_t>(pos - 1)];
  }
  return w;
}

DatasetStats dataset_stats(const Dataset& ds) {
  DatasetStats s;
  s.n_interventions = ds.sequences.size();
  if (!ds.sequences.empty()) {
    double sum = 0.0;
    for (const auto& seq : ds.sequences) sum += static_cast<double>(seq.length());
    s.activities_per_intervention_mean = sum / static_cast<double>(ds.sequences.size());
    double var = 0.0;
    for (const auto& seq : ds.sequences) {
      double d = static_cast<double>(seq.length()) - s.activities_per_intervention_mean;
      var += d * d;
    }
    s.activities_per_intervention_std =
        std::sqrt(var / static_cast<double>(ds.sequences.size()));
  }
  s.n_unique_activities = ds.alpha.size();
  std::unordered_set<std::string> verbs, instruments, structures;
  for (const auto& a : ds.alpha.items) {
    for (const auto* hand : {&a.left, &a.right}) {
      verbs.insert(hand->verb.begin(), hand->verb.end());
      instruments.insert(hand->instrument.begin(), hand->instrument.end());
      structures.insert(hand->structure.begin(), hand->structure.end());
    }
  }
  s.n_verbs = verbs.size();
  s.n_instruments = instruments.size();
  s.n_structures = structures.size();
  return s;
}

ShareLevel parse_share_level(const std::string& s) {
  if (s == "activity") return ShareLevel::Activity;
  if (s == "verb") return ShareLevel::Verb;
  if (s == "instrument") return ShareLevel::Instrument;
  if (s == "structure") return ShareLevel::Structure;
  throw UsageError("unknown share level: " + s +
                   " (expected activity|verb|instrument|structure)");
}

namespace {

std::unordered_set<std::string> level_items(const Dataset& ds, ShareLevel level) {
  std::unordered_set<std::string> out;
  for (const auto& a : ds.alpha.items) {
    if (level == ShareLevel::Activity) {
      out.insert(a.key());
      continue;
    }
    for (const auto* hand : {&a.left, &a.right}) {
      const auto& elem = level == ShareLevel::Verb ? hand->verb
                         : level == ShareLevel::Instrument ? hand->instrument
                                                           : hand->structure;
      out.insert(elem.begin(), elem.end());
    }
  }
  return out;
}

}  // namespace

double shared_proportion(const Dataset& a, const Dataset& b, ShareLevel level) {
  if (a.sequences.empty() || b.sequences.empty())
    throw UsageError("shared_proportion: datasets must be non-empty");
  auto sa = level_items(a, level);
  auto sb = level_items(b, level);
  if (sa.empty() && sb.empty()) return 0.0;
  std::size_t common = 0;
  for (const auto& x : sa)
    if (sb.count(x)) ++common;
  return 200.0 * static_cast<double>(common) /
         static_cast<double>(sa.size() + sb.size());
}

WordCorpus dataset_corpus(const Dataset& ds) {
  WordCorpus c;
  c.name = ds.name;
  for (std::size_t i = 0; i < ds.sequences.size(); ++i) {
    if (i) c.tokens.push_back(kDocBoundary);
    for (const auto& a : ds.sequences[i].activities) {
      auto toks = a.tokens();
      c.tokens.insert(c.tokens.end(), toks.begin(), toks.end());
    }
    c.source_manifest.push_back(ds.sequences[i].id);
  }
  return c;
}

}  // namespace actnext
