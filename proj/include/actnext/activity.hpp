#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "actnext/corpus.hpp"

namespace actnext {

// Reserved padding token used by the 15-token activity encoding. Cannot
// collide with real tokens (tokenizer output is alphanumeric only).
inline const std::string kPadToken = "<pad>";

inline constexpr int kDefaultPadTo = 15;

// verb / instrument / structure of one hand, each a possibly-empty token list
struct HandAction {
  std::vector<std::string> verb, instrument, structure;
  bool operator==(const HandAction&) const = default;
};

struct Activity {
  HandAction left, right;
  bool operator==(const Activity&) const = default;

  // canonical text form: the six elements joined by '|' in the order
  // lv|li|ls|rv|ri|rs, tokens inside an element separated by single spaces
  std::string key() const;
  static Activity from_key(const std::string& key);

  bool idle() const;
  // element tokens flattened in encode order, no padding
  std::vector<std::string> tokens() const;
};

struct InterventionSequence {
  std::string id;
  std::vector<Activity> activities;  // a_1 .. a_l, l >= 1
  std::size_t length() const { return activities.size(); }
};

// Ordered set of unique activities (the label space alpha).
struct ActivitySet {
  std::vector<Activity> items;
  std::unordered_map<std::string, std::size_t> index;  // key -> position

  std::size_t size() const { return items.size(); }
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t lookup(const Activity& a) const {
    auto it = index.find(a.key());
    return it == index.end() ? npos : it->second;
  }
  std::size_t insert(const Activity& a);  // returns position, existing or new
};

struct Dataset {
  std::string name;
  std::vector<InterventionSequence> sequences;
  ActivitySet alpha;      // exact set of distinct activities, first-seen order
  Vocabulary word_vocab;  // all tokens appearing in activities

  // derives alpha and word_vocab; the only way to build a consistent Dataset
  static Dataset from_sequences(std::string name, std::vector<InterventionSequence> seqs);
};

// Concatenation lv li ls rv ri rs, right-padded with kPadToken to pad_to,
// truncated from the right when longer.
std::vector<std::string> encode_activity(const Activity& a, int pad_to = kDefaultPadTo);

// n past activities ending at a_t (1-based); slots before the sequence
// start are padding (nullopt).
struct Window {
  std::string sequence_id;
  std::size_t t = 0;
  std::size_t n = 0;
  std::vector<std::optional<Activity>> slots;  // size n; nullopt = padding slot
};

// Requires 1 <= t < l so that the prediction target a_{t+1} exists.
Window make_window(const InterventionSequence& seq, std::size_t t, std::size_t n);

struct DatasetStats {
  std::size_t n_interventions = 0;
  double activities_per_intervention_mean = 0.0;
  double activities_per_intervention_std = 0.0;  // population std
  std::size_t n_unique_activities = 0;
  std::size_t n_verbs = 0;        // distinct tokens, both hands pooled
  std::size_t n_instruments = 0;
  std::size_t n_structures = 0;
};

DatasetStats dataset_stats(const Dataset& ds);

enum class ShareLevel { Activity, Verb, Instrument, Structure };

ShareLevel parse_share_level(const std::string& s);

// Dice coefficient 2|A&B| / (|A|+|B|) over the unique item sets of the
// requested level, in percent.
double shared_proportion(const Dataset& a, const Dataset& b, ShareLevel level);

// One document per intervention; tokens are the activity element tokens in
// encode order, unpadded. Feeds embedding pre-training.
WordCorpus dataset_corpus(const Dataset& ds);

}  // namespace actnext
