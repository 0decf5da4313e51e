#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stance/corpus.hpp"
#include "stance/resources.hpp"
#include "stance/stance.hpp"

namespace stance {

// Parameters of the synthetic corpus. The default user split 187:29 keeps the
// roughly 6.4:1 supporting/opposing user ratio of the real data.
struct SynthConfig {
  std::size_t n_users_pos = 187;
  std::size_t n_users_neg = 29;
  std::size_t tweets_min = 10;
  std::size_t tweets_max = 30;
  // Pool sizes, clamped to the built-in vocabularies.
  std::size_t vocab_shared = 60;
  std::size_t vocab_pos = 30;
  std::size_t vocab_neg = 30;
  // Probability that a tweet carries keywords of a class.
  double signal_strength = 0.8;
  // Probability that a user's tag list is empty (unlabelable user).
  double tag_noise = 0.0;
  // Probability that a tweet's keywords come from the other class.
  double label_noise = 0.0;
  double off_topic_rate = 0.1;
  double ad_rate = 0.02;
  double retweet_rate = 0.1;
  double traditional_rate = 0.1;
  double duplicate_user_rate = 0.05;
  int start_year = 2012;
  unsigned start_month = 1;
  unsigned months = 26;
  std::uint64_t seed = 42;

  void validate() const;
};

struct SynthCorpus {
  std::vector<RawTweet> tweets;
  std::vector<UserProfile> users;                     // may contain duplicates
  std::vector<std::pair<std::string, Stance>> gold;   // flattened tweet id -> author stance
  std::map<std::string, Stance> user_stance;
};

// The vocabularies the generator draws from.
struct SynthVocabulary {
  std::vector<std::string> shared;
  std::vector<std::string> supporting;  // regimen and trust terms
  std::vector<std::string> opposing;    // toxicity and controversy terms
  std::vector<std::string> terminology;
  std::vector<std::string> support_tags;
  std::vector<std::string> oppose_tags;
  std::vector<std::string> search_tags;
  std::vector<std::string> ad_words;
  std::vector<std::string> fillers;  // stopwords
};
const SynthVocabulary& synth_vocabulary();

// Deterministic for a given config. `char_map` (traditional to simplified) is
// inverted to write some tweets in traditional characters; pass an empty map
// to disable.
SynthCorpus generate(const SynthConfig& cfg, const CharMap& char_map = {});

// tweets.jsonl, users.jsonl and gold.tsv ("tweet_id<TAB>stance").
void write_synth(const std::filesystem::path& dir, const SynthCorpus& corpus);
std::string gold_tsv(const SynthCorpus& corpus);

}  // namespace stance
