#include "stance/synth.hpp"

#include <gtest/gtest.h>

#include <set>

#include "pipeline_fixture.hpp"
#include "test_util.hpp"

namespace stance {
namespace {

SynthConfig small() {
  SynthConfig cfg;
  cfg.n_users_pos = 20;
  cfg.n_users_neg = 6;
  cfg.seed = 17;
  return cfg;
}

TEST(Synth, DeterministicFiles) {
  const auto& map = stance::testing::shipped_resources().char_map;
  stance::testing::TempDir a, b;
  write_synth(a.path(), generate(small(), map));
  write_synth(b.path(), generate(small(), map));
  for (const char* f : {"tweets.jsonl", "users.jsonl", "gold.tsv"}) {
    EXPECT_EQ(stance::testing::read_text(a / f), stance::testing::read_text(b / f)) << f;
    EXPECT_FALSE(stance::testing::read_text(a / f).empty());
  }
  EXPECT_EQ(load_tweets(a / "tweets.jsonl").skipped, 0u);
}

TEST(Synth, TagsMatchGoldStanceWithoutNoise) {
  const auto& res = stance::testing::shipped_resources();
  const auto corpus = generate(small(), res.char_map);
  const auto users = dedupe_users(corpus.users);
  EXPECT_EQ(users.size(), 26u);
  for (const auto& u : users) {
    const auto s = user_stance(u.tags, res.tags);
    ASSERT_TRUE(s.has_value()) << u.user_id;
    EXPECT_EQ(*s, corpus.user_stance.at(u.user_id));
  }
}

TEST(Synth, TagNoiseLeavesUsersUnlabelable) {
  auto cfg = small();
  cfg.tag_noise = 1.0;
  const auto corpus = generate(cfg);
  for (const auto& u : corpus.users) EXPECT_TRUE(u.tags.empty());
}

TEST(Synth, OnTopicTweetsPassTheTopicFilter) {
  auto cfg = small();
  cfg.off_topic_rate = 0.0;
  cfg.ad_rate = 0.0;
  cfg.traditional_rate = 0.0;
  const auto& res = stance::testing::shipped_resources();
  const auto split = split_retweets(generate(cfg).tweets);
  for (const auto& t : split.tweets) {
    const auto doc = preprocess_tweet(t, res);
    ASSERT_TRUE(doc.has_value()) << t.text;
    EXPECT_TRUE(is_tcm_topic(*doc, res.terminology)) << t.text;
  }
}

TEST(Synth, GoldCoversEveryFlattenedPost) {
  const auto corpus = generate(small());
  const auto split = split_retweets(corpus.tweets);
  ASSERT_EQ(split.tweets.size(), corpus.gold.size());
  for (std::size_t i = 0; i < split.tweets.size(); ++i) EXPECT_EQ(split.tweets[i].id, corpus.gold[i].first);
}

TEST(Synth, ClassVocabulariesAreDisjoint) {
  const auto& v = synth_vocabulary();
  std::set<std::string> sup(v.supporting.begin(), v.supporting.end());
  for (const auto& w : v.opposing) EXPECT_FALSE(sup.contains(w)) << w;
  for (const auto& w : v.shared) {
    EXPECT_FALSE(sup.contains(w)) << w;
  }
}

TEST(Synth, ValidateRejectsBadConfig) {
  auto cfg = small();
  cfg.signal_strength = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = small();
  cfg.n_users_neg = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = small();
  cfg.tweets_min = 5;
  cfg.tweets_max = 2;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace stance
