#include "stance/corpus.hpp"

#include <gtest/gtest.h>

#include <unordered_set>

#include "stance/error.hpp"
#include "stance/random.hpp"
#include "test_util.hpp"

namespace stance {
namespace {

TEST(LoadTweets, EmptyInput) {
  const auto r = parse_tweets("");
  EXPECT_TRUE(r.records.empty());
  EXPECT_EQ(r.skipped, 0u);
}

TEST(LoadTweets, SingleTweetWithoutRetweet) {
  const auto r = parse_tweets(
      R"({"id":"1","user_id":"u1","text":"中医","created_at":"2013-11-02T08:30:00"})");
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].id, "1");
  EXPECT_EQ(r.records[0].text, "中医");
  EXPECT_EQ(format_timestamp(r.records[0].created_at), "2013-11-02T08:30:00");
  EXPECT_EQ(r.records[0].retweet, nullptr);
}

TEST(LoadTweets, TwoDeepRetweetChain) {
  const auto r = parse_tweets(
      R"({"id":"1","user_id":"u1","text":"a","created_at":"2013-11-02T08:30:00",)"
      R"("retweet":{"id":"2","user_id":"u2","text":"b","created_at":"2013-11-01T08:30:00",)"
      R"("retweet":{"id":"3","user_id":"u3","text":"c","created_at":"2013-10-01T08:30:00"}}})");
  ASSERT_EQ(r.records.size(), 1u);
  ASSERT_NE(r.records[0].retweet, nullptr);
  ASSERT_NE(r.records[0].retweet->retweet, nullptr);
  EXPECT_EQ(r.records[0].retweet->retweet->user_id, "u3");
  EXPECT_EQ(chain_depth(r.records[0]), 2u);
}

TEST(LoadTweets, MalformedLinesAreCountedAndSkipped) {
  const auto r = parse_tweets(
      "not json\n"
      R"({"id":"1","user_id":"u1","text":"a","created_at":"2013-11-02T08:30:00"})"
      "\n"
      R"({"id":"","user_id":"u1","text":"a","created_at":"2013-11-02T08:30:00"})"
      "\n"
      R"({"id":"2","user_id":"u1","text":"a","created_at":"2013-13-02T08:30:00"})"
      "\n\n"
      R"({"id":"3","user_id":"u1","text":"b","created_at":"2013-11-02T08:30:00"})");
  EXPECT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.skipped, 3u);
  EXPECT_EQ(r.records[1].id, "3");
}

TEST(LoadTweets, ClampsLongText) {
  std::string text;
  for (int i = 0; i < 300; ++i) text += "中";
  const auto r = parse_tweets(R"({"id":"1","user_id":"u","text":")" + text +
                              R"(","created_at":"2013-11-02T08:30:00"})");
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].text.size(), kMaxTweetChars * 3);
}

TEST(LoadTweets, MissingFileIsFatal) {
  EXPECT_THROW(load_tweets("/nonexistent/tweets.jsonl"), Error);
}

RawTweet chain(const std::string& id, std::size_t depth) {
  RawTweet root{id, "u0", "t0", Timestamp{}, nullptr};
  std::shared_ptr<const RawTweet> tail;
  for (std::size_t d = depth; d >= 1; --d) {
    auto node = std::make_shared<RawTweet>(
        RawTweet{id + "-" + std::to_string(d), "u" + std::to_string(d), "t" + std::to_string(d), Timestamp{}, tail});
    tail = node;
  }
  root.retweet = tail;
  return root;
}

TEST(SplitRetweets, CountsFollowChainDepth) {
  EXPECT_EQ(split_retweets({chain("a", 0)}).tweets.size(), 1u);
  EXPECT_EQ(split_retweets({chain("a", 1)}).tweets.size(), 2u);
  const auto r = split_retweets({chain("a", 2)});
  ASSERT_EQ(r.tweets.size(), 3u);
  EXPECT_EQ(r.tweets[0].id, "a#0");
  EXPECT_EQ(r.tweets[2].id, "a#2");
  EXPECT_EQ(r.tweets[2].user_id, "u2");
  EXPECT_EQ(r.tweets[2].text, "t2");
}

TEST(SplitRetweets, RejectsOverlyDeepAndCyclicChains) {
  auto r = split_retweets({chain("a", kMaxRetweetDepth + 1), chain("b", kMaxRetweetDepth)});
  EXPECT_EQ(r.rejected, 1u);
  EXPECT_EQ(r.tweets.size(), kMaxRetweetDepth + 1);

  RawTweet cyclic{"x", "u", "t", Timestamp{}, std::make_shared<RawTweet>(RawTweet{"x", "u", "t", Timestamp{}, nullptr})};
  EXPECT_EQ(split_retweets({cyclic}).rejected, 1u);
}

TEST(SplitRetweets, PropertyCountsTextsAndIds) {
  Rng rng(7);
  for (int round = 0; round < 100; ++round) {
    std::vector<RawTweet> raws;
    std::size_t nested = 0;
    const std::size_t n = uniform_index(rng, 20);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t depth = uniform_index(rng, 4);
      nested += depth;
      raws.push_back(chain("r" + std::to_string(i), depth));
    }
    const auto r = split_retweets(raws);
    EXPECT_EQ(r.tweets.size(), raws.size() + nested);
    std::unordered_set<std::string> ids;
    for (const auto& t : r.tweets) EXPECT_TRUE(ids.insert(t.id).second);
    std::size_t k = 0;
    for (const auto& raw : raws) {
      for (const RawTweet* node = &raw; node; node = node->retweet.get()) {
        EXPECT_EQ(r.tweets[k++].text, node->text);
      }
    }
  }
}

TEST(DedupeUsers, Examples) {
  const UserProfile u1{"u1", {"A"}};
  EXPECT_EQ(dedupe_users({u1, u1}), std::vector<UserProfile>{u1});
  EXPECT_EQ(dedupe_users({UserProfile{"u1", {"A"}}, UserProfile{"u1", {"B"}}}),
            (std::vector<UserProfile>{{"u1", {"A", "B"}}}));
  const UserProfile u2{"u2", {}};
  EXPECT_EQ(dedupe_users({u1, u2}), (std::vector<UserProfile>{u1, u2}));
}

TEST(DedupeUsers, CapsTagsAndIsIdempotent) {
  std::vector<UserProfile> users;
  for (int i = 0; i < 15; ++i) users.push_back(UserProfile{"u", {"t" + std::to_string(i)}});
  users.push_back(UserProfile{"v", {"x"}});
  const auto once = dedupe_users(users);
  ASSERT_EQ(once.size(), 2u);
  EXPECT_EQ(once[0].tags.size(), kMaxUserTags);
  EXPECT_EQ(once[0].tags.front(), "t0");
  EXPECT_EQ(dedupe_users(once), once);
}

TEST(LoadUsers, ParsesAndDropsEmptyTags) {
  const auto r = parse_users(R"({"user_id":"u1","tags":["中医"," ","针灸"]})" "\n" R"({"tags":[]})");
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].tags, (std::vector<std::string>{"中医", "针灸"}));
  EXPECT_EQ(r.skipped, 1u);
}

TEST(Corpus, JsonLineRoundTrip) {
  const auto r = parse_tweets(
      R"({"id":"1","user_id":"u1","text":"a","created_at":"2013-11-02T08:30:00",)"
      R"("retweet":{"id":"2","user_id":"u2","text":"b","created_at":"2013-11-01T08:30:00"}})");
  const auto again = parse_tweets(to_json_line(r.records[0]));
  ASSERT_EQ(again.records.size(), 1u);
  EXPECT_EQ(to_json_line(again.records[0]), to_json_line(r.records[0]));
}

}  // namespace
}  // namespace stance
