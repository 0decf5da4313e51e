#include "stance/preprocess.hpp"

#include <gtest/gtest.h>

#include "stance/random.hpp"
#include "stance/utf8.hpp"
#include "test_util.hpp"

namespace stance {
namespace {

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) out += t;
  return out;
}

TEST(ToSimplified, Examples) {
  const auto map = parse_char_map("醫\t医\n藥\t药\n");
  EXPECT_EQ(to_simplified("醫生", map), "医生");
  EXPECT_EQ(to_simplified("", map), "");
  EXPECT_EQ(to_simplified("abc", map), "abc");
  EXPECT_EQ(to_simplified("中醫藥", map), "中医药");
}

TEST(ToSimplified, IdempotentWithShippedMap) {
  const auto map = load_char_map(default_resource_dir() / "t2s_chars.tsv");
  const std::string text = "中醫藥學會說這個療效很顯著";
  const auto once = to_simplified(text, map);
  EXPECT_EQ(to_simplified(once, map), once);
  EXPECT_EQ(utf8::char_count(once), utf8::char_count(text));
}

TEST(StripEntities, Examples) {
  EXPECT_EQ(strip_entities("@shen 看 http://t.cn/ab1"), "看");
  EXPECT_EQ(strip_entities("好[哈哈]棒"), "好棒");
  EXPECT_EQ(strip_entities("平文"), "平文");
}

TEST(StripEntities, OtherRules) {
  EXPECT_EQ(strip_entities("转发微博 中医 :) 好 :-("), "中医 好");
  EXPECT_EQ(strip_entities("回复@小王:中医"), ":中医");
  EXPECT_EQ(strip_entities("[这是一个很长的括号内容呢]"), "[这是一个很长的括号内容呢]");
  EXPECT_EQ(strip_entities("[a[b]"), "[a");
  EXPECT_EQ(strip_entities("  a \t  b  "), "a b");
  EXPECT_EQ(strip_entities("see https:// x"), "see https:// x");
}

TEST(Segment, Examples) {
  EXPECT_EQ(segment("中医爱好", TermList{"中医", "爱好"}), (std::vector<std::string>{"中医", "爱好"}));
  EXPECT_EQ(segment("中医药大学", TermList{"中医", "中医药", "大学"}),
            (std::vector<std::string>{"中医药", "大学"}));
  EXPECT_EQ(segment("X中医", TermList{"中医"}), (std::vector<std::string>{"X", "中医"}));
  EXPECT_TRUE(segment("", TermList{"中医"}).empty());
}

TEST(Segment, ConcatenationIdentityOnRandomText) {
  const TermList lexicon{"中医", "中医药", "药", "大学", "a", "ab", "中医药大学生活"};
  const std::vector<std::string> alphabet{"中", "医", "药", "大", "学", "a", "b", " ", "，", "\xFF", "\xE4\xB8"};
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    std::string text;
    const std::size_t n = uniform_index(rng, 30);
    for (std::size_t j = 0; j < n; ++j) text += alphabet[uniform_index(rng, alphabet.size())];
    const auto tokens = segment(text, lexicon);
    EXPECT_EQ(join(tokens), text);
    for (const auto& t : tokens) EXPECT_FALSE(t.empty());
  }
}

TEST(RemoveStopwords, Examples) {
  EXPECT_EQ(remove_stopwords({"哦", "中医"}, TermList{"哦"}), std::vector<std::string>{"中医"});
  EXPECT_TRUE(remove_stopwords({}, TermList{"哦"}).empty());
  EXPECT_EQ(remove_stopwords({"中医"}, TermList{}), std::vector<std::string>{"中医"});
  EXPECT_EQ(remove_stopwords({"，", " ", "中医", "!?", "针灸"}, TermList{}),
            (std::vector<std::string>{"中医", "针灸"}));
}

TEST(IsAdvertisement, Examples) {
  EXPECT_TRUE(is_advertisement({"大", "促销"}, TermList{"促销"}));
  EXPECT_FALSE(is_advertisement({"中医"}, TermList{"促销"}));
  EXPECT_FALSE(is_advertisement({"中医", "促销"}, TermList{}));
}

Resources small_resources() {
  Resources r;
  r.segmentation = TermList{"中医", "爱好", "促销", "哦"};
  r.terminology = TermList{"中医"};
  r.stopwords = TermList{"哦"};
  r.ad_keywords = TermList{"促销"};
  r.char_map = parse_char_map("醫\t医");
  return r;
}

Tweet tweet(std::string text) { return Tweet{"1#0", "u1", std::move(text), Timestamp{}}; }

TEST(PreprocessTweet, Examples) {
  const auto r = small_resources();
  EXPECT_FALSE(preprocess_tweet(tweet("大促销 中医"), r).has_value());
  EXPECT_FALSE(preprocess_tweet(tweet("@a http://x.co"), r).has_value());
  const auto doc = preprocess_tweet(tweet("@a 中醫爱好 http://x.co"), r);
  ASSERT_TRUE(doc.has_value());
  EXPECT_EQ(doc->tokens, (std::vector<std::string>{"中医", "爱好"}));
  EXPECT_EQ(doc->tweet_id, "1#0");
  EXPECT_EQ(doc->user_id, "u1");
  EXPECT_FALSE(doc->label.has_value());
  EXPECT_FALSE(preprocess_tweet(tweet("哦，哦"), r).has_value());
}

TEST(PreprocessTweet, ShippedResourcesExample) {
  const auto r = Resources::load(ResourcePaths::defaults_in(default_resource_dir()));
  const auto doc = preprocess_tweet(tweet("@a 中医爱好 http://x.co"), r);
  ASSERT_TRUE(doc.has_value());
  EXPECT_EQ(doc->tokens, (std::vector<std::string>{"中医", "爱好"}));
}

TEST(Documents, JsonlRoundTrip) {
  std::vector<Document> docs{
      Document{"1#0", "u1", *parse_timestamp("2013-11-02T08:30:00"), {"中医", "爱好"}, std::nullopt},
      Document{"2#1", "u2", *parse_timestamp("2013-11-03T08:30:00"), {"反对"}, Stance::Opposing},
  };
  stance::testing::TempDir dir;
  save_documents(dir / "docs.jsonl", docs);
  EXPECT_EQ(load_documents(dir / "docs.jsonl"), docs);
}

}  // namespace
}  // namespace stance
