#include "stance/supervision.hpp"

#include <gtest/gtest.h>

#include "stance/error.hpp"
#include "stance/random.hpp"

namespace stance {
namespace {

Document doc(std::string id, std::string user, std::vector<std::string> tokens) {
  return Document{std::move(id), std::move(user), Timestamp{}, std::move(tokens), std::nullopt};
}

TEST(IsTcmTopic, Examples) {
  const TermList terms{"中药", "针灸", "中医"};
  EXPECT_TRUE(is_tcm_topic(doc("1", "u", {"中药", "针灸"}), terms));
  EXPECT_FALSE(is_tcm_topic(doc("1", "u", {"中药", "中药"}), terms));
  EXPECT_FALSE(is_tcm_topic(doc("1", "u", {"天气"}), terms));
  EXPECT_THROW(is_tcm_topic(doc("1", "u", {"天气"}), TermList{}), std::invalid_argument);
}

TEST(IsTcmTopic, Monotone) {
  const TermList terms{"a", "b", "c"};
  const std::vector<std::string> pool{"a", "b", "c", "x", "y"};
  Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    std::vector<std::string> tokens;
    const std::size_t n = uniform_index(rng, 6);
    for (std::size_t j = 0; j < n; ++j) tokens.push_back(pool[uniform_index(rng, pool.size())]);
    const bool before = is_tcm_topic(doc("1", "u", tokens), terms);
    tokens.push_back(pool[uniform_index(rng, pool.size())]);
    if (before) EXPECT_TRUE(is_tcm_topic(doc("1", "u", tokens), terms));
  }
}

TEST(UserStance, Examples) {
  const auto lex = parse_tag_lexicon("中医爱好\tsupport\n爱中医\tsupport\n反中医\toppose\n中医黑\toppose\n");
  EXPECT_EQ(user_stance({"中医爱好"}, lex), Stance::Supporting);
  EXPECT_EQ(user_stance({"反中医"}, lex), Stance::Opposing);
  EXPECT_EQ(user_stance({"爱中医", "中医黑"}, lex), std::nullopt);
  EXPECT_EQ(user_stance({"旅游", "中医爱好", "爱中医"}, lex), Stance::Supporting);
  EXPECT_EQ(user_stance({"旅游"}, lex), std::nullopt);
}

TEST(LabelCorpus, Examples) {
  const auto lex = parse_tag_lexicon("中医爱好\tsupport\n反中医\toppose\n");
  const std::vector<UserProfile> users{{"s", {"中医爱好"}}, {"o", {"反中医"}}, {"n", {}}};
  const std::vector<Document> docs{doc("1", "s", {"a"}), doc("2", "n", {"a"}), doc("3", "o", {"a"}),
                                    doc("4", "o", {"b"}), doc("5", "o", {"c"}), doc("6", "ghost", {"c"})};
  const auto r = label_corpus(docs, users, lex);
  ASSERT_EQ(r.labeled.documents.size(), 4u);
  EXPECT_EQ(r.remainder.size(), 2u);
  EXPECT_EQ(r.labeled.documents[0].label, Stance::Supporting);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(r.labeled.documents[i].label, Stance::Opposing);
  EXPECT_EQ(r.labeled.count(Stance::Opposing), 3u);
  EXPECT_EQ(r.labeled.users.at("o"), Stance::Opposing);
  EXPECT_FALSE(r.remainder[0].label.has_value());
}

TEST(LabelCorpus, PartitionAndPerUserConstancy) {
  const auto lex = parse_tag_lexicon("p\tsupport\nq\toppose\n");
  Rng rng(5);
  for (int round = 0; round < 100; ++round) {
    std::vector<UserProfile> users;
    for (int u = 0; u < 8; ++u) {
      std::vector<std::string> tags;
      if (bernoulli(rng, 0.5)) tags.push_back("p");
      if (bernoulli(rng, 0.4)) tags.push_back("q");
      users.push_back(UserProfile{"u" + std::to_string(u), tags});
    }
    std::vector<Document> docs;
    const std::size_t n = uniform_index(rng, 40);
    for (std::size_t i = 0; i < n; ++i) docs.push_back(doc(std::to_string(i), "u" + std::to_string(uniform_index(rng, 10)), {"t"}));
    const auto r = label_corpus(docs, users, lex);
    EXPECT_EQ(r.labeled.documents.size() + r.remainder.size(), docs.size());
    for (const auto& d : r.labeled.documents) EXPECT_EQ(d.label, r.labeled.users.at(d.user_id));
  }
}

TEST(DatasetFromDocuments, RebuildsAndValidates) {
  auto a = doc("1", "u", {"x"});
  a.label = Stance::Supporting;
  auto b = doc("2", "u", {"y"});
  b.label = Stance::Supporting;
  const auto ds = dataset_from_documents({a, b});
  EXPECT_EQ(ds.users.at("u"), Stance::Supporting);
  EXPECT_EQ(ds.count(Stance::Supporting), 2u);
  b.label = Stance::Opposing;
  EXPECT_THROW(dataset_from_documents({a, b}), Error);
  b.label.reset();
  EXPECT_THROW(dataset_from_documents({a, b}), Error);
}

}  // namespace
}  // namespace stance
