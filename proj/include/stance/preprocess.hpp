#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stance/corpus.hpp"
#include "stance/resources.hpp"
#include "stance/stance.hpp"

namespace stance {

// A preprocessed tweet: the word sequence plus provenance.
struct Document {
  std::string tweet_id;
  std::string user_id;
  Timestamp created_at{};
  std::vector<std::string> tokens;
  std::optional<Stance> label;

  bool operator==(const Document&) const = default;
};

// Lookahead bound for forward maximum matching, in characters.
inline constexpr std::size_t kMaxLexiconEntryChars = 8;
inline constexpr std::size_t kMaxMentionChars = 30;
inline constexpr std::size_t kMaxEmoticonCodeChars = 8;

std::string to_simplified(std::string_view text, const CharMap& map);

// Drops URLs, @mentions, bracketed emoticon codes, a few ASCII emoticons and
// the platform markers 转发微博 / 回复, then collapses whitespace.
std::string strip_entities(std::string_view text);

// Forward maximum matching. The concatenation of the result is `text`.
std::vector<std::string> segment(std::string_view text, const TermList& lexicon);

// Also drops tokens made only of punctuation or whitespace.
std::vector<std::string> remove_stopwords(std::vector<std::string> tokens, const TermList& stoplist);

bool is_advertisement(const std::vector<std::string>& tokens, const TermList& adlist);

// Steps 1-5 in order. Advertisements and tweets with nothing left are
// dropped.
std::optional<Document> preprocess_tweet(const Tweet& tweet, const Resources& resources);

// Document JSONL: {"tweet_id","user_id","created_at","tokens", optional "label"}.
std::string to_json_line(const Document& doc);
std::vector<Document> load_documents(const std::filesystem::path& path);
std::vector<Document> parse_documents(std::string_view jsonl);
void save_documents(const std::filesystem::path& path, const std::vector<Document>& docs);

}  // namespace stance
