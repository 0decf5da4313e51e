#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "stance/timestamp.hpp"

namespace stance {

inline constexpr std::size_t kMaxTweetChars = 280;
inline constexpr std::size_t kMaxRetweetDepth = 16;
inline constexpr std::size_t kMaxUserTags = 10;

// An ingested post. `retweet` is the post it re-shares, which may itself
// re-share another one.
struct RawTweet {
  std::string id;
  std::string user_id;
  std::string text;
  Timestamp created_at{};
  std::shared_ptr<const RawTweet> retweet;
};

// One flattened text unit. Ids carry the chain position: "<root id>#<k>".
struct Tweet {
  std::string id;
  std::string user_id;
  std::string text;
  Timestamp created_at{};

  bool operator==(const Tweet&) const = default;
};

struct UserProfile {
  std::string user_id;
  std::vector<std::string> tags;

  bool operator==(const UserProfile&) const = default;
};

template <class T>
struct LoadResult {
  std::vector<T> records;
  std::size_t skipped = 0;  // malformed lines
};

struct SplitResult {
  std::vector<Tweet> tweets;
  std::size_t rejected = 0;  // too deep, cyclic, or a duplicate root id
};

// tweets.jsonl: {"id","user_id","text","created_at", optional "retweet"}.
// Texts are clamped to kMaxTweetChars characters. Throws Error if the file
// cannot be opened.
LoadResult<RawTweet> load_tweets(const std::filesystem::path& path);
LoadResult<RawTweet> parse_tweets(std::string_view jsonl);

// users.jsonl: {"user_id","tags"}. Empty tags are dropped and the list is
// truncated to kMaxUserTags.
LoadResult<UserProfile> load_users(const std::filesystem::path& path);
LoadResult<UserProfile> parse_users(std::string_view jsonl);

std::string to_json_line(const RawTweet& tweet);
std::string to_json_line(const UserProfile& user);

std::size_t chain_depth(const RawTweet& tweet);

// Emits the root and then each nested post in chain order.
SplitResult split_retweets(const std::vector<RawTweet>& raws);

// Keeps the first occurrence of each user id; tags become the union over all
// occurrences in first-seen order, capped at kMaxUserTags.
std::vector<UserProfile> dedupe_users(const std::vector<UserProfile>& users);

}  // namespace stance
