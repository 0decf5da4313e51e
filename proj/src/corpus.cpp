#include "stance/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "stance/error.hpp"
#include "stance/utf8.hpp"

namespace stance {

using json = nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <class F>
void for_each_line(std::string_view text, F&& f) {
  while (!text.empty()) {
    const auto nl = text.find('\n');
    f(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

const std::string& require_string(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw std::invalid_argument(std::string("missing string field ") + key);
  }
  return it->get_ref<const std::string&>();
}

std::shared_ptr<RawTweet> tweet_from_json(const json& obj, std::size_t depth) {
  if (!obj.is_object()) throw std::invalid_argument("not an object");
  // Deeper chains are rejected by split_retweets; stop parsing well before
  // the recursion could become a problem.
  if (depth > 4 * kMaxRetweetDepth) throw std::invalid_argument("retweet chain too deep");
  auto tweet = std::make_shared<RawTweet>();
  tweet->id = require_string(obj, "id");
  if (tweet->id.empty()) throw std::invalid_argument("empty id");
  tweet->user_id = require_string(obj, "user_id");
  const auto& text = require_string(obj, "text");
  tweet->text = std::string(utf8::prefix_chars(text, kMaxTweetChars));
  const auto ts = parse_timestamp(require_string(obj, "created_at"));
  if (!ts) throw std::invalid_argument("bad created_at");
  tweet->created_at = *ts;
  if (const auto it = obj.find("retweet"); it != obj.end() && !it->is_null()) {
    tweet->retweet = tweet_from_json(*it, depth + 1);
  }
  return tweet;
}

json tweet_to_json(const RawTweet& tweet) {
  json obj = {{"id", tweet.id},
              {"user_id", tweet.user_id},
              {"text", tweet.text},
              {"created_at", format_timestamp(tweet.created_at)}};
  if (tweet.retweet) obj["retweet"] = tweet_to_json(*tweet.retweet);
  return obj;
}

}  // namespace

LoadResult<RawTweet> parse_tweets(std::string_view jsonl) {
  LoadResult<RawTweet> result;
  for_each_line(jsonl, [&](std::string_view line) {
    if (utf8::trim(line).empty()) return;
    try {
      result.records.push_back(*tweet_from_json(json::parse(line), 0));
    } catch (const std::exception&) {
      ++result.skipped;
    }
  });
  return result;
}

LoadResult<RawTweet> load_tweets(const std::filesystem::path& path) {
  return parse_tweets(read_file(path));
}

LoadResult<UserProfile> parse_users(std::string_view jsonl) {
  LoadResult<UserProfile> result;
  for_each_line(jsonl, [&](std::string_view line) {
    if (utf8::trim(line).empty()) return;
    try {
      const json obj = json::parse(line);
      if (!obj.is_object()) throw std::invalid_argument("not an object");
      UserProfile user;
      user.user_id = require_string(obj, "user_id");
      if (user.user_id.empty()) throw std::invalid_argument("empty user_id");
      const auto tags = obj.find("tags");
      if (tags == obj.end() || !tags->is_array()) throw std::invalid_argument("missing tags");
      for (const auto& tag : *tags) {
        if (!tag.is_string()) throw std::invalid_argument("non-string tag");
        auto t = std::string(utf8::trim(tag.get_ref<const std::string&>()));
        if (!t.empty() && user.tags.size() < kMaxUserTags) user.tags.push_back(std::move(t));
      }
      result.records.push_back(std::move(user));
    } catch (const std::exception&) {
      ++result.skipped;
    }
  });
  return result;
}

LoadResult<UserProfile> load_users(const std::filesystem::path& path) {
  return parse_users(read_file(path));
}

std::string to_json_line(const RawTweet& tweet) { return tweet_to_json(tweet).dump(); }

std::string to_json_line(const UserProfile& user) {
  return json{{"user_id", user.user_id}, {"tags", user.tags}}.dump();
}

std::size_t chain_depth(const RawTweet& tweet) {
  std::size_t depth = 0;
  for (const RawTweet* node = tweet.retweet.get(); node; node = node->retweet.get()) ++depth;
  return depth;
}

SplitResult split_retweets(const std::vector<RawTweet>& raws) {
  SplitResult result;
  std::unordered_set<std::string> roots;
  for (const auto& raw : raws) {
    if (chain_depth(raw) > kMaxRetweetDepth || roots.contains(raw.id)) {
      ++result.rejected;
      continue;
    }
    std::unordered_set<std::string_view> chain_ids;
    bool cyclic = false;
    for (const RawTweet* node = &raw; node; node = node->retweet.get()) {
      cyclic |= !chain_ids.insert(node->id).second;
    }
    if (cyclic) {
      ++result.rejected;
      continue;
    }
    roots.insert(raw.id);
    std::size_t k = 0;
    for (const RawTweet* node = &raw; node; node = node->retweet.get(), ++k) {
      result.tweets.push_back(
          Tweet{raw.id + "#" + std::to_string(k), node->user_id, node->text, node->created_at});
    }
  }
  return result;
}

std::vector<UserProfile> dedupe_users(const std::vector<UserProfile>& users) {
  std::vector<UserProfile> out;
  std::unordered_map<std::string, std::size_t> position;
  for (const auto& user : users) {
    auto [it, fresh] = position.try_emplace(user.user_id, out.size());
    if (fresh) out.push_back(UserProfile{user.user_id, {}});
    auto& tags = out[it->second].tags;
    for (const auto& tag : user.tags) {
      if (tags.size() >= kMaxUserTags) break;
      if (tag.empty() || std::find(tags.begin(), tags.end(), tag) != tags.end()) continue;
      tags.push_back(tag);
    }
  }
  return out;
}

}  // namespace stance
