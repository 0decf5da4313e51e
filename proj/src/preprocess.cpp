#include "stance/preprocess.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stance/error.hpp"
#include "stance/utf8.hpp"

namespace stance {

using json = nlohmann::json;

namespace {

bool starts_with_at(const std::vector<std::string_view>& chars, std::size_t i, std::string_view what) {
  std::size_t pos = i;
  while (!what.empty()) {
    if (pos >= chars.size() || !what.starts_with(chars[pos])) return false;
    what.remove_prefix(chars[pos].size());
    ++pos;
  }
  return true;
}

std::size_t length_in_chars(std::string_view s) { return utf8::char_count(s); }

bool is_space_char(std::string_view ch) { return utf8::is_whitespace(utf8::decode(ch)); }

bool is_word_char(std::string_view ch) {
  const char32_t cp = utf8::decode(ch);
  return !utf8::is_whitespace(cp) && !utf8::is_punctuation(cp);
}

using Chars = std::vector<std::string_view>;

// One removal pass. `match` returns how many characters to drop at i (0 for
// no match).
template <class Match>
Chars remove_matches(const Chars& chars, Match&& match) {
  Chars out;
  out.reserve(chars.size());
  for (std::size_t i = 0; i < chars.size();) {
    const std::size_t n = match(chars, i);
    if (n == 0) {
      out.push_back(chars[i++]);
    } else {
      i += n;
    }
  }
  return out;
}

std::size_t match_url(const Chars& c, std::size_t i) {
  std::size_t n = 0;
  if (starts_with_at(c, i, "http://")) {
    n = 7;
  } else if (starts_with_at(c, i, "https://")) {
    n = 8;
  } else {
    return 0;
  }
  const std::size_t scheme = n;
  while (i + n < c.size() && !is_space_char(c[i + n])) ++n;
  return n > scheme ? n : 0;
}

std::size_t match_mention(const Chars& c, std::size_t i) {
  if (c[i] != "@") return 0;
  std::size_t n = 0;
  while (n < kMaxMentionChars && i + 1 + n < c.size() && is_word_char(c[i + 1 + n])) ++n;
  return n > 0 ? n + 1 : 0;
}

std::size_t match_emoticon_code(const Chars& c, std::size_t i) {
  if (c[i] != "[") return 0;
  for (std::size_t n = 0; n <= kMaxEmoticonCodeChars && i + 1 + n < c.size(); ++n) {
    const auto ch = c[i + 1 + n];
    if (ch == "[") return 0;
    if (ch == "]") return n + 2;
  }
  return 0;
}

constexpr std::array<std::string_view, 4> kAsciiEmoticons = {":-)", ":-(", ":)", ":("};
constexpr std::array<std::string_view, 2> kPlatformMarkers = {"转发微博", "回复"};

template <std::size_t N>
std::size_t match_literal(const Chars& c, std::size_t i, const std::array<std::string_view, N>& words) {
  for (auto w : words) {
    if (starts_with_at(c, i, w)) return length_in_chars(w);
  }
  return 0;
}

}  // namespace

std::string to_simplified(std::string_view text, const CharMap& map) {
  std::string out;
  out.reserve(text.size());
  for (auto ch : utf8::split_chars(text)) {
    const char32_t cp = utf8::decode(ch);
    if (cp == 0xFFFD || map.size() == 0) {
      out.append(ch);
      continue;
    }
    const char32_t mapped = map.map(cp);
    if (mapped == cp) {
      out.append(ch);
    } else {
      out += utf8::encode(mapped);
    }
  }
  return out;
}

std::string strip_entities(std::string_view text) {
  Chars chars = utf8::split_chars(text);
  chars = remove_matches(chars, match_url);
  chars = remove_matches(chars, match_mention);
  chars = remove_matches(chars, match_emoticon_code);
  chars = remove_matches(chars, [](const Chars& c, std::size_t i) {
    return match_literal(c, i, kAsciiEmoticons);
  });
  chars = remove_matches(chars, [](const Chars& c, std::size_t i) {
    return match_literal(c, i, kPlatformMarkers);
  });

  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (auto ch : chars) {
    if (is_space_char(ch)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.append(ch);
  }
  return out;
}

std::vector<std::string> segment(std::string_view text, const TermList& lexicon) {
  const Chars chars = utf8::split_chars(text);
  const std::size_t lookahead = std::min(kMaxLexiconEntryChars, lexicon.max_chars());
  std::vector<std::string> tokens;
  std::string candidate;
  for (std::size_t i = 0; i < chars.size();) {
    std::size_t take = 1;
    for (std::size_t n = std::min(lookahead, chars.size() - i); n > 1; --n) {
      candidate.clear();
      for (std::size_t k = 0; k < n; ++k) candidate.append(chars[i + k]);
      if (lexicon.contains(candidate)) {
        take = n;
        break;
      }
    }
    std::string token;
    for (std::size_t k = 0; k < take; ++k) token.append(chars[i + k]);
    tokens.push_back(std::move(token));
    i += take;
  }
  return tokens;
}

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens, const TermList& stoplist) {
  const auto drop = [&](const std::string& token) {
    if (stoplist.contains(token)) return true;
    for (auto ch : utf8::split_chars(token)) {
      const char32_t cp = utf8::decode(ch);
      if (!utf8::is_whitespace(cp) && !utf8::is_punctuation(cp)) return false;
    }
    return true;
  };
  std::erase_if(tokens, drop);
  return tokens;
}

bool is_advertisement(const std::vector<std::string>& tokens, const TermList& adlist) {
  return std::any_of(tokens.begin(), tokens.end(),
                     [&](const std::string& t) { return adlist.contains(t); });
}

std::optional<Document> preprocess_tweet(const Tweet& tweet, const Resources& resources) {
  const std::string simplified = to_simplified(tweet.text, resources.char_map);
  const std::string stripped = strip_entities(simplified);
  auto tokens = remove_stopwords(segment(stripped, resources.segmentation), resources.stopwords);
  if (tokens.empty() || is_advertisement(tokens, resources.ad_keywords)) return std::nullopt;
  return Document{tweet.id, tweet.user_id, tweet.created_at, std::move(tokens), std::nullopt};
}

std::string to_json_line(const Document& doc) {
  json obj = {{"tweet_id", doc.tweet_id},
              {"user_id", doc.user_id},
              {"created_at", format_timestamp(doc.created_at)},
              {"tokens", doc.tokens}};
  if (doc.label) obj["label"] = std::string(to_string(*doc.label));
  return obj.dump();
}

std::vector<Document> parse_documents(std::string_view jsonl) {
  std::vector<Document> docs;
  std::size_t line_no = 0;
  while (!jsonl.empty()) {
    const auto nl = jsonl.find('\n');
    const auto line = jsonl.substr(0, nl);
    jsonl.remove_prefix(nl == std::string_view::npos ? jsonl.size() : nl + 1);
    ++line_no;
    if (utf8::trim(line).empty()) continue;
    try {
      const json obj = json::parse(line);
      Document doc;
      doc.tweet_id = obj.at("tweet_id").get<std::string>();
      doc.user_id = obj.at("user_id").get<std::string>();
      const auto ts = parse_timestamp(obj.at("created_at").get<std::string>());
      if (!ts) throw Error("bad created_at");
      doc.created_at = *ts;
      doc.tokens = obj.at("tokens").get<std::vector<std::string>>();
      if (const auto it = obj.find("label"); it != obj.end()) {
        doc.label = parse_stance(it->get<std::string>());
        if (!doc.label) throw Error("unknown label");
      }
      docs.push_back(std::move(doc));
    } catch (const std::exception& e) {
      throw Error("document line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return docs;
}

std::vector<Document> load_documents(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_documents(buf.str());
}

void save_documents(const std::filesystem::path& path, const std::vector<Document>& docs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  for (const auto& doc : docs) out << to_json_line(doc) << '\n';
}

}  // namespace stance
