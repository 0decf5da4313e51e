#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "stance/stance.hpp"

namespace stance {

// Insertion-ordered set of terms. Membership is exact and case-sensitive.
class TermList {
 public:
  TermList() = default;
  TermList(std::initializer_list<std::string_view> terms);

  // Returns false if the term was already present. Empty terms are rejected
  // with std::invalid_argument.
  bool add(std::string_view term);
  void merge(const TermList& other);

  bool contains(std::string_view term) const { return index_.contains(std::string(term)); }
  const std::vector<std::string>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  // Longest entry, in characters.
  std::size_t max_chars() const { return max_chars_; }

  bool operator==(const TermList& other) const { return terms_ == other.terms_; }

 private:
  std::vector<std::string> terms_;
  std::unordered_set<std::string> index_;
  std::size_t max_chars_ = 0;
};

// Character-level traditional to simplified mapping.
class CharMap {
 public:
  // Identity pairs are ignored; a conflicting redefinition throws Error.
  void add(char32_t traditional, char32_t simplified);
  char32_t map(char32_t c) const;
  std::size_t size() const { return pairs_.size(); }
  const std::unordered_map<char32_t, char32_t>& pairs() const { return pairs_; }

  bool operator==(const CharMap&) const = default;

 private:
  std::unordered_map<char32_t, char32_t> pairs_;
};

class TagLexicon {
 public:
  // Adding the same tag twice with the same stance is a no-op; a conflicting
  // stance throws Error.
  void add(std::string_view tag, Stance stance);
  const Stance* find(std::string_view tag) const;
  std::size_t size() const { return entries_.size(); }
  std::size_t count(Stance s) const;
  const std::vector<std::pair<std::string, Stance>>& entries() const { return ordered_; }

  bool operator==(const TagLexicon& other) const { return ordered_ == other.ordered_; }

 private:
  std::unordered_map<std::string, Stance> entries_;
  std::vector<std::pair<std::string, Stance>> ordered_;
};

// One term per line; '#' starts a comment line. Terms are trimmed and
// deduplicated. Throws Error naming the byte offset of any invalid UTF-8.
TermList load_term_list(const std::filesystem::path& path);
TermList parse_term_list(std::string_view text);

// TSV "tag<TAB>support|oppose".
TagLexicon load_tag_lexicon(const std::filesystem::path& path);
TagLexicon parse_tag_lexicon(std::string_view text);

// TSV "traditional<TAB>simplified", single characters only.
CharMap load_char_map(const std::filesystem::path& path);
CharMap parse_char_map(std::string_view text);

struct ResourcePaths {
  std::filesystem::path base_lexicon;
  std::filesystem::path custom_lexicon;
  std::filesystem::path terminology;
  std::filesystem::path stopwords;
  std::filesystem::path ad_keywords;
  std::filesystem::path char_map;
  std::filesystem::path tag_lexicon;

  // The seed lists shipped under resources/ in `dir`.
  static ResourcePaths defaults_in(const std::filesystem::path& dir);
};

// Everything the preprocessing and labeling steps read. `segmentation` is the
// base list merged with the custom list, the terminology list, the ad
// keywords and the multi-character stopwords, so that every term the later
// steps look for can come out of the segmenter as a single token.
struct Resources {
  TermList segmentation;
  TermList terminology;
  TermList stopwords;
  TermList ad_keywords;
  CharMap char_map;
  TagLexicon tags;

  static Resources load(const ResourcePaths& paths);
};

// Directory of the shipped seed resources, fixed at build time.
std::filesystem::path default_resource_dir();

}  // namespace stance
