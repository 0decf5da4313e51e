#include "stance/resources.hpp"

#include <fstream>
#include <sstream>

#include "stance/error.hpp"
#include "stance/utf8.hpp"

#ifndef STANCE_RESOURCE_DIR
#define STANCE_RESOURCE_DIR "resources"
#endif

namespace stance {

namespace {

std::string read_utf8_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void require_utf8(std::string_view text) {
  if (const auto bad = utf8::first_invalid(text)) {
    throw Error("invalid UTF-8 at byte offset " + std::to_string(*bad));
  }
}

template <class F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t line_no = 1;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    f(text.substr(0, nl), line_no++);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

// Splits a TSV row into exactly two trimmed, non-empty cells.
std::pair<std::string_view, std::string_view> two_cells(std::string_view line, std::size_t line_no) {
  const auto tab = line.find('\t');
  if (tab == std::string_view::npos || line.find('\t', tab + 1) != std::string_view::npos) {
    throw Error("line " + std::to_string(line_no) + ": expected two tab-separated cells");
  }
  const auto a = utf8::trim(line.substr(0, tab));
  const auto b = utf8::trim(line.substr(tab + 1));
  if (a.empty() || b.empty()) throw Error("line " + std::to_string(line_no) + ": empty cell");
  return {a, b};
}

bool skippable(std::string_view line) {
  const auto t = utf8::trim(line);
  return t.empty() || t.front() == '#';
}

template <class F>
auto with_path(const std::filesystem::path& path, F&& parse) {
  try {
    return parse(read_utf8_file(path));
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

}  // namespace

TermList::TermList(std::initializer_list<std::string_view> terms) {
  for (auto t : terms) add(t);
}

bool TermList::add(std::string_view term) {
  if (term.empty()) throw std::invalid_argument("empty term");
  auto [it, fresh] = index_.emplace(term);
  if (!fresh) return false;
  terms_.emplace_back(term);
  max_chars_ = std::max(max_chars_, utf8::char_count(term));
  return true;
}

void TermList::merge(const TermList& other) {
  for (const auto& t : other.terms()) add(t);
}

void CharMap::add(char32_t traditional, char32_t simplified) {
  if (traditional == simplified) return;
  auto [it, fresh] = pairs_.try_emplace(traditional, simplified);
  if (!fresh && it->second != simplified) {
    throw Error("conflicting mapping for " + utf8::encode(traditional));
  }
}

char32_t CharMap::map(char32_t c) const {
  const auto it = pairs_.find(c);
  return it == pairs_.end() ? c : it->second;
}

void TagLexicon::add(std::string_view tag, Stance stance) {
  auto [it, fresh] = entries_.try_emplace(std::string(tag), stance);
  if (!fresh) {
    if (it->second != stance) throw Error("tag " + std::string(tag) + " has conflicting stances");
    return;
  }
  ordered_.emplace_back(tag, stance);
}

const Stance* TagLexicon::find(std::string_view tag) const {
  const auto it = entries_.find(std::string(tag));
  return it == entries_.end() ? nullptr : &it->second;
}

std::size_t TagLexicon::count(Stance s) const {
  std::size_t n = 0;
  for (const auto& [tag, stance] : ordered_) n += stance == s;
  return n;
}

TermList parse_term_list(std::string_view text) {
  require_utf8(text);
  TermList list;
  for_each_line(text, [&](std::string_view line, std::size_t) {
    if (!skippable(line)) list.add(utf8::trim(line));
  });
  return list;
}

TermList load_term_list(const std::filesystem::path& path) {
  return with_path(path, parse_term_list);
}

TagLexicon parse_tag_lexicon(std::string_view text) {
  require_utf8(text);
  TagLexicon lexicon;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (skippable(line)) return;
    const auto [tag, word] = two_cells(line, line_no);
    const auto stance = parse_stance(word);
    if (!stance) {
      throw Error("line " + std::to_string(line_no) + ": unknown stance '" + std::string(word) + "'");
    }
    lexicon.add(tag, *stance);
  });
  return lexicon;
}

TagLexicon load_tag_lexicon(const std::filesystem::path& path) {
  return with_path(path, parse_tag_lexicon);
}

CharMap parse_char_map(std::string_view text) {
  require_utf8(text);
  CharMap map;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (skippable(line)) return;
    const auto [from, to] = two_cells(line, line_no);
    if (utf8::char_count(from) != 1 || utf8::char_count(to) != 1) {
      throw Error("line " + std::to_string(line_no) + ": cells must be single characters");
    }
    try {
      map.add(utf8::decode(from), utf8::decode(to));
    } catch (const Error& e) {
      throw Error("line " + std::to_string(line_no) + ": " + e.what());
    }
  });
  return map;
}

CharMap load_char_map(const std::filesystem::path& path) { return with_path(path, parse_char_map); }

ResourcePaths ResourcePaths::defaults_in(const std::filesystem::path& dir) {
  return ResourcePaths{dir / "base_lexicon.txt", dir / "custom_lexicon.txt",
                       dir / "terminology.txt",  dir / "stopwords.txt",
                       dir / "ad_keywords.txt",  dir / "t2s_chars.tsv",
                       dir / "stance_tags.tsv"};
}

Resources Resources::load(const ResourcePaths& paths) {
  Resources r;
  r.segmentation = load_term_list(paths.base_lexicon);
  r.segmentation.merge(load_term_list(paths.custom_lexicon));
  r.terminology = load_term_list(paths.terminology);
  r.stopwords = load_term_list(paths.stopwords);
  r.ad_keywords = load_term_list(paths.ad_keywords);
  r.char_map = load_char_map(paths.char_map);
  r.tags = load_tag_lexicon(paths.tag_lexicon);
  r.segmentation.merge(r.terminology);
  r.segmentation.merge(r.ad_keywords);
  for (const auto& w : r.stopwords.terms()) {
    if (utf8::char_count(w) > 1) r.segmentation.add(w);
  }
  return r;
}

std::filesystem::path default_resource_dir() { return STANCE_RESOURCE_DIR; }

}  // namespace stance
