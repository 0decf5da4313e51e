#include "stance/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "stance/error.hpp"
#include "stance/utf8.hpp"

namespace stance {

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

FeatureSet::FeatureSet(std::vector<ScoredTerm> terms) : terms_(std::move(terms)) {
  digest_ = 0xcbf29ce484222325ULL;
  for (std::uint32_t i = 0; i < terms_.size(); ++i) {
    if (!index_.emplace(terms_[i].term, i).second) {
      throw Error("duplicate feature term " + terms_[i].term);
    }
    digest_ = fnv1a(digest_, terms_[i].term);
    digest_ = fnv1a(digest_, std::string_view("\n", 1));
  }
}

std::int64_t FeatureSet::id_of(std::string_view term) const {
  const auto it = index_.find(std::string(term));
  return it == index_.end() ? std::int64_t{-1} : std::int64_t{it->second};
}

std::vector<TermStats> collect_stats(const std::vector<Document>& labeled_docs) {
  std::int64_t n_pos = 0;
  std::int64_t n_neg = 0;
  std::map<std::string_view, std::pair<std::int64_t, std::int64_t>> df;
  std::unordered_set<std::string_view> seen;
  for (const auto& doc : labeled_docs) {
    if (!doc.label) throw Error("collect_stats: unlabeled document " + doc.tweet_id);
    const bool pos = *doc.label == Stance::Supporting;
    (pos ? n_pos : n_neg) += 1;
    seen.clear();
    for (const auto& token : doc.tokens) {
      if (!seen.insert(token).second) continue;
      auto& counts = df[token];
      (pos ? counts.first : counts.second) += 1;
    }
  }
  if (n_pos == 0 || n_neg == 0) {
    throw Error("chi-square needs documents of both classes");
  }
  std::vector<TermStats> stats;
  stats.reserve(df.size());
  for (const auto& [term, counts] : df) {
    stats.push_back(TermStats{std::string(term), n_pos + n_neg, counts.first, counts.second, n_pos, n_neg});
  }
  return stats;
}

namespace {

void check(const TermStats& s) {
  if (s.n_pos <= 0 || s.n_neg <= 0 || s.n_pos + s.n_neg != s.n_total || s.df_pos < 0 ||
      s.df_neg < 0 || s.df_pos > s.n_pos || s.df_neg > s.n_neg || s.df_pos + s.df_neg == 0) {
    throw std::invalid_argument("inconsistent term statistics for '" + s.term + "'");
  }
}

}  // namespace

double chi_square(const TermStats& s) {
  check(s);
  const double n = static_cast<double>(s.n_total);
  const std::int64_t df = s.df_pos + s.df_neg;
  if (df == s.n_total) return 0.0;

  const double p_t_c = s.df_pos / n;                      // P(t, c)
  const double p_t_nc = s.df_neg / n;                     // P(t, ~c)
  const double p_nt_c = (s.n_pos - s.df_pos) / n;         // P(~t, c)
  const double p_nt_nc = (s.n_neg - s.df_neg) / n;        // P(~t, ~c)
  const double p_t = df / n;
  const double p_nt = (s.n_total - df) / n;
  const double p_c = s.n_pos / n;
  const double p_nc = s.n_neg / n;
  const double diff = p_t_c * p_nt_nc - p_t_nc * p_nt_c;
  // Grouped so that swapping the classes gives a bit-identical result.
  return n * diff * diff / ((p_t * p_nt) * (p_c * p_nc));
}

Stance association(const TermStats& s) {
  // df_pos / N > (df / N) (n_pos / N), in exact integer arithmetic.
  return s.df_pos * s.n_total > (s.df_pos + s.df_neg) * s.n_pos ? Stance::Supporting
                                                                  : Stance::Opposing;
}

FeatureSet select_features(const std::vector<TermStats>& stats, std::size_t k) {
  if (k == 0) throw std::invalid_argument("feature count must be at least 1");
  std::vector<ScoredTerm> scored;
  scored.reserve(stats.size());
  for (const auto& s : stats) scored.push_back(ScoredTerm{s.term, chi_square(s), association(s)});
  const auto better = [](const ScoredTerm& a, const ScoredTerm& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.term < b.term;
  };
  const std::size_t take = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take), scored.end(), better);
  scored.resize(take);
  return FeatureSet(std::move(scored));
}

SparseVector vectorize(const std::vector<std::string>& tokens, const FeatureSet& fs) {
  SparseVector v;
  for (const auto& token : tokens) {
    const auto id = fs.id_of(token);
    if (id >= 0) v.indices.push_back(static_cast<std::uint32_t>(id));
  }
  std::sort(v.indices.begin(), v.indices.end());
  v.indices.erase(std::unique(v.indices.begin(), v.indices.end()), v.indices.end());
  v.values.assign(v.indices.size(), 1.0);
  return v;
}

SparseVector vectorize(const Document& doc, const FeatureSet& fs) { return vectorize(doc.tokens, fs); }

std::string to_tsv(const FeatureSet& fs) {
  std::string out;
  char score[64];
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto& t = fs.terms()[i];
    std::snprintf(score, sizeof score, "%.6f", t.score);
    out += std::to_string(i + 1);
    out += '\t';
    out += t.term;
    out += '\t';
    out += score;
    out += '\t';
    out += to_string(t.direction);
    out += '\n';
  }
  return out;
}

FeatureSet parse_feature_tsv(std::string_view text) {
  std::vector<ScoredTerm> terms;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (utf8::trim(line).empty()) continue;
    std::vector<std::string_view> cells;
    std::string_view rest = line;
    for (auto tab = rest.find('\t'); tab != std::string_view::npos; tab = rest.find('\t')) {
      cells.push_back(rest.substr(0, tab));
      rest.remove_prefix(tab + 1);
    }
    cells.push_back(rest);
    const auto bad = [&](const char* what) {
      return Error("feature file line " + std::to_string(line_no) + ": " + what);
    };
    if (cells.size() != 4) throw bad("expected 4 columns");
    if (cells[0] != std::to_string(terms.size() + 1)) throw bad("ranks must be 1, 2, 3, ...");
    const auto direction = parse_stance(utf8::trim(cells[3]));
    if (!direction) throw bad("unknown direction");
    double score = 0.0;
    try {
      score = std::stod(std::string(cells[2]));
    } catch (const std::exception&) {
      throw bad("bad score");
    }
    terms.push_back(ScoredTerm{std::string(cells[1]), score, *direction});
  }
  return FeatureSet(std::move(terms));
}

void save_features(const std::filesystem::path& path, const FeatureSet& fs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << to_tsv(fs);
}

FeatureSet load_features(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_feature_tsv(buf.str());
}

}  // namespace stance
