#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stance/preprocess.hpp"
#include "stance/stance.hpp"
#include "stance/supervision.hpp"

namespace stance {

// Document-frequency counts of one term against the Supporting ("pos") and
// Opposing ("neg") classes.
struct TermStats {
  std::string term;
  std::int64_t n_total = 0;
  std::int64_t df_pos = 0;
  std::int64_t df_neg = 0;
  std::int64_t n_pos = 0;
  std::int64_t n_neg = 0;

  bool operator==(const TermStats&) const = default;
};

struct ScoredTerm {
  std::string term;
  double score = 0.0;
  Stance direction = Stance::Supporting;

  bool operator==(const ScoredTerm&) const = default;
};

// The selected vocabulary. Feature ids are positions in `terms()`.
class FeatureSet {
 public:
  FeatureSet() = default;
  explicit FeatureSet(std::vector<ScoredTerm> terms);

  const std::vector<ScoredTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  // -1 when the term is not selected.
  std::int64_t id_of(std::string_view term) const;
  // FNV-1a over the ordered term list; ties a model to its vocabulary.
  std::uint64_t digest() const { return digest_; }

 private:
  std::vector<ScoredTerm> terms_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::uint64_t digest_ = 0;
};

// Sparse row. `vectorize` produces strictly increasing indices with every
// value exactly 1; the SVM accepts general real values.
struct SparseVector {
  std::vector<std::uint32_t> indices;
  std::vector<double> values;

  std::size_t nnz() const { return indices.size(); }
  bool operator==(const SparseVector&) const = default;
};

// One entry per distinct token, sorted by term. Throws Error unless both
// classes are present.
std::vector<TermStats> collect_stats(const std::vector<Document>& labeled_docs);
inline std::vector<TermStats> collect_stats(const LabeledDataset& dataset) {
  return collect_stats(dataset.documents);
}

// Chi-square of the term/class 2x2 table with maximum-likelihood
// probabilities. Terms present in no document or in every document score 0.
double chi_square(const TermStats& s);

// Sign of P(t, support) - P(t) P(support).
Stance association(const TermStats& s);

// Top-k by score, ties broken by ascending term.
FeatureSet select_features(const std::vector<TermStats>& stats, std::size_t k);

SparseVector vectorize(const Document& doc, const FeatureSet& fs);
SparseVector vectorize(const std::vector<std::string>& tokens, const FeatureSet& fs);

// TSV rows "rank<TAB>term<TAB>score<TAB>direction", rank starting at 1,
// score with 6 decimals.
std::string to_tsv(const FeatureSet& fs);
FeatureSet parse_feature_tsv(std::string_view text);
void save_features(const std::filesystem::path& path, const FeatureSet& fs);
FeatureSet load_features(const std::filesystem::path& path);

}  // namespace stance
