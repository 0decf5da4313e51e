#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stance/corpus.hpp"
#include "stance/preprocess.hpp"
#include "stance/resources.hpp"

namespace stance {

// Documents whose label is always present and equal to the author's stance.
struct LabeledDataset {
  std::vector<Document> documents;
  std::map<std::string, Stance> users;

  std::size_t count(Stance s) const;
};

struct LabelingResult {
  LabeledDataset labeled;
  std::vector<Document> remainder;
};

// True iff at least two distinct terminology terms occur among the tokens.
bool is_tcm_topic(const Document& doc, const TermList& terminology);

std::vector<Document> filter_topic(std::vector<Document> docs, const TermList& terminology);

// The stance shared by every lexicon tag in `tags`; nullopt if none match or
// they disagree.
std::optional<Stance> user_stance(const std::vector<std::string>& tags, const TagLexicon& lexicon);

// Assigns each document its author's stance. Documents by unknown or
// unlabelable authors are returned, unchanged, as the remainder.
LabelingResult label_corpus(const std::vector<Document>& docs, const std::vector<UserProfile>& users,
                            const TagLexicon& lexicon);

// Rebuilds a dataset from labeled documents (e.g. a labeled JSONL file).
// Throws Error if a label is missing or one user carries two labels.
LabeledDataset dataset_from_documents(std::vector<Document> docs);

}  // namespace stance
