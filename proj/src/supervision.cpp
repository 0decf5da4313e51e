#include "stance/supervision.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "stance/error.hpp"

namespace stance {

std::size_t LabeledDataset::count(Stance s) const {
  return static_cast<std::size_t>(std::count_if(documents.begin(), documents.end(),
                                                [s](const Document& d) { return d.label == s; }));
}

bool is_tcm_topic(const Document& doc, const TermList& terminology) {
  if (terminology.empty()) throw std::invalid_argument("terminology list is empty");
  std::unordered_set<std::string_view> hits;
  for (const auto& token : doc.tokens) {
    if (terminology.contains(token)) {
      hits.insert(token);
      if (hits.size() >= 2) return true;
    }
  }
  return false;
}

std::vector<Document> filter_topic(std::vector<Document> docs, const TermList& terminology) {
  std::erase_if(docs, [&](const Document& d) { return !is_tcm_topic(d, terminology); });
  return docs;
}

std::optional<Stance> user_stance(const std::vector<std::string>& tags, const TagLexicon& lexicon) {
  std::optional<Stance> found;
  for (const auto& tag : tags) {
    const Stance* s = lexicon.find(tag);
    if (!s) continue;
    if (found && *found != *s) return std::nullopt;
    found = *s;
  }
  return found;
}

LabelingResult label_corpus(const std::vector<Document>& docs, const std::vector<UserProfile>& users,
                            const TagLexicon& lexicon) {
  std::unordered_map<std::string, Stance> stances;
  for (const auto& user : dedupe_users(users)) {
    if (const auto s = user_stance(user.tags, lexicon)) stances.emplace(user.user_id, *s);
  }
  LabelingResult result;
  for (const auto& doc : docs) {
    const auto it = stances.find(doc.user_id);
    if (it == stances.end()) {
      result.remainder.push_back(doc);
      continue;
    }
    Document labeled = doc;
    labeled.label = it->second;
    result.labeled.users.emplace(doc.user_id, it->second);
    result.labeled.documents.push_back(std::move(labeled));
  }
  return result;
}

LabeledDataset dataset_from_documents(std::vector<Document> docs) {
  LabeledDataset dataset;
  for (const auto& doc : docs) {
    if (!doc.label) throw Error("document " + doc.tweet_id + " has no label");
    auto [it, fresh] = dataset.users.emplace(doc.user_id, *doc.label);
    if (!fresh && it->second != *doc.label) {
      throw Error("user " + doc.user_id + " has documents with different labels");
    }
  }
  dataset.documents = std::move(docs);
  return dataset;
}

}  // namespace stance
