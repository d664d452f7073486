#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "sacsm/corpus.hpp"

namespace sacsm {

struct Subtopic {
    std::string subtopic_id;
    std::string title;
    std::string reference_text;
    int position = 0;  // index in the parent topic, 0-based
};

struct Topic {
    std::string topic_id;
    std::string title;
    std::string description;
    std::vector<Subtopic> subtopics;
};

struct KeywordEntry {
    std::string keyword;
    double tfidf = 0.0;
};

enum class KeywordOrderRule {
    // Iterate subtopics in position order; within one, order keywords by
    // first-occurrence token offset in its reference text.
    kAppearanceOffset,
    // Concatenate the ranked per-subtopic extraction lists.
    kRankedList,
};

struct KeywordSet {
    // subtopic_id -> up to 10 keywords, descending TF-IDF then lexicographic
    std::unordered_map<std::string, std::vector<KeywordEntry>> per_subtopic;
    std::vector<std::string> topic_order;           // unique keywords, appearance order
    std::unordered_map<std::string, int> positions;  // keyword -> 1-based position
};

struct SubtopicVector {
    std::unordered_map<std::string, double> weights;  // L2-normalized, or empty
};

inline constexpr int kKeywordsPerSubtopic = 10;

// Per-subtopic top-10 TF-IDF keywords plus the topic-level appearance order.
// TF is counted over the subtopic reference text; IDF comes from corpus
// document frequencies.
KeywordSet extract_keywords(const Topic& topic, const Corpus& corpus,
                            KeywordOrderRule rule = KeywordOrderRule::kAppearanceOffset);

std::vector<std::string> keyword_appearance_order(
    const Topic& topic,
    const std::unordered_map<std::string, std::vector<KeywordEntry>>& per_subtopic,
    KeywordOrderRule rule = KeywordOrderRule::kAppearanceOffset);

SubtopicVector subtopic_vector(const Subtopic& subtopic, const Corpus& corpus);

// Normalized TF-IDF vector of an arbitrary token bag.
SubtopicVector tfidf_vector(const std::vector<std::string>& tokens, const Corpus& corpus);

// Cosine similarity in [0,1]; 0 if either vector is zero.
double doc_subtopic_similarity(const Document& doc, const SubtopicVector& vec,
                               const Corpus& corpus);

double vector_similarity(const SubtopicVector& a, const SubtopicVector& b);

// Topic with everything sessions need precomputed: keywords, subtopic
// vectors, and per-document TF-IDF vectors shared across sessions.
struct TopicRuntime {
    Topic topic;
    KeywordSet keywords;
    std::vector<SubtopicVector> subtopic_vectors;  // by position
    std::unordered_map<std::string, SubtopicVector> doc_vectors;

    static TopicRuntime build(const Topic& topic, const Corpus& corpus,
                              KeywordOrderRule rule = KeywordOrderRule::kAppearanceOffset);
    std::vector<double> doc_similarities(const std::string& doc_id) const;
};

// Topics file: JSON array (or {"topics": [...]}) of objects with topic_id,
// title, description, subtopics: [{subtopic_id, title, reference_text}].
std::vector<Topic> load_topics(const std::string& path);

}  // namespace sacsm
