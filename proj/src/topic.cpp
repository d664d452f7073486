#include "sacsm/topic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"
#include "sacsm/search.hpp"
#include "sacsm/text.hpp"

namespace sacsm {

namespace {

std::vector<KeywordEntry> rank_subtopic_keywords(const Subtopic& subtopic,
                                                 const Corpus& corpus) {
    const auto tokens = tokenize(subtopic.reference_text);
    if (tokens.empty()) {
        throw std::runtime_error("subtopic has no eligible terms: " + subtopic.subtopic_id);
    }
    std::unordered_map<std::string, int> tf;
    for (const auto& t : tokens) ++tf[t];

    std::vector<KeywordEntry> ranked;
    ranked.reserve(tf.size());
    for (const auto& [term, count] : tf) {
        const double idf = bm25_idf(corpus.doc_count, corpus.df(term));
        ranked.push_back({term, static_cast<double>(count) * idf});
    }
    std::sort(ranked.begin(), ranked.end(), [](const KeywordEntry& a, const KeywordEntry& b) {
        if (a.tfidf != b.tfidf) return a.tfidf > b.tfidf;
        return a.keyword < b.keyword;
    });
    if (ranked.size() > kKeywordsPerSubtopic) ranked.resize(kKeywordsPerSubtopic);
    return ranked;
}

}  // namespace

std::vector<std::string> keyword_appearance_order(
    const Topic& topic,
    const std::unordered_map<std::string, std::vector<KeywordEntry>>& per_subtopic,
    KeywordOrderRule rule) {
    std::vector<std::string> order;
    std::unordered_set<std::string> seen;
    for (const auto& subtopic : topic.subtopics) {
        auto it = per_subtopic.find(subtopic.subtopic_id);
        if (it == per_subtopic.end()) continue;
        std::vector<std::string> local;
        for (const auto& entry : it->second) local.push_back(entry.keyword);
        if (rule == KeywordOrderRule::kAppearanceOffset) {
            const auto tokens = tokenize(subtopic.reference_text);
            std::unordered_map<std::string, std::size_t> first_offset;
            for (std::size_t i = 0; i < tokens.size(); ++i) {
                first_offset.emplace(tokens[i], i);
            }
            std::stable_sort(local.begin(), local.end(),
                             [&](const std::string& a, const std::string& b) {
                                 return first_offset.at(a) < first_offset.at(b);
                             });
        }
        for (const auto& kw : local) {
            if (seen.insert(kw).second) order.push_back(kw);
        }
    }
    return order;
}

KeywordSet extract_keywords(const Topic& topic, const Corpus& corpus, KeywordOrderRule rule) {
    KeywordSet set;
    for (const auto& subtopic : topic.subtopics) {
        set.per_subtopic[subtopic.subtopic_id] = rank_subtopic_keywords(subtopic, corpus);
    }
    set.topic_order = keyword_appearance_order(topic, set.per_subtopic, rule);
    for (std::size_t i = 0; i < set.topic_order.size(); ++i) {
        set.positions[set.topic_order[i]] = static_cast<int>(i) + 1;
    }
    return set;
}

SubtopicVector tfidf_vector(const std::vector<std::string>& tokens, const Corpus& corpus) {
    SubtopicVector vec;
    std::unordered_map<std::string, int> tf;
    for (const auto& t : tokens) ++tf[t];
    double norm_sq = 0.0;
    for (const auto& [term, count] : tf) {
        const double w = static_cast<double>(count) * bm25_idf(corpus.doc_count, corpus.df(term));
        vec.weights[term] = w;
        norm_sq += w * w;
    }
    if (norm_sq <= 0.0) {
        vec.weights.clear();
        return vec;
    }
    const double norm = std::sqrt(norm_sq);
    for (auto& [term, w] : vec.weights) w /= norm;
    return vec;
}

SubtopicVector subtopic_vector(const Subtopic& subtopic, const Corpus& corpus) {
    return tfidf_vector(tokenize(subtopic.reference_text), corpus);
}

double vector_similarity(const SubtopicVector& a, const SubtopicVector& b) {
    const auto& small = a.weights.size() <= b.weights.size() ? a : b;
    const auto& large = a.weights.size() <= b.weights.size() ? b : a;
    double dot = 0.0;
    for (const auto& [term, w] : small.weights) {
        auto it = large.weights.find(term);
        if (it != large.weights.end()) dot += w * it->second;
    }
    return std::clamp(dot, 0.0, 1.0);
}

double doc_subtopic_similarity(const Document& doc, const SubtopicVector& vec,
                               const Corpus& corpus) {
    return vector_similarity(tfidf_vector(doc.tokens, corpus), vec);
}

TopicRuntime TopicRuntime::build(const Topic& topic, const Corpus& corpus,
                                 KeywordOrderRule rule) {
    if (topic.subtopics.empty()) {
        throw std::runtime_error("topic has no subtopics: " + topic.topic_id);
    }
    TopicRuntime rt;
    rt.topic = topic;
    rt.keywords = extract_keywords(topic, corpus, rule);
    for (const auto& subtopic : topic.subtopics) {
        rt.subtopic_vectors.push_back(subtopic_vector(subtopic, corpus));
    }
    for (const auto& [doc_id, doc] : corpus.documents) {
        rt.doc_vectors.emplace(doc_id, tfidf_vector(doc.tokens, corpus));
    }
    return rt;
}

std::vector<double> TopicRuntime::doc_similarities(const std::string& doc_id) const {
    auto it = doc_vectors.find(doc_id);
    if (it == doc_vectors.end()) {
        throw std::runtime_error("no cached vector for doc: " + doc_id);
    }
    std::vector<double> sims;
    sims.reserve(subtopic_vectors.size());
    for (const auto& vec : subtopic_vectors) {
        sims.push_back(vector_similarity(it->second, vec));
    }
    return sims;
}

std::vector<Topic> load_topics(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open topics file: " + path);
    }
    nlohmann::json root = nlohmann::json::parse(in);
    const nlohmann::json& list = root.is_object() && root.contains("topics")
                                     ? root.at("topics")
                                     : root;
    if (!list.is_array()) {
        throw std::runtime_error("topics file must hold an array of topics");
    }
    std::vector<Topic> topics;
    for (const auto& item : list) {
        Topic topic;
        topic.topic_id = item.at("topic_id").get<std::string>();
        topic.title = item.value("title", std::string{});
        topic.description = item.value("description", std::string{});
        int position = 0;
        for (const auto& sub : item.at("subtopics")) {
            Subtopic subtopic;
            subtopic.subtopic_id = sub.at("subtopic_id").get<std::string>();
            subtopic.title = sub.value("title", std::string{});
            subtopic.reference_text = sub.at("reference_text").get<std::string>();
            subtopic.position = position++;
            topic.subtopics.push_back(std::move(subtopic));
        }
        if (topic.subtopics.empty()) {
            throw std::runtime_error("topic has no subtopics: " + topic.topic_id);
        }
        topics.push_back(std::move(topic));
    }
    return topics;
}

}  // namespace sacsm
