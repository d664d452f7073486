#include "sacsm/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "sacsm/text.hpp"

namespace sacsm {

std::string Query::canonical() const {
    std::string out;
    for (const auto& t : terms) {
        if (!out.empty()) out += ' ';
        out += t;
    }
    return out;
}

double bm25_idf(std::int64_t doc_count, std::int64_t df) {
    const double n = static_cast<double>(doc_count);
    const double d = static_cast<double>(df);
    return std::log((n - d + 0.5) / (d + 0.5) + 1.0);
}

double bm25_score(const Query& query, const std::string& doc_id, const Corpus& corpus) {
    const Document& doc = corpus.doc(doc_id);
    const double len = static_cast<double>(doc.tokens.size());
    double score = 0.0;
    for (const auto& term : query.terms) {
        auto it = doc.term_counts.find(term);
        if (it == doc.term_counts.end()) continue;
        const double tf = static_cast<double>(it->second);
        const double idf = bm25_idf(corpus.doc_count, corpus.df(term));
        const double denom =
            tf + kBm25K1 * (1.0 - kBm25B + kBm25B * len / corpus.avg_doc_len);
        score += idf * tf * (kBm25K1 + 1.0) / denom;
    }
    return score;
}

Snippet make_snippet(const Document& doc, const Query& query, int window_size) {
    if (window_size < 1) {
        throw std::runtime_error("window_size must be >= 1");
    }
    const std::vector<std::string> body_tokens = tokenize(doc.body);
    const std::unordered_set<std::string> query_terms(query.terms.begin(), query.terms.end());

    const std::size_t window =
        std::min<std::size_t>(static_cast<std::size_t>(window_size), body_tokens.size());
    std::size_t best_start = 0;
    int best_distinct = -1;
    if (window > 0) {
        for (std::size_t start = 0; start + window <= body_tokens.size(); ++start) {
            std::unordered_set<std::string> seen;
            for (std::size_t i = start; i < start + window; ++i) {
                if (query_terms.count(body_tokens[i])) seen.insert(body_tokens[i]);
            }
            const int distinct = static_cast<int>(seen.size());
            if (distinct > best_distinct) {
                best_distinct = distinct;
                best_start = start;
            }
        }
    }

    Snippet snippet;
    snippet.doc_id = doc.doc_id;
    snippet.title = doc.title;
    snippet.tokens = tokenize(doc.title);
    for (std::size_t i = best_start; i < best_start + window; ++i) {
        if (!snippet.text.empty()) snippet.text += ' ';
        snippet.text += body_tokens[i];
        snippet.tokens.push_back(body_tokens[i]);
    }
    return snippet;
}

std::vector<SearchResult> search(const Query& query, int k, const Corpus& corpus) {
    if (k < 1) {
        throw std::runtime_error("k must be >= 1");
    }
    std::vector<std::pair<std::string, double>> scored;
    for (const auto& [doc_id, doc] : corpus.documents) {
        const double score = bm25_score(query, doc_id, corpus);
        if (score > 0.0) scored.emplace_back(doc_id, score);
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (scored.size() > static_cast<std::size_t>(k)) scored.resize(static_cast<std::size_t>(k));

    std::vector<SearchResult> results;
    results.reserve(scored.size());
    for (const auto& [doc_id, score] : scored) {
        results.push_back({make_snippet(corpus.doc(doc_id), query), score});
    }
    return results;
}

}  // namespace sacsm
