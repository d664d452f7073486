#pragma once

#include <string>
#include <vector>

#include "sacsm/corpus.hpp"

namespace sacsm {

struct Query {
    std::vector<std::string> terms;  // exactly 3, normalized, distinct
    std::string subtopic_id;

    // Terms joined by single spaces in emission order; used for dedup.
    std::string canonical() const;
};

struct Snippet {
    std::string doc_id;
    std::string title;
    std::string text;
    std::vector<std::string> tokens;  // tokenize(title) + window tokens
};

struct SearchResult {
    Snippet snippet;
    double score = 0.0;
};

inline constexpr double kBm25K1 = 1.2;
inline constexpr double kBm25B = 0.75;
inline constexpr int kDefaultSerpSize = 10;
inline constexpr int kDefaultSnippetWindow = 30;

// idf(t) = ln((N - df + 0.5) / (df + 0.5) + 1)
double bm25_idf(std::int64_t doc_count, std::int64_t df);

// Okapi BM25 over the query terms; absent terms contribute 0.
double bm25_score(const Query& query, const std::string& doc_id, const Corpus& corpus);

// Query-biased snippet: the contiguous window of body tokens maximizing the
// number of distinct query terms, earliest window on ties; leading window
// when no query term occurs.
Snippet make_snippet(const Document& doc, const Query& query,
                     int window_size = kDefaultSnippetWindow);

// Top-k by descending score, ties by ascending doc_id; zero-score documents
// are excluded, so fewer than k results may be returned.
std::vector<SearchResult> search(const Query& query, int k, const Corpus& corpus);

class SearchBackend {
  public:
    virtual ~SearchBackend() = default;
    virtual std::vector<SearchResult> run(const Query& query, int k) const = 0;
};

class Bm25Engine final : public SearchBackend {
  public:
    explicit Bm25Engine(const Corpus& corpus) : corpus_(corpus) {}
    std::vector<SearchResult> run(const Query& query, int k) const override {
        return search(query, k, corpus_);
    }

  private:
    const Corpus& corpus_;
};

}  // namespace sacsm
