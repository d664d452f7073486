#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace sacsm {

struct Document {
    std::string doc_id;
    std::string url;  // optional, empty if absent
    std::string title;
    std::string body;
    std::vector<std::string> tokens;  // tokenize(title + " " + body)
    std::unordered_map<std::string, int> term_counts;
};

// Immutable after ingestion; concurrent reads are safe.
struct Corpus {
    std::map<std::string, Document> documents;  // ordered by doc_id
    std::int64_t doc_count = 0;
    double avg_doc_len = 0.0;
    std::unordered_map<std::string, std::int64_t> doc_freq;
    std::unordered_map<std::string, std::int64_t> background_counts;
    std::int64_t total_tokens = 0;

    const Document& doc(const std::string& doc_id) const;
    bool has_doc(const std::string& doc_id) const;
    std::int64_t df(const std::string& term) const;
    // Maximum-likelihood background probability.
    double background_prob(const std::string& term) const;
};

// Case-insensitive substring match of any pattern against the URL host.
bool url_blocked(const std::string& url, const std::vector<std::string>& blocklist);

// Stream holds one JSON object per line: doc_id, url (optional), title, body.
// Blocked and duplicate ids are handled per the ingest contract.
Corpus ingest_corpus(std::istream& stream, const std::vector<std::string>& blocklist);
Corpus ingest_corpus_file(const std::string& path, const std::vector<std::string>& blocklist);

// Plain text, one host pattern per line, '#' comments and blank lines skipped.
std::vector<std::string> load_blocklist(const std::string& path);

}  // namespace sacsm
