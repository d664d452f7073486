#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sacsm/corpus.hpp"

namespace sacsm::testing {

struct RawDoc {
    std::string doc_id;
    std::string title;
    std::string body;
    std::string url;
};

inline std::string to_jsonl(const std::vector<RawDoc>& docs) {
    std::string out;
    for (const auto& d : docs) {
        nlohmann::json record;
        record["doc_id"] = d.doc_id;
        if (!d.url.empty()) record["url"] = d.url;
        record["title"] = d.title;
        record["body"] = d.body;
        out += record.dump();
        out += '\n';
    }
    return out;
}

inline Corpus make_corpus(const std::vector<RawDoc>& docs,
                          const std::vector<std::string>& blocklist = {}) {
    std::istringstream in(to_jsonl(docs));
    return ingest_corpus(in, blocklist);
}

// Repeats a word n times, space separated.
inline std::string repeat(const std::string& word, int n) {
    std::string out;
    for (int i = 0; i < n; ++i) {
        if (!out.empty()) out += ' ';
        out += word;
    }
    return out;
}

}  // namespace sacsm::testing
