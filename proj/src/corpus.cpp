#include "sacsm/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "sacsm/text.hpp"

namespace sacsm {

namespace {

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Host component of a URL: text between "://" (or start) and the next '/',
// ':' or '?'.
std::string url_host(const std::string& url) {
    std::string rest = url;
    auto scheme = rest.find("://");
    if (scheme != std::string::npos) {
        rest = rest.substr(scheme + 3);
    }
    auto end = rest.find_first_of("/:?");
    if (end != std::string::npos) {
        rest = rest.substr(0, end);
    }
    return to_lower(rest);
}

}  // namespace

const Document& Corpus::doc(const std::string& doc_id) const {
    auto it = documents.find(doc_id);
    if (it == documents.end()) {
        throw std::runtime_error("unknown doc_id: " + doc_id);
    }
    return it->second;
}

bool Corpus::has_doc(const std::string& doc_id) const {
    return documents.count(doc_id) > 0;
}

std::int64_t Corpus::df(const std::string& term) const {
    auto it = doc_freq.find(term);
    return it == doc_freq.end() ? 0 : it->second;
}

double Corpus::background_prob(const std::string& term) const {
    if (total_tokens == 0) return 0.0;
    auto it = background_counts.find(term);
    if (it == background_counts.end()) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(total_tokens);
}

bool url_blocked(const std::string& url, const std::vector<std::string>& blocklist) {
    if (url.empty()) return false;
    const std::string host = url_host(url);
    for (const auto& pattern : blocklist) {
        if (!pattern.empty() && host.find(to_lower(pattern)) != std::string::npos) {
            return true;
        }
    }
    return false;
}

Corpus ingest_corpus(std::istream& stream, const std::vector<std::string>& blocklist) {
    Corpus corpus;
    std::string line;
    std::int64_t line_no = 0;
    std::int64_t token_sum = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error("unreadable corpus record at line " +
                                     std::to_string(line_no) + ": " + e.what());
        }
        if (!record.is_object() || !record.contains("doc_id") || !record.contains("title") ||
            !record.contains("body")) {
            throw std::runtime_error("unreadable corpus record at line " +
                                     std::to_string(line_no) +
                                     ": missing doc_id/title/body");
        }
        Document doc;
        doc.doc_id = record.at("doc_id").get<std::string>();
        if (doc.doc_id.empty()) {
            throw std::runtime_error("empty doc_id at line " + std::to_string(line_no));
        }
        doc.url = record.value("url", std::string{});
        doc.title = record.at("title").get<std::string>();
        doc.body = record.at("body").get<std::string>();
        if (url_blocked(doc.url, blocklist)) continue;
        if (corpus.documents.count(doc.doc_id)) {
            throw std::runtime_error("duplicate doc_id: " + doc.doc_id);
        }
        doc.tokens = tokenize(doc.title + " " + doc.body);
        for (const auto& t : doc.tokens) {
            ++doc.term_counts[t];
        }
        for (const auto& [term, count] : doc.term_counts) {
            ++corpus.doc_freq[term];
            corpus.background_counts[term] += count;
        }
        token_sum += static_cast<std::int64_t>(doc.tokens.size());
        corpus.documents.emplace(doc.doc_id, std::move(doc));
    }
    corpus.doc_count = static_cast<std::int64_t>(corpus.documents.size());
    corpus.total_tokens = token_sum;
    corpus.avg_doc_len = corpus.doc_count == 0
                             ? 0.0
                             : static_cast<double>(token_sum) / static_cast<double>(corpus.doc_count);
    return corpus;
}

Corpus ingest_corpus_file(const std::string& path, const std::vector<std::string>& blocklist) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open corpus file: " + path);
    }
    return ingest_corpus(in, blocklist);
}

std::vector<std::string> load_blocklist(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open blocklist file: " + path);
    }
    std::vector<std::string> patterns;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        // trim
        auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        auto end = line.find_last_not_of(" \t\r");
        patterns.push_back(line.substr(begin, end - begin + 1));
    }
    return patterns;
}

}  // namespace sacsm
