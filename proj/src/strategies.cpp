#include "sacsm/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sacsm/text.hpp"

namespace sacsm {

namespace {

std::vector<std::string> anchor_terms(const Subtopic& subtopic) {
    std::vector<std::string> anchor;
    for (const auto& term : tokenize(subtopic.title)) {
        if (std::find(anchor.begin(), anchor.end(), term) == anchor.end()) {
            anchor.push_back(term);
            if (anchor.size() == 2) break;
        }
    }
    return anchor;
}

// Fill terms ranked by descending MLE probability, ties lexicographic,
// anchor terms excluded.
std::vector<std::pair<std::string, double>> ranked_fill_terms(
    const AgentState& state, const std::vector<std::string>& anchor) {
    std::vector<std::pair<std::string, double>> ranked;
    ranked.reserve(state.accrued_lm.counts.size());
    for (const auto& [term, count] : state.accrued_lm.counts) {
        if (count <= 0) continue;
        if (std::find(anchor.begin(), anchor.end(), term) != anchor.end()) continue;
        ranked.emplace_back(term, state.accrued_lm.prob(term));
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return ranked;
}

// Lexicographic advance over k-combinations of {0..n-1}; false when done.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] + (k - i) < n) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Visits unissued candidates in enumeration order until the visitor returns
// false. Returns immediately when the subtopic has no fill terms.
template <typename Visitor>
void enumerate_candidates(const Subtopic& subtopic, const AgentState& state,
                          Visitor&& visit) {
    const auto anchor = anchor_terms(subtopic);
    const std::size_t fill_slots = 3 - anchor.size();
    const auto ranked = ranked_fill_terms(state, anchor);
    if (ranked.size() < fill_slots || fill_slots == 0) return;

    std::vector<std::size_t> idx(fill_slots);
    for (std::size_t i = 0; i < fill_slots; ++i) idx[i] = i;
    do {
        Query query;
        query.terms = anchor;
        query.subtopic_id = subtopic.subtopic_id;
        double weight = 1.0;
        for (std::size_t i : idx) {
            query.terms.push_back(ranked[i].first);
            weight *= ranked[i].second;
        }
        if (!state.issued_queries.count(query.canonical())) {
            if (!visit(std::move(query), weight)) return;
        }
    } while (next_combination(idx, ranked.size()));
}

}  // namespace

std::vector<QueryCandidate> generate_queries(const Topic& /*topic*/, const Subtopic& subtopic,
                                             const AgentState& state,
                                             std::size_t max_candidates) {
    std::vector<QueryCandidate> candidates;
    enumerate_candidates(subtopic, state, [&](Query query, double weight) {
        QueryCandidate candidate;
        candidate.query = std::move(query);
        candidate.rank = static_cast<int>(candidates.size());
        candidate.lm_weight = weight;
        candidates.push_back(std::move(candidate));
        return candidates.size() < max_candidates;
    });
    return candidates;
}

std::optional<QueryCandidate> next_query(const Topic& topic, const Subtopic& subtopic,
                                         const AgentState& state) {
    auto candidates = generate_queries(topic, subtopic, state, 1);
    if (candidates.empty()) return std::nullopt;
    return candidates.front();
}

bool has_unissued_candidate(const Topic& topic, const Subtopic& subtopic,
                            const AgentState& state) {
    return next_query(topic, subtopic, state).has_value();
}

double snippet_score(const Snippet& snippet, const AgentState& state, double lambda,
                     const Corpus& corpus) {
    double score = 0.0;
    for (const auto& token : snippet.tokens) {
        const double p_bg = corpus.background_prob(token);
        if (p_bg <= 0.0) continue;
        const double p_acc = state.accrued_lm.prob(token);
        const double mixed = lambda * p_acc + (1.0 - lambda) * p_bg;
        if (mixed <= 0.0) return -std::numeric_limits<double>::infinity();
        score += std::log(mixed / p_bg);
    }
    return score;
}

bool snippet_attractive(const Snippet& snippet, const AgentState& state, double lambda,
                        double tau, const Corpus& corpus) {
    if (state.read_docs.count(snippet.doc_id)) return false;
    bool any_scored = false;
    for (const auto& token : snippet.tokens) {
        if (corpus.background_prob(token) > 0.0) {
            any_scored = true;
            break;
        }
    }
    if (!any_scored) return false;
    return snippet_score(snippet, state, lambda, corpus) >= -tau;
}

bool continue_serp(int position, int depth, int serp_size) {
    return position < depth && position < serp_size;
}

std::optional<int> select_subtopic(Strategy strategy, const AgentState& state,
                                   const AgentConfig& config, const Topic& topic,
                                   std::mt19937_64& rng) {
    std::vector<int> eligible;
    for (std::size_t pos = 0; pos < topic.subtopics.size(); ++pos) {
        if (state.trackers[pos] >= config.xi) continue;
        if (!has_unissued_candidate(topic, topic.subtopics[pos], state)) continue;
        eligible.push_back(static_cast<int>(pos));
    }
    if (eligible.empty()) return std::nullopt;

    switch (strategy) {
        case Strategy::kGreedy:
            return eligible.front();
        case Strategy::kReverse:
            return eligible.back();
        case Strategy::kGreedySkip: {
            int best = eligible.front();
            for (int pos : eligible) {
                if (state.trackers[pos] < state.trackers[best]) best = pos;
            }
            return best;
        }
        case Strategy::kRandom:
            return eligible[rng() % eligible.size()];
    }
    return std::nullopt;
}

bool continue_current_subtopic(const AgentState& state, const AgentConfig& config,
                               const Topic& topic) {
    const int pos = state.current_subtopic;
    if (pos < 0) return false;
    if (state.trackers[pos] >= config.xi) return false;
    return has_unissued_candidate(topic, topic.subtopics[pos], state);
}

}  // namespace sacsm
