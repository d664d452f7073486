#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sacsm/agent.hpp"

namespace sacsm {

struct QueryCandidate {
    Query query;
    int rank = 0;
    double lm_weight = 0.0;  // probability of the fill term(s) under the accrued LM
};

// Three-term candidates: up to 2 anchor terms from the subtopic title plus
// fill terms drawn from the accrued language model in descending MLE
// probability (ties lexicographic). Already-issued queries are skipped.
// max_candidates bounds the returned list, not the enumeration order.
std::vector<QueryCandidate> generate_queries(const Topic& topic, const Subtopic& subtopic,
                                             const AgentState& state,
                                             std::size_t max_candidates = 20);

// First unissued candidate, or nullopt when the subtopic is query-exhausted.
std::optional<QueryCandidate> next_query(const Topic& topic, const Subtopic& subtopic,
                                         const AgentState& state);

bool has_unissued_candidate(const Topic& topic, const Subtopic& subtopic,
                            const AgentState& state);

// Log-likelihood-ratio of the snippet under the smoothed accrued model
// against the corpus background model. Tokens with zero background
// probability are skipped.
double snippet_score(const Snippet& snippet, const AgentState& state, double lambda,
                     const Corpus& corpus);

// Clicked iff at least one scored token, the document is unread, and
// score >= -tau (higher tau = more liberal clicker).
bool snippet_attractive(const Snippet& snippet, const AgentState& state, double lambda,
                        double tau, const Corpus& corpus);

bool continue_serp(int position, int depth, int serp_size);

// Eligible subtopics have tracker < xi and at least one unissued candidate
// query. Returns the position per the strategy, or nullopt when exhausted.
std::optional<int> select_subtopic(Strategy strategy, const AgentState& state,
                                   const AgentConfig& config, const Topic& topic,
                                   std::mt19937_64& rng);

bool continue_current_subtopic(const AgentState& state, const AgentConfig& config,
                               const Topic& topic);

}  // namespace sacsm
