#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sacsm/search.hpp"
#include "sacsm/topic.hpp"

namespace sacsm {

enum class Strategy { kGreedy, kGreedySkip, kReverse, kRandom };

std::string strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);

// Interaction costs in seconds; kept internally in integer centiseconds so
// clock accounting is exact.
struct CostTable {
    double query_cost = 9.42;
    double serp_cost = 2.00;
    double snippet_cost = 3.00;
    double document_cost = 80.00;
};

using Centiseconds = std::int64_t;
Centiseconds to_centiseconds(double seconds);
std::string format_seconds(Centiseconds cs);  // fixed 2 decimals

struct AgentConfig {
    double lambda = 0.4;   // learning speed, in [0,1]
    double xi = 6.0;       // exploration threshold, > 0
    double tau = 1.0;      // click tolerance, >= 0
    Strategy strategy = Strategy::kGreedy;
    int snippet_depth = 10;
    CostTable costs;
    double session_budget = 2400.0;  // seconds
    double learned_prior_fraction = 0.3;
    std::uint64_t seed = 0;

    void validate() const;  // throws on out-of-range parameters
};

struct LanguageModel {
    std::unordered_map<std::string, std::int64_t> counts;
    std::int64_t total = 0;

    void add(const std::vector<std::string>& tokens);
    double prob(const std::string& term) const;  // MLE, 0 when total == 0
};

struct AgentState {
    Centiseconds clock = 0;
    int current_subtopic = -1;  // position, -1 = none
    std::vector<double> trackers;
    LanguageModel accrued_lm;
    std::unordered_set<std::string> read_docs;
    std::unordered_set<std::string> issued_queries;
    std::mt19937_64 rng;

    static AgentState fresh(const AgentConfig& config, const Topic& topic);
};

enum class EventKind {
    kSessionStart,
    kSelectSubtopic,
    kIssueQuery,
    kViewSerp,
    kExamineSnippet,
    kClick,
    kReadDoc,
    kSessionEnd,
};

std::string event_kind_name(EventKind kind);
EventKind event_kind_from_name(const std::string& name);

struct SessionEvent {
    EventKind kind;
    Centiseconds t = 0;
    std::string subtopic_id;
    std::vector<std::string> query_terms;
    std::string doc_id;
    int position = 0;           // 1-based SERP position for snippet events
    double score = 0.0;         // snippet classifier score
    bool attractive = false;
    std::vector<double> trackers;  // snapshot, READ_DOC events only
};

struct SessionLog {
    std::vector<SessionEvent> events;

    int count(EventKind kind) const;
};

// One JSONL event per line: {run_id, seq, kind, t, payload}.
void write_session_log(std::ostream& out, const SessionLog& log, const std::string& run_id);
void write_session_log_file(const std::string& path, const SessionLog& log,
                            const std::string& run_id);
SessionLog read_session_log(std::istream& in);
SessionLog read_session_log_file(const std::string& path);

// Per-event cost at the given table; SESSION_START, SELECT_SUBTOPIC, CLICK
// and SESSION_END are free, READ_DOC carries the document cost.
Centiseconds event_cost(EventKind kind, const CostTable& costs);

void charge_cost(AgentState& state, EventKind kind, const CostTable& costs);

// Adds the document to the agent's knowledge: read set, accrued language
// model, and every subtopic tracker by its document similarity.
void update_state(AgentState& state, const Document& doc, const TopicRuntime& topic,
                  const Corpus& corpus);

bool is_session_over(const AgentState& state, const AgentConfig& config,
                     const TopicRuntime& topic);

// Full session loop: subtopic selection, querying, SERP walk, clicks, state
// updates, budget stop.
SessionLog run_session(const AgentConfig& config, const TopicRuntime& topic,
                       const SearchBackend& engine, const Corpus& corpus);

}  // namespace sacsm
