#include "sacsm/agent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "sacsm/strategies.hpp"
#include "sacsm/text.hpp"

namespace sacsm {

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::kGreedy: return "greedy";
        case Strategy::kGreedySkip: return "greedy_skip";
        case Strategy::kReverse: return "reverse";
        case Strategy::kRandom: return "random";
    }
    throw std::runtime_error("unknown strategy");
}

Strategy strategy_from_name(const std::string& name) {
    if (name == "greedy") return Strategy::kGreedy;
    if (name == "greedy_skip") return Strategy::kGreedySkip;
    if (name == "reverse") return Strategy::kReverse;
    if (name == "random") return Strategy::kRandom;
    throw std::runtime_error("unknown strategy: " + name);
}

Centiseconds to_centiseconds(double seconds) {
    return static_cast<Centiseconds>(std::llround(seconds * 100.0));
}

std::string format_seconds(Centiseconds cs) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld.%02lld",
                  static_cast<long long>(cs / 100), static_cast<long long>(cs % 100));
    return buf;
}

void AgentConfig::validate() const {
    if (lambda < 0.0 || lambda > 1.0) throw std::runtime_error("lambda must be in [0,1]");
    if (xi <= 0.0) throw std::runtime_error("xi must be > 0");
    if (tau < 0.0) throw std::runtime_error("tau must be >= 0");
    if (snippet_depth < 1) throw std::runtime_error("snippet_depth must be >= 1");
    if (session_budget < 0.0) throw std::runtime_error("session_budget must be >= 0");
    if (learned_prior_fraction < 0.0 || learned_prior_fraction > 1.0) {
        throw std::runtime_error("learned_prior_fraction must be in [0,1]");
    }
    if (costs.query_cost < 0 || costs.serp_cost < 0 || costs.snippet_cost < 0 ||
        costs.document_cost < 0) {
        throw std::runtime_error("costs must be >= 0");
    }
}

void LanguageModel::add(const std::vector<std::string>& tokens) {
    for (const auto& t : tokens) {
        ++counts[t];
        ++total;
    }
}

double LanguageModel::prob(const std::string& term) const {
    if (total == 0) return 0.0;
    auto it = counts.find(term);
    if (it == counts.end()) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(total);
}

AgentState AgentState::fresh(const AgentConfig& config, const Topic& topic) {
    AgentState state;
    state.trackers.assign(topic.subtopics.size(), 0.0);
    state.accrued_lm.add(tokenize(topic.description));
    state.rng.seed(config.seed);
    return state;
}

std::string event_kind_name(EventKind kind) {
    switch (kind) {
        case EventKind::kSessionStart: return "SESSION_START";
        case EventKind::kSelectSubtopic: return "SELECT_SUBTOPIC";
        case EventKind::kIssueQuery: return "ISSUE_QUERY";
        case EventKind::kViewSerp: return "VIEW_SERP";
        case EventKind::kExamineSnippet: return "EXAMINE_SNIPPET";
        case EventKind::kClick: return "CLICK";
        case EventKind::kReadDoc: return "READ_DOC";
        case EventKind::kSessionEnd: return "SESSION_END";
    }
    throw std::runtime_error("unknown event kind");
}

EventKind event_kind_from_name(const std::string& name) {
    if (name == "SESSION_START") return EventKind::kSessionStart;
    if (name == "SELECT_SUBTOPIC") return EventKind::kSelectSubtopic;
    if (name == "ISSUE_QUERY") return EventKind::kIssueQuery;
    if (name == "VIEW_SERP") return EventKind::kViewSerp;
    if (name == "EXAMINE_SNIPPET") return EventKind::kExamineSnippet;
    if (name == "CLICK") return EventKind::kClick;
    if (name == "READ_DOC") return EventKind::kReadDoc;
    if (name == "SESSION_END") return EventKind::kSessionEnd;
    throw std::runtime_error("unknown event kind: " + name);
}

int SessionLog::count(EventKind kind) const {
    return static_cast<int>(
        std::count_if(events.begin(), events.end(),
                      [kind](const SessionEvent& e) { return e.kind == kind; }));
}

Centiseconds event_cost(EventKind kind, const CostTable& costs) {
    switch (kind) {
        case EventKind::kIssueQuery: return to_centiseconds(costs.query_cost);
        case EventKind::kViewSerp: return to_centiseconds(costs.serp_cost);
        case EventKind::kExamineSnippet: return to_centiseconds(costs.snippet_cost);
        case EventKind::kReadDoc: return to_centiseconds(costs.document_cost);
        default: return 0;
    }
}

void charge_cost(AgentState& state, EventKind kind, const CostTable& costs) {
    state.clock += event_cost(kind, costs);
}

void update_state(AgentState& state, const Document& doc, const TopicRuntime& topic,
                  const Corpus& corpus) {
    if (state.read_docs.count(doc.doc_id)) {
        throw std::runtime_error("document already read: " + doc.doc_id);
    }
    state.read_docs.insert(doc.doc_id);
    state.accrued_lm.add(doc.tokens);
    std::vector<double> sims;
    if (topic.doc_vectors.count(doc.doc_id)) {
        sims = topic.doc_similarities(doc.doc_id);
    } else {
        for (const auto& vec : topic.subtopic_vectors) {
            sims.push_back(doc_subtopic_similarity(doc, vec, corpus));
        }
    }
    for (std::size_t i = 0; i < sims.size(); ++i) {
        state.trackers[i] += sims[i];
    }
}

bool is_session_over(const AgentState& state, const AgentConfig& config,
                     const TopicRuntime& topic) {
    if (state.clock >= to_centiseconds(config.session_budget)) return true;
    bool all_explored = true;
    for (double tracker : state.trackers) {
        if (tracker < config.xi) {
            all_explored = false;
            break;
        }
    }
    if (all_explored) return true;
    for (std::size_t pos = 0; pos < topic.topic.subtopics.size(); ++pos) {
        if (state.trackers[pos] >= config.xi) continue;
        if (has_unissued_candidate(topic.topic, topic.topic.subtopics[pos], state)) {
            return false;
        }
    }
    return true;
}

SessionLog run_session(const AgentConfig& config, const TopicRuntime& topic,
                       const SearchBackend& engine, const Corpus& corpus) {
    config.validate();
    if (topic.topic.subtopics.empty()) {
        throw std::runtime_error("topic has no subtopics: " + topic.topic.topic_id);
    }

    AgentState state = AgentState::fresh(config, topic.topic);
    const Centiseconds budget = to_centiseconds(config.session_budget);
    SessionLog log;

    auto push = [&](EventKind kind) -> SessionEvent& {
        SessionEvent event;
        event.kind = kind;
        event.t = state.clock;
        log.events.push_back(std::move(event));
        return log.events.back();
    };
    auto over_budget = [&] { return state.clock >= budget; };

    push(EventKind::kSessionStart);

    while (!over_budget() && !is_session_over(state, config, topic)) {
        auto selected = select_subtopic(config.strategy, state, config, topic.topic, state.rng);
        if (!selected) break;
        state.current_subtopic = *selected;
        const Subtopic& subtopic = topic.topic.subtopics[*selected];
        push(EventKind::kSelectSubtopic).subtopic_id = subtopic.subtopic_id;

        bool stay = true;
        while (stay) {
            auto candidate = next_query(topic.topic, subtopic, state);
            if (!candidate) break;
            const Query query = candidate->query;
            state.issued_queries.insert(query.canonical());

            charge_cost(state, EventKind::kIssueQuery, config.costs);
            {
                auto& event = push(EventKind::kIssueQuery);
                event.subtopic_id = subtopic.subtopic_id;
                event.query_terms = query.terms;
            }
            if (over_budget()) break;

            charge_cost(state, EventKind::kViewSerp, config.costs);
            push(EventKind::kViewSerp).subtopic_id = subtopic.subtopic_id;
            if (over_budget()) break;

            std::vector<SearchResult> serp;
            try {
                serp = engine.run(query, kDefaultSerpSize);
            } catch (const std::exception& e) {
                throw std::runtime_error("search failed for query '" + query.canonical() +
                                         "' (subtopic " + subtopic.subtopic_id +
                                         "): " + e.what());
            }

            const int to_examine =
                std::min<int>(config.snippet_depth, static_cast<int>(serp.size()));
            for (int pos = 1; pos <= to_examine; ++pos) {
                const SearchResult& result = serp[pos - 1];
                charge_cost(state, EventKind::kExamineSnippet, config.costs);
                const double score =
                    snippet_score(result.snippet, state, config.lambda, corpus);
                const bool attractive = snippet_attractive(result.snippet, state,
                                                           config.lambda, config.tau, corpus);
                {
                    auto& event = push(EventKind::kExamineSnippet);
                    event.subtopic_id = subtopic.subtopic_id;
                    event.doc_id = result.snippet.doc_id;
                    event.position = pos;
                    event.score = std::max(score, -1e300);
                    event.attractive = attractive;
                }
                if (over_budget()) break;

                if (attractive) {
                    charge_cost(state, EventKind::kReadDoc, config.costs);
                    {
                        auto& event = push(EventKind::kClick);
                        event.subtopic_id = subtopic.subtopic_id;
                        event.doc_id = result.snippet.doc_id;
                        event.position = pos;
                    }
                    update_state(state, corpus.doc(result.snippet.doc_id), topic, corpus);
                    {
                        auto& event = push(EventKind::kReadDoc);
                        event.subtopic_id = subtopic.subtopic_id;
                        event.doc_id = result.snippet.doc_id;
                        event.trackers = state.trackers;
                    }
                    if (over_budget()) break;
                }
            }
            if (over_budget()) break;

            if (config.strategy == Strategy::kRandom) {
                stay = false;  // reselect after every query
            } else {
                stay = continue_current_subtopic(state, config, topic.topic);
            }
        }
        if (over_budget()) break;
    }

    push(EventKind::kSessionEnd);
    return log;
}

namespace {

nlohmann::json event_payload(const SessionEvent& event) {
    nlohmann::json payload = nlohmann::json::object();
    switch (event.kind) {
        case EventKind::kSessionStart:
        case EventKind::kSessionEnd:
            break;
        case EventKind::kSelectSubtopic:
        case EventKind::kViewSerp:
            payload["subtopic_id"] = event.subtopic_id;
            break;
        case EventKind::kIssueQuery:
            payload["subtopic_id"] = event.subtopic_id;
            payload["terms"] = event.query_terms;
            break;
        case EventKind::kExamineSnippet:
            payload["subtopic_id"] = event.subtopic_id;
            payload["doc_id"] = event.doc_id;
            payload["position"] = event.position;
            payload["score"] = event.score;
            payload["attractive"] = event.attractive;
            break;
        case EventKind::kClick:
            payload["subtopic_id"] = event.subtopic_id;
            payload["doc_id"] = event.doc_id;
            payload["position"] = event.position;
            break;
        case EventKind::kReadDoc:
            payload["subtopic_id"] = event.subtopic_id;
            payload["doc_id"] = event.doc_id;
            payload["trackers"] = event.trackers;
            break;
    }
    return payload;
}

}  // namespace

void write_session_log(std::ostream& out, const SessionLog& log, const std::string& run_id) {
    const std::string run_id_json = nlohmann::json(run_id).dump();
    int seq = 0;
    for (const auto& event : log.events) {
        out << "{\"run_id\":" << run_id_json << ",\"seq\":" << seq++ << ",\"kind\":\""
            << event_kind_name(event.kind) << "\",\"t\":" << format_seconds(event.t)
            << ",\"payload\":" << event_payload(event).dump() << "}\n";
    }
}

void write_session_log_file(const std::string& path, const SessionLog& log,
                            const std::string& run_id) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write session log: " + path);
    write_session_log(out, log, run_id);
}

SessionLog read_session_log(std::istream& in) {
    SessionLog log;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json record = nlohmann::json::parse(line);
        SessionEvent event;
        event.kind = event_kind_from_name(record.at("kind").get<std::string>());
        event.t = to_centiseconds(record.at("t").get<double>());
        const auto& payload = record.at("payload");
        event.subtopic_id = payload.value("subtopic_id", std::string{});
        event.doc_id = payload.value("doc_id", std::string{});
        event.position = payload.value("position", 0);
        event.score = payload.value("score", 0.0);
        event.attractive = payload.value("attractive", false);
        if (payload.contains("terms")) {
            event.query_terms = payload.at("terms").get<std::vector<std::string>>();
        }
        if (payload.contains("trackers")) {
            event.trackers = payload.at("trackers").get<std::vector<double>>();
        }
        log.events.push_back(std::move(event));
    }
    return log;
}

SessionLog read_session_log_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open session log: " + path);
    return read_session_log(in);
}

}  // namespace sacsm
