#include "sacsm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace sacsm {

void KeywordCounter::add_document(const Document& doc, const KeywordSet& keywords) {
    for (const auto& token : doc.tokens) {
        if (keywords.positions.count(token)) ++counts[token];
    }
}

bool KeywordCounter::found(const std::string& keyword) const {
    auto it = counts.find(keyword);
    return it != counts.end() && it->second >= found_threshold;
}

int KeywordCounter::found_count(const KeywordSet& keywords) const {
    int n = 0;
    for (const auto& kw : keywords.topic_order) {
        if (found(kw)) ++n;
    }
    return n;
}

double MetricSeries::value_at(int docs_read) const {
    double value = 0.0;
    for (const auto& point : points) {
        if (point.docs_read > docs_read) break;
        value = point.value;
    }
    return value;
}

MetricSeries keywords_found_series(const SessionLog& log, const Corpus& corpus,
                                   const KeywordSet& keywords, int threshold) {
    if (threshold < 1) throw std::runtime_error("threshold must be >= 1");
    KeywordCounter counter;
    counter.found_threshold = threshold;
    MetricSeries series;
    const double denom = static_cast<double>(keywords.topic_order.size());
    int docs_read = 0;
    for (const auto& event : log.events) {
        if (event.kind != EventKind::kReadDoc) continue;
        counter.add_document(corpus.doc(event.doc_id), keywords);
        ++docs_read;
        series.points.push_back(
            {docs_read, denom == 0 ? 0.0 : counter.found_count(keywords) / denom});
    }
    return series;
}

MetricSeries exploration_series(const SessionLog& log, const TopicRuntime& topic,
                                const Corpus& corpus, double xi) {
    std::vector<double> trackers(topic.topic.subtopics.size(), 0.0);
    MetricSeries series;
    const double denom = static_cast<double>(trackers.size());
    int docs_read = 0;
    for (const auto& event : log.events) {
        if (event.kind != EventKind::kReadDoc) continue;
        const Document& doc = corpus.doc(event.doc_id);
        for (std::size_t i = 0; i < trackers.size(); ++i) {
            trackers[i] += doc_subtopic_similarity(doc, topic.subtopic_vectors[i], corpus);
        }
        if (!event.trackers.empty()) {
            if (event.trackers.size() != trackers.size()) {
                throw std::runtime_error("tracker snapshot size mismatch in log");
            }
            for (std::size_t i = 0; i < trackers.size(); ++i) {
                if (std::abs(event.trackers[i] - trackers[i]) > 1e-9) {
                    throw std::runtime_error(
                        "tracker replay mismatch at docs_read " + std::to_string(docs_read + 1));
                }
            }
        }
        ++docs_read;
        int explored = 0;
        for (double tracker : trackers) {
            if (tracker >= xi) ++explored;
        }
        series.points.push_back({docs_read, denom == 0 ? 0.0 : explored / denom});
    }
    return series;
}

int learned_prior_quota(int position, double prior_fraction) {
    return static_cast<int>(std::ceil(prior_fraction * (position - 1)));
}

MetricSeries learned_series(const SessionLog& log, const Corpus& corpus,
                            const KeywordSet& keywords, int threshold,
                            double prior_fraction) {
    KeywordCounter counter;
    counter.found_threshold = threshold;
    MetricSeries series;
    const std::size_t n_keywords = keywords.topic_order.size();
    const double denom = static_cast<double>(n_keywords);
    std::vector<bool> learned(n_keywords, false);
    int docs_read = 0;
    for (const auto& event : log.events) {
        if (event.kind != EventKind::kReadDoc) continue;
        counter.add_document(corpus.doc(event.doc_id), keywords);
        ++docs_read;

        std::vector<bool> found(n_keywords);
        for (std::size_t i = 0; i < n_keywords; ++i) {
            found[i] = counter.found(keywords.topic_order[i]);
        }
        int prior_found = 0;
        for (std::size_t i = 0; i < n_keywords; ++i) {
            const int quota = learned_prior_quota(static_cast<int>(i) + 1, prior_fraction);
            if (found[i] && prior_found >= quota) learned[i] = true;
            if (found[i]) ++prior_found;
        }
        const int learned_count =
            static_cast<int>(std::count(learned.begin(), learned.end(), true));
        series.points.push_back({docs_read, denom == 0 ? 0.0 : learned_count / denom});
    }
    return series;
}

SessionSummary session_summary(const SessionLog& log) {
    SessionSummary summary;
    summary.queries_issued = log.count(EventKind::kIssueQuery);
    summary.snippets_examined = log.count(EventKind::kExamineSnippet);
    summary.documents_clicked = log.count(EventKind::kClick);
    return summary;
}

namespace {

SummaryStats stats_of(const std::vector<double>& values) {
    SummaryStats stats;
    if (values.empty()) return stats;
    double sum = 0.0;
    for (double v : values) sum += v;
    stats.mean = sum / static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - stats.mean) * (v - stats.mean);
    stats.stddev = std::sqrt(var / static_cast<double>(values.size()));
    return stats;
}

}  // namespace

std::unordered_map<std::string, StrategySummary> aggregate_summaries(
    const std::vector<std::pair<Strategy, SessionSummary>>& records) {
    if (records.empty()) throw std::runtime_error("no records to aggregate");
    std::unordered_map<std::string, std::vector<SessionSummary>> grouped;
    for (const auto& [strategy, summary] : records) {
        grouped[strategy_name(strategy)].push_back(summary);
    }
    std::unordered_map<std::string, StrategySummary> result;
    for (const auto& [name, summaries] : grouped) {
        std::vector<double> queries, snippets, clicks;
        for (const auto& s : summaries) {
            queries.push_back(s.queries_issued);
            snippets.push_back(s.snippets_examined);
            clicks.push_back(s.documents_clicked);
        }
        StrategySummary entry;
        entry.queries = stats_of(queries);
        entry.snippets = stats_of(snippets);
        entry.clicks = stats_of(clicks);
        entry.sessions = static_cast<int>(summaries.size());
        result.emplace(name, std::move(entry));
    }
    return result;
}

MetricSeries aggregate_series(const std::vector<WeightedSeries>& series) {
    if (series.empty()) throw std::runtime_error("no series to aggregate");
    int max_x = 0;
    for (const auto& ws : series) {
        if (!ws.series.points.empty()) {
            max_x = std::max(max_x, ws.series.points.back().docs_read);
        }
    }
    MetricSeries out;
    for (int x = 1; x <= max_x; ++x) {
        double weighted_sum = 0.0;
        double weight_sum = 0.0;
        for (const auto& ws : series) {
            weighted_sum += ws.weight * ws.series.value_at(x);
            weight_sum += ws.weight;
        }
        out.points.push_back({x, weight_sum == 0.0 ? 0.0 : weighted_sum / weight_sum});
    }
    return out;
}

std::string format_mean_std(const SummaryStats& stats) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f(±%.2f)", stats.mean, stats.stddev);
    return buf;
}

}  // namespace sacsm
