#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "sacsm/agent.hpp"

namespace sacsm {

inline constexpr int kDefaultFoundThreshold = 5;
inline constexpr double kDefaultPriorFraction = 0.3;

struct KeywordCounter {
    std::unordered_map<std::string, std::int64_t> counts;
    int found_threshold = kDefaultFoundThreshold;

    void add_document(const Document& doc, const KeywordSet& keywords);
    bool found(const std::string& keyword) const;
    int found_count(const KeywordSet& keywords) const;
};

struct MetricPoint {
    int docs_read = 0;  // strictly increasing from 1
    double value = 0.0;
};

struct MetricSeries {
    std::vector<MetricPoint> points;

    double value_at(int docs_read) const;  // carries final value forward, 0 before first
};

struct SessionSummary {
    int queries_issued = 0;
    int snippets_examined = 0;
    int documents_clicked = 0;
};

// Fraction of topic keywords whose cumulative occurrence count across read
// documents has reached the threshold, after each READ_DOC.
MetricSeries keywords_found_series(const SessionLog& log, const Corpus& corpus,
                                   const KeywordSet& keywords,
                                   int threshold = kDefaultFoundThreshold);

// Fraction of subtopics whose replayed tracker has reached xi, after each
// READ_DOC. Throws when the replay disagrees with logged tracker snapshots.
MetricSeries exploration_series(const SessionLog& log, const TopicRuntime& topic,
                                const Corpus& corpus, double xi);

// A keyword at 1-based appearance position i counts as learned once it is
// found and at least ceil(prior_fraction * (i - 1)) earlier keywords are
// found too.
MetricSeries learned_series(const SessionLog& log, const Corpus& corpus,
                            const KeywordSet& keywords,
                            int threshold = kDefaultFoundThreshold,
                            double prior_fraction = kDefaultPriorFraction);

// Quota of prior keywords required before position i counts as learned.
int learned_prior_quota(int position, double prior_fraction);

SessionSummary session_summary(const SessionLog& log);

struct SummaryStats {
    double mean = 0.0;
    double stddev = 0.0;  // population
};

struct StrategySummary {
    SummaryStats queries;
    SummaryStats snippets;
    SummaryStats clicks;
    int sessions = 0;
};

// Per-strategy mean and population standard deviation of the summary counts.
std::unordered_map<std::string, StrategySummary> aggregate_summaries(
    const std::vector<std::pair<Strategy, SessionSummary>>& records);

struct WeightedSeries {
    MetricSeries series;
    double weight = 1.0;  // topic keyword count
};

// Per-x weighted mean; series shorter than x carry their final value.
MetricSeries aggregate_series(const std::vector<WeightedSeries>& series);

// "13.05(±14.93)" rendering used by the summary table.
std::string format_mean_std(const SummaryStats& stats);

}  // namespace sacsm
