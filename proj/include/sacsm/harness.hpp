#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sacsm/agent.hpp"
#include "sacsm/metrics.hpp"

namespace sacsm {

struct ExperimentGrid {
    std::vector<double> lambdas;
    std::vector<double> xis;
    std::vector<double> taus;
    std::vector<Strategy> strategies;
    std::vector<std::string> topics;  // topic ids; empty = all loaded topics
    int repetitions = 1;
    std::uint64_t master_seed = 0;

    static ExperimentGrid paper_grid();
    static ExperimentGrid load(const std::string& path);
    void validate() const;
};

struct RunRecord {
    std::string run_id;
    int agent_index = 0;
    AgentConfig config;
    std::string topic_id;
    int topic_index = 0;
    int rep = 0;  // 1-based
    std::string log_path;
    SessionSummary summary;
    MetricSeries found;
    MetricSeries explored;
    MetricSeries learned;
    int topic_kw_count = 0;
    bool failed = false;
    std::string error;
};

// SplitMix64 finalizer; the per-run seed mixes master_seed with the run
// coordinates so any run is reproducible in isolation.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master_seed, int agent_index, int topic_index,
                          int rep);

std::string make_run_id(int agent_index, const std::string& topic_id, int rep);

// Cartesian product in fixed nesting order: strategy, lambda, xi, tau.
std::vector<AgentConfig> enumerate_agents(const ExperimentGrid& grid);

struct ExperimentResult {
    std::vector<RunRecord> records;  // sorted by (agent_index, topic_index, rep)
};

// One session per (agent, topic, rep) over a bounded worker pool. Per-run
// failures are recorded, not fatal. Logs go to <out_dir>/logs/ when out_dir
// is non-empty.
ExperimentResult run_experiment(const ExperimentGrid& grid,
                                const std::vector<TopicRuntime>& topics,
                                const Corpus& corpus, int parallelism,
                                const std::string& out_dir = {});

// runs.csv, series.csv, summary_by_strategy.csv, failures.csv; stable column
// order, LF line endings.
void export_results(const ExperimentResult& result, const std::string& out_dir);

void export_keywords_csv(const std::vector<std::pair<std::string, KeywordSet>>& by_topic,
                         const std::string& path);

// strategy, docs_read, value rows for one measure, aggregated over runs
// weighted by topic keyword count.
void export_aggregated_series(const ExperimentResult& result, const std::string& path);

}  // namespace sacsm
