#include "sacsm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace sacsm {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
    if (!out) throw std::runtime_error("cannot write file: " + path);
    return out;
}

}  // namespace

ExperimentGrid ExperimentGrid::paper_grid() {
    ExperimentGrid grid;
    grid.strategies = {Strategy::kGreedy, Strategy::kGreedySkip, Strategy::kReverse,
                       Strategy::kRandom};
    grid.lambdas = {0.1, 0.4, 0.8};
    grid.xis = {2.0, 6.0, 10.0};
    grid.taus = {0.0, 1.0, 3.0, 5.0};
    grid.repetitions = 10;
    return grid;
}

void ExperimentGrid::validate() const {
    if (strategies.empty()) throw std::runtime_error("strategies empty");
    if (lambdas.empty()) throw std::runtime_error("lambdas empty");
    if (xis.empty()) throw std::runtime_error("xis empty");
    if (taus.empty()) throw std::runtime_error("taus empty");
    if (repetitions < 1) throw std::runtime_error("repetitions must be >= 1");
}

ExperimentGrid ExperimentGrid::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open grid file: " + path);
    nlohmann::json root = nlohmann::json::parse(in);
    ExperimentGrid grid;
    grid.lambdas = root.at("lambdas").get<std::vector<double>>();
    grid.xis = root.at("xis").get<std::vector<double>>();
    grid.taus = root.at("taus").get<std::vector<double>>();
    for (const auto& name : root.at("strategies")) {
        grid.strategies.push_back(strategy_from_name(name.get<std::string>()));
    }
    if (root.contains("topics")) {
        grid.topics = root.at("topics").get<std::vector<std::string>>();
    }
    grid.repetitions = root.value("repetitions", 1);
    grid.master_seed = root.value("master_seed", std::uint64_t{0});
    grid.validate();
    return grid;
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, int agent_index, int topic_index,
                          int rep) {
    std::uint64_t seed = mix64(master_seed);
    seed = mix64(seed ^ static_cast<std::uint64_t>(agent_index));
    seed = mix64(seed ^ static_cast<std::uint64_t>(topic_index));
    seed = mix64(seed ^ static_cast<std::uint64_t>(rep));
    return seed;
}

std::string make_run_id(int agent_index, const std::string& topic_id, int rep) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "a%03d", agent_index);
    return std::string(buf) + "_" + topic_id + "_r" + std::to_string(rep);
}

std::vector<AgentConfig> enumerate_agents(const ExperimentGrid& grid) {
    grid.validate();
    std::vector<AgentConfig> agents;
    for (Strategy strategy : grid.strategies) {
        for (double lambda : grid.lambdas) {
            for (double xi : grid.xis) {
                for (double tau : grid.taus) {
                    AgentConfig config;
                    config.strategy = strategy;
                    config.lambda = lambda;
                    config.xi = xi;
                    config.tau = tau;
                    config.validate();
                    agents.push_back(config);
                }
            }
        }
    }
    return agents;
}

ExperimentResult run_experiment(const ExperimentGrid& grid,
                                const std::vector<TopicRuntime>& topics,
                                const Corpus& corpus, int parallelism,
                                const std::string& out_dir) {
    if (parallelism < 1) throw std::runtime_error("parallelism must be >= 1");
    const std::vector<AgentConfig> agents = enumerate_agents(grid);

    std::vector<int> topic_indices;
    if (grid.topics.empty()) {
        for (std::size_t i = 0; i < topics.size(); ++i) topic_indices.push_back((int)i);
    } else {
        for (const auto& id : grid.topics) {
            auto it = std::find_if(topics.begin(), topics.end(), [&](const TopicRuntime& t) {
                return t.topic.topic_id == id;
            });
            if (it == topics.end()) throw std::runtime_error("unknown topic in grid: " + id);
            topic_indices.push_back(static_cast<int>(it - topics.begin()));
        }
    }
    if (topic_indices.empty()) throw std::runtime_error("topics empty");

    std::string log_dir;
    if (!out_dir.empty()) {
        log_dir = out_dir + "/logs";
        std::filesystem::create_directories(log_dir);
    }

    struct Task {
        int agent_index;
        int topic_slot;  // index into topic_indices
        int rep;
    };
    std::vector<Task> tasks;
    for (std::size_t a = 0; a < agents.size(); ++a) {
        for (std::size_t t = 0; t < topic_indices.size(); ++t) {
            for (int rep = 1; rep <= grid.repetitions; ++rep) {
                tasks.push_back({static_cast<int>(a), static_cast<int>(t), rep});
            }
        }
    }

    ExperimentResult result;
    result.records.resize(tasks.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& task = tasks[i];
            const TopicRuntime& topic = topics[topic_indices[task.topic_slot]];

            RunRecord record;
            record.agent_index = task.agent_index;
            record.config = agents[task.agent_index];
            record.topic_id = topic.topic.topic_id;
            record.topic_index = task.topic_slot;
            record.rep = task.rep;
            record.config.seed =
                derive_seed(grid.master_seed, task.agent_index, task.topic_slot, task.rep);
            record.run_id = make_run_id(task.agent_index, record.topic_id, task.rep);
            record.topic_kw_count = static_cast<int>(topic.keywords.topic_order.size());
            try {
                Bm25Engine engine(corpus);
                SessionLog log = run_session(record.config, topic, engine, corpus);
                record.summary = session_summary(log);
                record.found = keywords_found_series(log, corpus, topic.keywords);
                record.explored = exploration_series(log, topic, corpus, record.config.xi);
                record.learned = learned_series(log, corpus, topic.keywords,
                                                kDefaultFoundThreshold,
                                                record.config.learned_prior_fraction);
                if (!log_dir.empty()) {
                    record.log_path = log_dir + "/" + record.run_id + ".jsonl";
                    write_session_log_file(record.log_path, log, record.run_id);
                }
            } catch (const std::exception& e) {
                record.failed = true;
                record.error = e.what();
            }
            result.records[i] = std::move(record);
        }
    };

    if (parallelism == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int i = 0; i < parallelism; ++i) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    // Task enumeration order is already (agent_index, topic_index, rep).
    return result;
}

void export_results(const ExperimentResult& result, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);

    auto runs = open_csv(out_dir + "/runs.csv");
    runs << "run_id,agent_index,strategy,lambda,xi,tau,topic_id,rep,seed,"
            "queries_issued,snippets_examined,documents_clicked,docs_read,"
            "topic_kw_count,log_path\n";
    for (const auto& r : result.records) {
        if (r.failed) continue;
        runs << r.run_id << ',' << r.agent_index << ',' << strategy_name(r.config.strategy)
             << ',' << fmt_double(r.config.lambda) << ',' << fmt_double(r.config.xi) << ','
             << fmt_double(r.config.tau) << ',' << r.topic_id << ',' << r.rep << ','
             << r.config.seed << ',' << r.summary.queries_issued << ','
             << r.summary.snippets_examined << ',' << r.summary.documents_clicked << ','
             << r.found.points.size() << ',' << r.topic_kw_count << ',' << r.log_path
             << '\n';
    }

    auto series = open_csv(out_dir + "/series.csv");
    series << "run_id,agent_id,topic_id,rep,docs_read,kw_found_frac,explored_frac,"
              "learned_frac\n";
    for (const auto& r : result.records) {
        if (r.failed) continue;
        for (std::size_t i = 0; i < r.found.points.size(); ++i) {
            series << r.run_id << ',' << r.agent_index << ',' << r.topic_id << ',' << r.rep
                   << ',' << r.found.points[i].docs_read << ','
                   << fmt_double(r.found.points[i].value) << ','
                   << fmt_double(r.explored.points[i].value) << ','
                   << fmt_double(r.learned.points[i].value) << '\n';
        }
    }

    std::vector<std::pair<Strategy, SessionSummary>> summaries;
    for (const auto& r : result.records) {
        if (!r.failed) summaries.emplace_back(r.config.strategy, r.summary);
    }
    auto table = open_csv(out_dir + "/summary_by_strategy.csv");
    table << "strategy,queries_mean,queries_std,snippets_mean,snippets_std,clicks_mean,"
             "clicks_std\n";
    if (!summaries.empty()) {
        auto grouped = aggregate_summaries(summaries);
        std::vector<std::string> names;
        for (const auto& [name, _] : grouped) names.push_back(name);
        std::sort(names.begin(), names.end());
        for (const auto& name : names) {
            const auto& s = grouped.at(name);
            table << name << ',' << fmt_double(s.queries.mean) << ','
                  << fmt_double(s.queries.stddev) << ',' << fmt_double(s.snippets.mean) << ','
                  << fmt_double(s.snippets.stddev) << ',' << fmt_double(s.clicks.mean) << ','
                  << fmt_double(s.clicks.stddev) << '\n';
        }
    }

    auto failures = open_csv(out_dir + "/failures.csv");
    failures << "run_id,error\n";
    for (const auto& r : result.records) {
        if (r.failed) {
            std::string msg = r.error;
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            failures << r.run_id << ',' << msg << '\n';
        }
    }
}

void export_keywords_csv(const std::vector<std::pair<std::string, KeywordSet>>& by_topic,
                         const std::string& path) {
    auto out = open_csv(path);
    out << "topic_id,subtopic_id,keyword,tfidf,topic_position\n";
    for (const auto& [topic_id, keywords] : by_topic) {
        std::vector<std::string> subtopic_ids;
        for (const auto& [sid, _] : keywords.per_subtopic) subtopic_ids.push_back(sid);
        std::sort(subtopic_ids.begin(), subtopic_ids.end());
        for (const auto& sid : subtopic_ids) {
            for (const auto& entry : keywords.per_subtopic.at(sid)) {
                out << topic_id << ',' << sid << ',' << entry.keyword << ','
                    << fmt_double(entry.tfidf) << ',' << keywords.positions.at(entry.keyword)
                    << '\n';
            }
        }
    }
}

void export_aggregated_series(const ExperimentResult& result, const std::string& path) {
    std::vector<std::string> names;
    for (const auto& r : result.records) {
        if (r.failed) continue;
        const std::string name = strategy_name(r.config.strategy);
        if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
    }
    std::sort(names.begin(), names.end());

    auto out = open_csv(path);
    out << "strategy,docs_read,kw_found_frac,explored_frac,learned_frac\n";
    for (const auto& name : names) {
        std::vector<WeightedSeries> found, explored, learned;
        for (const auto& r : result.records) {
            if (r.failed || strategy_name(r.config.strategy) != name) continue;
            const double w = static_cast<double>(r.topic_kw_count);
            found.push_back({r.found, w});
            explored.push_back({r.explored, w});
            learned.push_back({r.learned, w});
        }
        const MetricSeries agg_found = aggregate_series(found);
        const MetricSeries agg_explored = aggregate_series(explored);
        const MetricSeries agg_learned = aggregate_series(learned);
        for (std::size_t i = 0; i < agg_found.points.size(); ++i) {
            out << name << ',' << agg_found.points[i].docs_read << ','
                << fmt_double(agg_found.points[i].value) << ','
                << fmt_double(agg_explored.points[i].value) << ','
                << fmt_double(agg_learned.points[i].value) << '\n';
        }
    }
}

}  // namespace sacsm
