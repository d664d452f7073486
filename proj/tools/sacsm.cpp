#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sacsm/corpus.hpp"
#include "sacsm/harness.hpp"
#include "sacsm/metrics.hpp"
#include "sacsm/plot.hpp"
#include "sacsm/topic.hpp"

namespace {

using namespace sacsm;

void write_index_dir(const Corpus& corpus, const std::string& dir) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir + "/corpus.jsonl", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + dir + "/corpus.jsonl");
    for (const auto& [doc_id, doc] : corpus.documents) {
        nlohmann::json record;
        record["doc_id"] = doc.doc_id;
        if (!doc.url.empty()) record["url"] = doc.url;
        record["title"] = doc.title;
        record["body"] = doc.body;
        out << record.dump() << "\n";
    }
    nlohmann::json stats;
    stats["doc_count"] = corpus.doc_count;
    stats["avg_doc_len"] = corpus.avg_doc_len;
    stats["total_tokens"] = corpus.total_tokens;
    stats["vocabulary_size"] = corpus.doc_freq.size();
    std::ofstream stats_out(dir + "/stats.json", std::ios::binary);
    stats_out << stats.dump(2) << "\n";
}

Corpus load_index_dir(const std::string& dir) {
    return ingest_corpus_file(dir + "/corpus.jsonl", {});
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

// report: recompute the summary table and per-strategy aggregated series
// from runs.csv + series.csv in a finished run directory.
void run_report(const std::string& runs_dir, const std::string& out_dir) {
    std::ifstream runs_in(runs_dir + "/runs.csv");
    if (!runs_in) throw std::runtime_error("cannot open " + runs_dir + "/runs.csv");
    std::string line;
    std::getline(runs_in, line);  // header

    struct RunMeta {
        std::string strategy;
        double kw_count = 1.0;
        SessionSummary summary;
    };
    std::map<std::string, RunMeta> runs;
    std::vector<std::pair<Strategy, SessionSummary>> summaries;
    while (std::getline(runs_in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        RunMeta meta;
        meta.strategy = f.at(2);
        meta.summary.queries_issued = std::stoi(f.at(9));
        meta.summary.snippets_examined = std::stoi(f.at(10));
        meta.summary.documents_clicked = std::stoi(f.at(11));
        meta.kw_count = std::stod(f.at(13));
        runs.emplace(f.at(0), meta);
        summaries.emplace_back(strategy_from_name(meta.strategy), meta.summary);
    }

    std::ifstream series_in(runs_dir + "/series.csv");
    if (!series_in) throw std::runtime_error("cannot open " + runs_dir + "/series.csv");
    std::getline(series_in, line);  // header
    struct RunSeries {
        MetricSeries found, explored, learned;
    };
    std::map<std::string, RunSeries> per_run;
    while (std::getline(series_in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        auto& rs = per_run[f.at(0)];
        const int x = std::stoi(f.at(4));
        rs.found.points.push_back({x, std::stod(f.at(5))});
        rs.explored.points.push_back({x, std::stod(f.at(6))});
        rs.learned.points.push_back({x, std::stod(f.at(7))});
    }

    std::filesystem::create_directories(out_dir);
    {
        std::ofstream table(out_dir + "/summary_by_strategy.csv", std::ios::binary);
        table << "strategy,queries_mean,queries_std,snippets_mean,snippets_std,"
                 "clicks_mean,clicks_std\n";
        if (!summaries.empty()) {
            auto grouped = aggregate_summaries(summaries);
            std::vector<std::string> names;
            for (const auto& [name, _] : grouped) names.push_back(name);
            std::sort(names.begin(), names.end());
            char buf[256];
            for (const auto& name : names) {
                const auto& s = grouped.at(name);
                std::snprintf(buf, sizeof(buf), "%s,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                              name.c_str(), s.queries.mean, s.queries.stddev,
                              s.snippets.mean, s.snippets.stddev, s.clicks.mean,
                              s.clicks.stddev);
                table << buf;
            }
        }
    }
    {
        std::vector<std::string> names;
        for (const auto& [run_id, meta] : runs) {
            if (std::find(names.begin(), names.end(), meta.strategy) == names.end()) {
                names.push_back(meta.strategy);
            }
        }
        std::sort(names.begin(), names.end());
        std::ofstream out(out_dir + "/aggregated_series.csv", std::ios::binary);
        out << "strategy,docs_read,kw_found_frac,explored_frac,learned_frac\n";
        char buf[256];
        for (const auto& name : names) {
            std::vector<WeightedSeries> found, explored, learned;
            for (const auto& [run_id, meta] : runs) {
                if (meta.strategy != name) continue;
                auto it = per_run.find(run_id);
                const RunSeries empty;
                const RunSeries& rs = it == per_run.end() ? empty : it->second;
                found.push_back({rs.found, meta.kw_count});
                explored.push_back({rs.explored, meta.kw_count});
                learned.push_back({rs.learned, meta.kw_count});
            }
            if (found.empty()) continue;
            const MetricSeries agg_f = aggregate_series(found);
            const MetricSeries agg_e = aggregate_series(explored);
            const MetricSeries agg_l = aggregate_series(learned);
            for (std::size_t i = 0; i < agg_f.points.size(); ++i) {
                std::snprintf(buf, sizeof(buf), "%s,%d,%.10g,%.10g,%.10g\n", name.c_str(),
                              agg_f.points[i].docs_read, agg_f.points[i].value,
                              agg_e.points[i].value, agg_l.points[i].value);
                out << buf;
            }
        }
    }
}

void run_plot(const std::string& series_path, const std::string& measure,
              const std::string& out_path) {
    int column;
    if (measure == "found") {
        column = 2;
    } else if (measure == "explored") {
        column = 3;
    } else if (measure == "learned") {
        column = 4;
    } else {
        throw std::runtime_error("measure must be one of: found, explored, learned");
    }

    std::ifstream in(series_path);
    if (!in) throw std::runtime_error("cannot open series file: " + series_path);
    std::string line;
    std::getline(in, line);  // header
    std::map<std::string, MetricSeries> by_strategy;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        by_strategy[f.at(0)].points.push_back(
            {std::stoi(f.at(1)), std::stod(f.at(static_cast<std::size_t>(column)))});
    }

    std::vector<LabeledSeries> series;
    for (const auto& [name, s] : by_strategy) series.push_back({name, s});
    const std::string titles[] = {"Keywords found", "Subtopics fully explored",
                                  "Keywords learned"};
    emit_plot(series, titles[column - 2], out_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SACSM search-session simulation framework"};
    app.require_subcommand(1);

    // index
    std::string corpus_path, blocklist_path, index_dir;
    auto* index_cmd = app.add_subcommand("index", "Ingest a JSONL corpus into an index dir");
    index_cmd->add_option("corpus", corpus_path, "Corpus JSONL file")->required();
    index_cmd->add_option("--blocklist", blocklist_path, "Host blocklist file");
    index_cmd->add_option("-o,--out", index_dir, "Output index directory")->required();

    // keywords
    std::string kw_index, kw_topics, kw_out;
    auto* kw_cmd = app.add_subcommand("keywords", "Extract per-subtopic TF-IDF keywords");
    kw_cmd->add_option("--index", kw_index, "Index directory")->required();
    kw_cmd->add_option("--topics", kw_topics, "Topics JSON file")->required();
    kw_cmd->add_option("-o,--out", kw_out, "Output CSV path")->required();

    // run
    std::string run_index, run_topics, run_grid, run_out;
    int run_reps = -1, run_parallelism = 1;
    std::uint64_t run_seed = 0;
    bool seed_given = false;
    auto* run_cmd = app.add_subcommand("run", "Run the agent grid experiment");
    run_cmd->add_option("--index", run_index, "Index directory")->required();
    run_cmd->add_option("--topics", run_topics, "Topics JSON file")->required();
    run_cmd->add_option("--grid", run_grid, "Grid JSON file")->required();
    run_cmd->add_option("--reps", run_reps, "Repetitions per (agent, topic)");
    run_cmd->add_option("--seed", run_seed, "Master seed")->each([&](const std::string&) {
        seed_given = true;
    });
    run_cmd->add_option("--out", run_out, "Output directory")->required();
    run_cmd->add_option("--parallelism", run_parallelism, "Worker threads");

    // report
    std::string report_runs, report_out;
    auto* report_cmd = app.add_subcommand("report", "Aggregate a finished run directory");
    report_cmd->add_option("--runs", report_runs, "Run output directory")->required();
    report_cmd->add_option("-o,--out", report_out, "Output CSV directory")->required();

    // plot
    std::string plot_series, plot_measure, plot_out;
    auto* plot_cmd = app.add_subcommand("plot", "Render an SVG chart for one measure");
    plot_cmd->add_option("--series", plot_series, "aggregated_series.csv path")->required();
    plot_cmd->add_option("--measure", plot_measure, "found | explored | learned")->required();
    plot_cmd->add_option("-o,--out", plot_out, "Output SVG path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (index_cmd->parsed()) {
            std::vector<std::string> blocklist;
            if (!blocklist_path.empty()) blocklist = load_blocklist(blocklist_path);
            Corpus corpus = ingest_corpus_file(corpus_path, blocklist);
            write_index_dir(corpus, index_dir);
            std::cout << "indexed " << corpus.doc_count << " documents ("
                      << corpus.doc_freq.size() << " terms)\n";
        } else if (kw_cmd->parsed()) {
            Corpus corpus = load_index_dir(kw_index);
            std::vector<std::pair<std::string, KeywordSet>> by_topic;
            for (const auto& topic : load_topics(kw_topics)) {
                by_topic.emplace_back(topic.topic_id, extract_keywords(topic, corpus));
            }
            export_keywords_csv(by_topic, kw_out);
            std::cout << "wrote keywords for " << by_topic.size() << " topics\n";
        } else if (run_cmd->parsed()) {
            Corpus corpus = load_index_dir(run_index);
            ExperimentGrid grid = ExperimentGrid::load(run_grid);
            if (run_reps > 0) grid.repetitions = run_reps;
            if (seed_given) grid.master_seed = run_seed;
            std::vector<TopicRuntime> topics;
            for (const auto& topic : load_topics(run_topics)) {
                topics.push_back(TopicRuntime::build(topic, corpus));
            }
            ExperimentResult result =
                run_experiment(grid, topics, corpus, run_parallelism, run_out);
            export_results(result, run_out);
            export_aggregated_series(result, run_out + "/aggregated_series.csv");
            int failures = 0;
            for (const auto& r : result.records) {
                if (r.failed) ++failures;
            }
            std::cout << result.records.size() << " runs (" << failures << " failures), "
                      << "outputs in " << run_out << "\n";
        } else if (report_cmd->parsed()) {
            run_report(report_runs, report_out);
            std::cout << "wrote report to " << report_out << "\n";
        } else if (plot_cmd->parsed()) {
            run_plot(plot_series, plot_measure, plot_out);
            std::cout << "wrote " << plot_out << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
