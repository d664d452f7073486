#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "sacsm/harness.hpp"
#include "sacsm/plot.hpp"
#include "test_support.hpp"

using namespace sacsm;
using namespace sacsm::testing;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct Fixture {
    Corpus corpus;
    std::vector<TopicRuntime> topics;

    static Fixture make() {
        std::vector<RawDoc> docs;
        const std::vector<std::string> themes = {"stellar", "oceanic"};
        for (std::size_t s = 0; s < themes.size(); ++s) {
            for (int i = 0; i < 5; ++i) {
                RawDoc doc;
                doc.doc_id = "d" + std::to_string(s) + std::to_string(i);
                doc.title = themes[s] + " survey";
                doc.body = repeat(themes[s], 3) + " item" + std::to_string(i) +
                           " shared corpus words";
                docs.push_back(doc);
            }
        }
        Fixture f{make_corpus(docs), {}};
        Topic topic;
        topic.topic_id = "t1";
        topic.title = "Mixed";
        topic.description = "shared corpus words survey";
        for (std::size_t s = 0; s < themes.size(); ++s) {
            Subtopic sub;
            sub.subtopic_id = "s" + std::to_string(s);
            sub.title = themes[s] + " survey";
            sub.reference_text = repeat(themes[s], 4) + " shared corpus words";
            sub.position = static_cast<int>(s);
            topic.subtopics.push_back(sub);
        }
        f.topics.push_back(TopicRuntime::build(topic, f.corpus));
        return f;
    }
};

ExperimentGrid small_grid() {
    ExperimentGrid grid;
    grid.strategies = {Strategy::kGreedy, Strategy::kRandom};
    grid.lambdas = {0.1};
    grid.xis = {2.0};
    grid.taus = {5.0};
    grid.repetitions = 2;
    grid.master_seed = 42;
    return grid;
}

std::string temp_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("sacsm_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir.string();
}

}  // namespace

TEST_CASE("paper grid enumerates 144 unique agents") {
    const auto agents = enumerate_agents(ExperimentGrid::paper_grid());
    CHECK(agents.size() == 144);
    std::set<std::tuple<std::string, double, double, double>> seen;
    for (const auto& config : agents) {
        seen.insert({strategy_name(config.strategy), config.lambda, config.xi, config.tau});
    }
    CHECK(seen.size() == 144);  // no two configs equal
    // fixed nesting order: strategy, lambda, xi, tau
    CHECK(agents[0].strategy == Strategy::kGreedy);
    CHECK(agents[0].tau == 0.0);
    CHECK(agents[1].tau == 1.0);
    CHECK(agents[36].strategy == Strategy::kGreedySkip);
}

TEST_CASE("degenerate 1x1x1x1 grid yields one agent") {
    ExperimentGrid grid;
    grid.strategies = {Strategy::kGreedy};
    grid.lambdas = {0.5};
    grid.xis = {1.0};
    grid.taus = {0.0};
    CHECK(enumerate_agents(grid).size() == 1);
}

TEST_CASE("empty dimension errors name the dimension") {
    ExperimentGrid grid = small_grid();
    grid.lambdas.clear();
    CHECK_THROWS_WITH_AS(enumerate_agents(grid), doctest::Contains("lambdas"),
                         std::runtime_error);
}

TEST_CASE("seed derivation is deterministic and spreads across coordinates") {
    CHECK(derive_seed(1, 2, 3, 4) == derive_seed(1, 2, 3, 4));
    std::set<std::uint64_t> seeds;
    for (int a = 0; a < 4; ++a) {
        for (int t = 0; t < 4; ++t) {
            for (int r = 0; r < 4; ++r) {
                seeds.insert(derive_seed(7, a, t, r));
            }
        }
    }
    CHECK(seeds.size() == 64);
}

TEST_CASE("run_experiment produces sorted complete records") {
    Fixture f = Fixture::make();
    const auto result = run_experiment(small_grid(), f.topics, f.corpus, 1);
    REQUIRE(result.records.size() == 2 * 1 * 2);  // agents x topics x reps
    for (std::size_t i = 1; i < result.records.size(); ++i) {
        const auto& a = result.records[i - 1];
        const auto& b = result.records[i];
        CHECK(std::tuple(a.agent_index, a.topic_index, a.rep) <
              std::tuple(b.agent_index, b.topic_index, b.rep));
    }
    for (const auto& record : result.records) {
        CHECK_FALSE(record.failed);
        CHECK(record.run_id == make_run_id(record.agent_index, record.topic_id, record.rep));
    }
}

TEST_CASE("deterministic strategies repeat identically across reps") {
    Fixture f = Fixture::make();
    ExperimentGrid grid = small_grid();
    grid.strategies = {Strategy::kGreedy};
    const auto result = run_experiment(grid, f.topics, f.corpus, 1);
    REQUIRE(result.records.size() == 2);
    const auto& a = result.records[0];
    const auto& b = result.records[1];
    CHECK(a.summary.queries_issued == b.summary.queries_issued);
    CHECK(a.summary.snippets_examined == b.summary.snippets_examined);
    CHECK(a.summary.documents_clicked == b.summary.documents_clicked);
    REQUIRE(a.found.points.size() == b.found.points.size());
    for (std::size_t i = 0; i < a.found.points.size(); ++i) {
        CHECK(a.found.points[i].value == b.found.points[i].value);
    }
}

TEST_CASE("parallelism does not change the exports") {
    Fixture f = Fixture::make();
    const std::string dir1 = temp_dir("p1");
    const std::string dir8 = temp_dir("p8");
    export_results(run_experiment(small_grid(), f.topics, f.corpus, 1), dir1);
    export_results(run_experiment(small_grid(), f.topics, f.corpus, 8), dir8);
    CHECK(slurp(dir1 + "/runs.csv") == slurp(dir8 + "/runs.csv"));
    CHECK(slurp(dir1 + "/series.csv") == slurp(dir8 + "/series.csv"));
    CHECK(slurp(dir1 + "/summary_by_strategy.csv") == slurp(dir8 + "/summary_by_strategy.csv"));
}

TEST_CASE("re-export of the same records is byte-identical") {
    Fixture f = Fixture::make();
    const auto result = run_experiment(small_grid(), f.topics, f.corpus, 2);
    const std::string dir1 = temp_dir("re1");
    const std::string dir2 = temp_dir("re2");
    export_results(result, dir1);
    export_results(result, dir2);
    CHECK(slurp(dir1 + "/runs.csv") == slurp(dir2 + "/runs.csv"));
    CHECK(slurp(dir1 + "/series.csv") == slurp(dir2 + "/series.csv"));
}

TEST_CASE("zero records export headers only") {
    const std::string dir = temp_dir("empty");
    export_results(ExperimentResult{}, dir);
    CHECK(slurp(dir + "/runs.csv") ==
          "run_id,agent_index,strategy,lambda,xi,tau,topic_id,rep,seed,"
          "queries_issued,snippets_examined,documents_clicked,docs_read,"
          "topic_kw_count,log_path\n");
    CHECK(slurp(dir + "/series.csv") ==
          "run_id,agent_id,topic_id,rep,docs_read,kw_found_frac,explored_frac,"
          "learned_frac\n");
}

TEST_CASE("grid json round trip") {
    const std::string dir = temp_dir("grid");
    {
        std::ofstream out(dir + "/grid.json");
        out << R"({"lambdas":[0.1,0.4],"xis":[2.0],"taus":[0.0,5.0],)"
            << R"("strategies":["greedy","reverse"],"repetitions":3,"master_seed":99})";
    }
    const ExperimentGrid grid = ExperimentGrid::load(dir + "/grid.json");
    CHECK(grid.lambdas == std::vector<double>{0.1, 0.4});
    CHECK(grid.repetitions == 3);
    CHECK(grid.master_seed == 99);
    CHECK(enumerate_agents(grid).size() == 2 * 2 * 1 * 2);
}

TEST_CASE("plot renders one polyline and legend entry per strategy") {
    std::vector<LabeledSeries> series;
    for (const std::string name : {"greedy", "greedy_skip", "reverse", "random"}) {
        MetricSeries s;
        for (int x = 1; x <= 5; ++x) s.points.push_back({x, 0.1 * x});
        series.push_back({name, s});
    }
    const std::string svg = render_plot_svg(series, "Keywords found");
    std::size_t polylines = 0, pos = 0;
    while ((pos = svg.find("<polyline", pos)) != std::string::npos) {
        ++polylines;
        pos += 9;
    }
    CHECK(polylines == 4);
    for (const std::string name : {"greedy", "greedy_skip", "reverse", "random"}) {
        CHECK(svg.find(">" + name + "<") != std::string::npos);
    }
}

TEST_CASE("constant series renders a horizontal mid-height polyline") {
    MetricSeries s;
    for (int x = 1; x <= 4; ++x) s.points.push_back({x, 0.5});
    const std::string svg = render_plot_svg({{"flat", s}}, "flat");
    const auto start = svg.find("points=\"");
    REQUIRE(start != std::string::npos);
    const auto end = svg.find('"', start + 8);
    std::istringstream pts(svg.substr(start + 8, end - start - 8));
    std::string pair;
    std::set<std::string> ys;
    while (pts >> pair) {
        ys.insert(pair.substr(pair.find(',') + 1));
    }
    CHECK(ys.size() == 1);  // same y everywhere
}

TEST_CASE("out-of-range series values are rejected") {
    MetricSeries s;
    s.points.push_back({1, 1.5});
    CHECK_THROWS_AS(render_plot_svg({{"bad", s}}, "bad"), std::runtime_error);
    CHECK_THROWS_AS(render_plot_svg({}, "none"), std::runtime_error);
}
