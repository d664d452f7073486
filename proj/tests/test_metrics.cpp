#include "doctest.h"
#include "sacsm/metrics.hpp"
#include "test_support.hpp"

using namespace sacsm;
using namespace sacsm::testing;

namespace {

SessionEvent read_event(const std::string& doc_id) {
    SessionEvent event;
    event.kind = EventKind::kReadDoc;
    event.doc_id = doc_id;
    return event;
}

SessionLog log_of_reads(const std::vector<std::string>& doc_ids) {
    SessionLog log;
    SessionEvent start;
    start.kind = EventKind::kSessionStart;
    log.events.push_back(start);
    for (const auto& id : doc_ids) log.events.push_back(read_event(id));
    SessionEvent end;
    end.kind = EventKind::kSessionEnd;
    log.events.push_back(end);
    return log;
}

KeywordSet keywords_of(const std::vector<std::string>& order) {
    KeywordSet set;
    set.topic_order = order;
    for (std::size_t i = 0; i < order.size(); ++i) {
        set.positions[order[i]] = static_cast<int>(i) + 1;
    }
    return set;
}

}  // namespace

TEST_CASE("keyword with five occurrences in the first doc is found at once") {
    Corpus corpus = make_corpus({{"d1", "", repeat("target", 5) + " noise"},
                                 {"d2", "", "noise noise"}});
    const KeywordSet keywords = keywords_of({"target", "other"});
    const MetricSeries series =
        keywords_found_series(log_of_reads({"d1"}), corpus, keywords, 5);
    REQUIRE(series.points.size() == 1);
    CHECK(series.points[0].docs_read == 1);
    CHECK(series.points[0].value == doctest::Approx(0.5));
}

TEST_CASE("four total occurrences never reach the threshold") {
    Corpus corpus = make_corpus({{"d1", "", repeat("target", 2)},
                                 {"d2", "", repeat("target", 2)}});
    const KeywordSet keywords = keywords_of({"target"});
    const MetricSeries series =
        keywords_found_series(log_of_reads({"d1", "d2"}), corpus, keywords, 5);
    REQUIRE(series.points.size() == 2);
    CHECK(series.points[0].value == 0.0);
    CHECK(series.points[1].value == 0.0);
}

TEST_CASE("occurrences accumulate across documents") {
    Corpus corpus = make_corpus({{"d1", "", repeat("target", 2)},
                                 {"d2", "", repeat("target", 3)}});
    const KeywordSet keywords = keywords_of({"target"});
    const MetricSeries series =
        keywords_found_series(log_of_reads({"d1", "d2"}), corpus, keywords, 5);
    CHECK(series.points[0].value == 0.0);
    CHECK(series.points[1].value == doctest::Approx(1.0));
}

TEST_CASE("learned quota reproduces the positional anchor") {
    CHECK(learned_prior_quota(19, 0.3) == 6);  // ceil(0.3 * 18)
    CHECK(learned_prior_quota(1, 0.3) == 0);
    CHECK(learned_prior_quota(2, 0.3) == 1);  // any positive fraction needs one prior
    CHECK(learned_prior_quota(10, 0.0) == 0);
}

TEST_CASE("keyword at position 1 is learned as soon as it is found") {
    Corpus corpus = make_corpus({{"d1", "", repeat("first", 5)}});
    const KeywordSet keywords = keywords_of({"first", "second", "third"});
    const MetricSeries series =
        learned_series(log_of_reads({"d1"}), corpus, keywords, 5, 0.3);
    CHECK(series.points[0].value == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("reverse-order discovery delays learning behind finding") {
    // kw order a b c d; documents deliver d, c, b, a
    Corpus corpus = make_corpus({{"d1", "", repeat("dd", 5)},
                                 {"d2", "", repeat("cc", 5)},
                                 {"d3", "", repeat("bb", 5)},
                                 {"d4", "", repeat("aa", 5)}});
    const KeywordSet keywords = keywords_of({"aa", "bb", "cc", "dd"});
    const SessionLog log = log_of_reads({"d1", "d2", "d3", "d4"});
    const MetricSeries found = keywords_found_series(log, corpus, keywords, 5);
    const MetricSeries learned = learned_series(log, corpus, keywords, 5, 0.3);

    // hand trace: quotas are dd ceil(0.3*3)=1, cc ceil(0.3*2)=1, bb 1, aa 0
    CHECK(found.points[0].value == doctest::Approx(0.25));
    CHECK(learned.points[0].value == 0.0);                    // dd found, no prior found
    CHECK(learned.points[1].value == doctest::Approx(0.25));  // cc unlocks dd
    CHECK(learned.points[2].value == doctest::Approx(0.5));   // bb unlocks cc
    CHECK(learned.points[3].value == doctest::Approx(1.0));   // aa unlocks the rest
    for (std::size_t i = 0; i < learned.points.size(); ++i) {
        CHECK(learned.points[i].value <= found.points[i].value);
    }
}

TEST_CASE("learned equals found when the prior fraction is zero") {
    Corpus corpus = make_corpus({{"d1", "", repeat("cc", 5)},
                                 {"d2", "", repeat("aa", 5) + " " + repeat("bb", 3)}});
    const KeywordSet keywords = keywords_of({"aa", "bb", "cc"});
    const SessionLog log = log_of_reads({"d1", "d2"});
    const MetricSeries found = keywords_found_series(log, corpus, keywords, 5);
    const MetricSeries learned = learned_series(log, corpus, keywords, 5, 0.0);
    REQUIRE(found.points.size() == learned.points.size());
    for (std::size_t i = 0; i < found.points.size(); ++i) {
        CHECK(found.points[i].value == learned.points[i].value);
    }
}

TEST_CASE("exploration series replays tracker growth") {
    Corpus corpus = make_corpus({{"d1", "", "alpha beta gamma"},
                                 {"d2", "", "delta epsilon zeta"},
                                 {"d3", "", "alpha beta gamma delta"},
                                 {"d4", "", "iota kappa"}});
    Topic topic;
    topic.topic_id = "t";
    topic.description = "desc";
    topic.subtopics.push_back({"s0", "s0", "alpha beta gamma", 0});
    topic.subtopics.push_back({"s1", "s1", "delta epsilon zeta", 1});
    TopicRuntime rt = TopicRuntime::build(topic, corpus);

    const SessionLog log = log_of_reads({"d1", "d2", "d3", "d4"});
    const double xi = 1.0;
    const MetricSeries series = exploration_series(log, rt, corpus, xi);

    std::vector<double> trackers(2, 0.0);
    std::vector<std::string> reads = {"d1", "d2", "d3", "d4"};
    for (std::size_t n = 0; n < reads.size(); ++n) {
        for (std::size_t s = 0; s < 2; ++s) {
            trackers[s] +=
                doc_subtopic_similarity(corpus.doc(reads[n]), rt.subtopic_vectors[s], corpus);
        }
        int explored = 0;
        for (double t : trackers) {
            if (t >= xi) ++explored;
        }
        CHECK(series.points[n].value == doctest::Approx(explored / 2.0));
    }
    CHECK(series.points.front().value >= 0.0);
}

TEST_CASE("corrupted tracker snapshots are detected") {
    Corpus corpus = make_corpus({{"d1", "", "alpha beta"}});
    Topic topic;
    topic.topic_id = "t";
    topic.description = "desc";
    topic.subtopics.push_back({"s0", "s0", "alpha beta", 0});
    TopicRuntime rt = TopicRuntime::build(topic, corpus);

    SessionLog log = log_of_reads({"d1"});
    log.events[1].trackers = {12.34};  // bogus snapshot
    CHECK_THROWS_WITH_AS(exploration_series(log, rt, corpus, 1.0),
                         doctest::Contains("mismatch"), std::runtime_error);
}

TEST_CASE("session summary counts events") {
    SessionLog log;
    auto add = [&](EventKind kind) {
        SessionEvent event;
        event.kind = kind;
        log.events.push_back(event);
    };
    add(EventKind::kSessionStart);
    for (int i = 0; i < 2; ++i) add(EventKind::kIssueQuery);
    for (int i = 0; i < 7; ++i) add(EventKind::kExamineSnippet);
    for (int i = 0; i < 3; ++i) add(EventKind::kClick);
    add(EventKind::kSessionEnd);
    const SessionSummary summary = session_summary(log);
    CHECK(summary.queries_issued == 2);
    CHECK(summary.snippets_examined == 7);
    CHECK(summary.documents_clicked == 3);
}

TEST_CASE("empty session summarizes to zeros") {
    SessionLog log;
    SessionEvent start;
    start.kind = EventKind::kSessionStart;
    SessionEvent end;
    end.kind = EventKind::kSessionEnd;
    log.events = {start, end};
    const SessionSummary summary = session_summary(log);
    CHECK(summary.queries_issued == 0);
    CHECK(summary.snippets_examined == 0);
    CHECK(summary.documents_clicked == 0);
}

TEST_CASE("single-record aggregate has zero deviation") {
    SessionSummary s;
    s.queries_issued = 4;
    s.snippets_examined = 12;
    s.documents_clicked = 2;
    const auto grouped = aggregate_summaries({{Strategy::kGreedy, s}});
    const auto& entry = grouped.at("greedy");
    CHECK(entry.queries.mean == doctest::Approx(4.0));
    CHECK(entry.queries.stddev == doctest::Approx(0.0));
}

TEST_CASE("aggregate refuses empty input") {
    CHECK_THROWS_AS(aggregate_summaries({}), std::runtime_error);
    CHECK_THROWS_AS(aggregate_series({}), std::runtime_error);
}

TEST_CASE("summary aggregation equals an independent recomputation") {
    std::vector<std::pair<Strategy, SessionSummary>> records;
    std::vector<double> queries = {3, 5, 9, 1};
    for (double q : queries) {
        SessionSummary s;
        s.queries_issued = static_cast<int>(q);
        records.emplace_back(Strategy::kReverse, s);
    }
    const auto grouped = aggregate_summaries(records);
    const double mean = (3 + 5 + 9 + 1) / 4.0;
    double var = 0;
    for (double q : queries) var += (q - mean) * (q - mean);
    var /= 4.0;
    CHECK(grouped.at("reverse").queries.mean == doctest::Approx(mean));
    CHECK(grouped.at("reverse").queries.stddev == doctest::Approx(std::sqrt(var)));
}

TEST_CASE("weighted series mean follows keyword counts") {
    MetricSeries a, b;
    for (int x = 1; x <= 5; ++x) a.points.push_back({x, 0.2});
    for (int x = 1; x <= 5; ++x) b.points.push_back({x, 0.6});
    const MetricSeries agg = aggregate_series({{a, 10.0}, {b, 30.0}});
    REQUIRE(agg.points.size() == 5);
    CHECK(agg.points[4].value == doctest::Approx(0.5));
}

TEST_CASE("short series carry their final value forward") {
    MetricSeries a, b;
    a.points = {{1, 0.4}};
    b.points = {{1, 0.0}, {2, 0.8}};
    const MetricSeries agg = aggregate_series({{a, 1.0}, {b, 1.0}});
    REQUIRE(agg.points.size() == 2);
    CHECK(agg.points[1].value == doctest::Approx((0.4 + 0.8) / 2.0));
}

TEST_CASE("mean/std rendering convention") {
    CHECK(format_mean_std({13.05, 14.93}) == "13.05(±14.93)");
}
