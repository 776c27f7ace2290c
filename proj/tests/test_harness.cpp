#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pathlab/harness.hpp"

using namespace pathlab;

TEST_CASE("report json round-trips and counts verdicts") {
    SuiteReport r;
    r.suite = "demo";
    r.seed = 9;
    r.threads = 2;
    r.version = kVersion;
    r.add({"a", "cfg-a", "pass", 1.0, "fine", 12.5});
    r.add({"b", "cfg-b", "fail", std::nullopt, "broken", 2.0});
    r.add({"c", "cfg-c", "info", 0.5, "", 0.1});
    CHECK(r.passes() == 1);
    CHECK(r.failures() == 1);
    CHECK_FALSE(r.all_passed());

    SuiteReport back = import_report_json(export_report_json(r));
    CHECK(back.suite == r.suite);
    CHECK(back.seed == r.seed);
    CHECK(back.threads == r.threads);
    REQUIRE(back.records.size() == 3);
    CHECK(back.records[0].metric == 1.0);
    CHECK_FALSE(back.records[1].metric.has_value());
    CHECK(back.records[1].verdict == "fail");
    CHECK(back.canonical() == r.canonical());
}

TEST_CASE("canonical content ignores wall times") {
    SuiteReport a, b;
    a.suite = b.suite = "t";
    a.add({"x", "", "pass", 3.25, "", 10.0});
    b.add({"x", "", "pass", 3.25, "", 999.0});
    CHECK(a.canonical() == b.canonical());
    b.records[0].detail = "changed";
    CHECK(a.canonical() != b.canonical());
}

TEST_CASE("csv export is rfc-4180 with quoting") {
    SuiteReport r;
    r.suite = "csv";
    r.add({"id,1", "k=\"2\"", "pass", std::nullopt, "line\nbreak", 1.0});
    std::string csv = export_report_csv(r);
    CHECK(csv.find("\"id,1\"") != std::string::npos);
    CHECK(csv.find("\"k=\"\"2\"\"\"") != std::string::npos);
    CHECK(csv.find("\r\n") != std::string::npos);
}

TEST_CASE("markdown export renders a table") {
    SuiteReport r;
    r.suite = "md";
    r.add({"case", "cfg", "pass", 2.0, "ok", 1.0});
    std::string md = export_report_markdown(r);
    CHECK(md.find("| case") != std::string::npos);
    CHECK(md.find("---") != std::string::npos);
    CHECK(export_report(r, "markdown") == md);
    CHECK_THROWS_AS(export_report(r, "yaml"), InvalidParams);
}

TEST_CASE("expressiveness suite passes end to end") {
    HarnessOptions opt;
    opt.seed = 0;
    SuiteReport r = run_expressiveness_suite(opt);
    for (const auto& c : r.records) {
        INFO(c.id << ": " << c.detail);
        CHECK(c.verdict != "fail");
    }
    CHECK(r.all_passed());
    CHECK(r.records.size() >= 10);
}

TEST_CASE("expressiveness suite is deterministic across thread counts") {
    HarnessOptions a, b;
    a.threads = 1;
    b.threads = 4;
    std::string ca = run_expressiveness_suite(a).canonical();
    std::string cb = run_expressiveness_suite(b).canonical();
    // thread count is part of the stamp; compare records only
    SuiteReport ra = run_expressiveness_suite(a);
    SuiteReport rb = run_expressiveness_suite(b);
    rb.threads = ra.threads;
    CHECK(ra.canonical() == rb.canonical());
    CHECK(ca == run_expressiveness_suite(a).canonical());
    (void)cb;
}

TEST_CASE("sr benchmark separates the builtin pair with distances") {
    HarnessOptions opt;
    SuiteReport r = run_sr_benchmark({}, opt);
    CHECK(r.all_passed());
    bool saw_rate = false;
    for (const auto& c : r.records)
        if (c.id == "failure-rate") {
            saw_rate = true;
            REQUIRE(c.metric.has_value());
            CHECK(*c.metric == 0.0);
        }
    CHECK(saw_rate);
}

TEST_CASE("timing bench reports per-kind path counts") {
    Dataset ds;
    ds.name = "cycles";
    for (int n : {6, 8}) ds.graphs.push_back(make_cycle(n));
    HarnessOptions opt;
    SuiteReport r = timing_bench(ds, {PathKind::SP, PathKind::AP}, {2, 3}, opt);
    CHECK(r.records.size() == 4);
    for (const auto& c : r.records) {
        REQUIRE(c.metric.has_value());
        CHECK(*c.metric > 0.0);
    }
}

TEST_CASE("csl model config matches the benchmark setup") {
    nn::ModelConfig cfg = csl_model_config(PathKind::SPPlus, 11);
    CHECK(cfg.K == 11);
    CHECK(cfg.hidden == 64);
    CHECK(cfg.out_dim == 10);
    CHECK(cfg.kind == PathKind::SPPlus);
    CHECK(cfg.dropout == 0.0);
}
