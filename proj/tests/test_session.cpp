#include <random>

#include "doctest.h"
#include "twistlog/session.hpp"

using namespace twistlog;

TEST_SUITE_BEGIN("cli");

TEST_CASE("session parsing") {
    Json j = Json::parse(R"({"blocks": [{"kind": "odd", "ell": 2, "alpha0": "0", "a": "1/2"}], "cutoff": "3/2", "zero_cap": 1})");
    ModuleSpec s = parse_session(j);
    REQUIRE(s.blocks.size() == 1);
    CHECK(s.blocks[0].kind == BlockKind::Odd);
    CHECK(s.params[0].a == Rational(1, 2));
    CHECK(s.cutoff == Rational(3, 2));
    CHECK(s.zero_cap == 1);
    CHECK(parse_session(session_to_json(s)).cutoff == s.cutoff);
    CHECK(session_to_json(parse_session(session_to_json(s))) == session_to_json(s));

    Json p = Json::parse(R"({"blocks": [{"kind": "even", "ell": 1, "alpha0": "0"}], "params": [{"a1": "2"}], "cutoff": 1})");
    CHECK(parse_session(p).params[0].a1 == Rational(2));
}

TEST_CASE("session errors") {
    auto bad = [](const char* text) { return Json::parse(text); };
    CHECK_THROWS_AS(parse_session(bad(R"({"blocks": [{"kind": "even", "ell": 1, "alpha0": "1/0"}], "cutoff": "1"})")), SpecError);
    CHECK_THROWS_AS(parse_session(bad(R"({"blocks": [{"kind": "even", "ell": 1, "alpha0": -0.5}], "cutoff": "1"})")), SpecError);
    CHECK_THROWS_AS(parse_session(bad(R"({"blocks": [{"kind": "weird", "ell": 1, "alpha0": "0"}], "cutoff": "1"})")), SpecError);
    CHECK_THROWS_AS(parse_session(bad(R"({"blocks": [], "cutoff": "1"})")), SpecError);
    CHECK_THROWS_AS(parse_session(bad(R"({"blocks": [{"kind": "even", "ell": 1, "alpha0": "0"}]})")), SpecError);
    CHECK_THROWS_AS(parse_session(bad(R"({"blocks": [{"kind": "odd", "ell": 1, "alpha0": "-1/3"}], "cutoff": "1"})")), SpecError);
    CHECK_THROWS_AS(parse_session(bad(R"({"blocks": [{"kind": "even", "ell": 1, "alpha0": "0"}], "params": [], "cutoff": "1"})")), SpecError);
}

TEST_CASE("report exit codes") {
    Report r;
    CHECK(r.exit_code() == 0);
    r.add({Outcome::Inconclusive, {}, {}, 0});
    CHECK(r.exit_code() == 3);
    r.add({Outcome::Pass, {}, {}, 1});
    CHECK(r.exit_code() == 0);
    r.add({Outcome::Fail, {}, {}, 2});
    CHECK(r.exit_code() == 1);
    CHECK(r.checked == 3);
}

TEST_CASE("merged failures do not depend on how work was split") {
    std::mt19937 rng(7);
    const int n = 500;
    std::vector<CheckRecord> recs;
    for (int i = 0; i < n; ++i) {
        Outcome o = rng() % 3 == 0 ? Outcome::Fail : Outcome::Pass;
        recs.push_back({o, Json{{"i", i}}, {}, i});
    }
    Report whole;
    for (const auto& r : recs) whole.add(r);
    for (int trial = 0; trial < 20; ++trial) {
        int parts = 1 + static_cast<int>(rng() % 6);
        std::vector<Report> split(static_cast<std::size_t>(parts));
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
        std::shuffle(order.begin(), order.end(), rng);
        for (int i : order) split[rng() % static_cast<unsigned>(parts)].add(recs[static_cast<std::size_t>(i)]);
        Report merged;
        for (const auto& p : split) merged.merge(p);
        CHECK(merged.failed == whole.failed);
        CHECK(merged.checked == n);
        CHECK(merged.to_json(false) == whole.to_json(false));
    }
    CHECK(whole.failures.size() == Report::kMaxFailures);
    CHECK(whole.to_json(false)["failures_truncated"] == true);
}

TEST_CASE("parallel sweeps give the same report") {
    ModuleSpec s = parse_session(Json::parse(R"({"blocks": [{"kind": "even", "ell": 2, "alpha0": "-1/3"}], "cutoff": "2"})"));
    SweepOptions one, four;
    four.jobs = 4;
    for (const char* suite : {"heisenberg", "borcherds", "locality"}) {
        CHECK(run_suite(suite, s, one).to_json(false) == run_suite(suite, s, four).to_json(false));
    }
    one.inject_fault = four.inject_fault = true;
    Report f1 = run_suite("borcherds", s, one), f4 = run_suite("borcherds", s, four);
    CHECK(f1.failed > 0);
    CHECK(f1.to_json(false) == f4.to_json(false));
}

TEST_CASE("spectrum rejects levels past the cutoff") {
    ModuleSpec s = parse_session(Json::parse(R"({"blocks": [{"kind": "even", "ell": 1, "alpha0": "-1/2"}], "cutoff": "1"})"));
    CHECK(spectrum(s, std::nullopt)["vacuum_weight"] == "1/8");
    CHECK_THROWS_AS(spectrum(s, Rational(3, 2)), SpecError);
}

TEST_SUITE_END();
