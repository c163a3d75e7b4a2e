#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "grandmp/sim.hpp"

using namespace grandmp;

namespace {

const ReliabilitySequence& sequence() {
    static const ReliabilitySequence seq =
        ReliabilitySequence::load_file(GRANDMP_TEST_SEQUENCE_PATH);
    return seq;
}

SimConfig base_config() {
    SimConfig cfg;
    cfg.n = 5;
    cfg.mqam = 4;
    cfg.cutoff = 8;
    cfg.ebn0_grid = {0.0, 4.0};
    cfg.trials_per_point = 400;
    cfg.master_seed = 42;
    cfg.workers = 1;
    return cfg;
}

}  // namespace

TEST_CASE("run_trial succeeds and replays at a clean operating point") {
    const PolarCode code = build_code(sequence(), 5);
    const Decoder decoder(code, Constellation(4), 8);
    const ChannelParams params = make_channel(4, 20.0);

    SplitMix64 a(7);
    const TrialOutcome first = run_trial(decoder, params, a);
    CHECK(first.kind == TrialKind::success);
    CHECK_FALSE(first.uncoded_error);
    CHECK(first.queries_checked >= 1);
    CHECK(first.patterns_valid >= 1);

    SplitMix64 b(7);
    const TrialOutcome replay = run_trial(decoder, params, b);
    CHECK(replay.kind == first.kind);
    CHECK(replay.queries_checked == first.queries_checked);
    CHECK(replay.patterns_valid == first.patterns_valid);
    CHECK(replay.uncoded_error == first.uncoded_error);
}

TEST_CASE("run_bler accounting identities hold at a noisy operating point") {
    const PolarCode code = build_code(sequence(), 5);
    SimConfig cfg = base_config();
    cfg.ebn0_grid = {0.0};
    cfg.trials_per_point = 500;
    const auto points = run_bler(code, cfg);
    REQUIRE(points.size() == 1);
    const BlerPoint& p = points[0];
    CHECK(p.ebn0_db == doctest::Approx(0.0));
    CHECK(p.trials == 500);
    CHECK(p.block_errors == p.mismatches + p.abandonments);
    CHECK(p.block_errors <= p.trials);
    CHECK(p.bler == doctest::Approx(double(p.block_errors) / double(p.trials)).epsilon(1e-12));
    CHECK(p.mean_queries >= 1.0);
    CHECK(p.mean_queries <= std::pow(4.0, 8.0));
    CHECK(p.mean_patterns_valid >= 0.0);
    CHECK(p.mean_patterns_valid <= p.mean_queries);
    // Guessing random noise can only help: hard-decision failures bound ours.
    CHECK(p.block_errors <= p.uncoded_block_errors);
    CHECK(p.block_errors > 0);  // 0 dB is far below the code's waterfall
}

TEST_CASE("run_bler at 20 dB sees no block errors") {
    const PolarCode code = build_code(sequence(), 5);
    SimConfig cfg = base_config();
    cfg.ebn0_grid = {20.0};
    cfg.trials_per_point = 300;
    const auto points = run_bler(code, cfg);
    REQUIRE(points.size() == 1);
    CHECK(points[0].block_errors == 0);
    CHECK(points[0].bler == doctest::Approx(0.0));
}

TEST_CASE("run_bler is reproducible and worker-count invariant") {
    const PolarCode code = build_code(sequence(), 5);
    SimConfig cfg = base_config();

    const auto first = run_bler(code, cfg);
    const auto again = run_bler(code, cfg);

    SimConfig parallel = cfg;
    parallel.workers = 4;
    const auto par = run_bler(code, parallel);

    std::ostringstream s1, s2, s3;
    write_csv(first, s1);
    write_csv(again, s2);
    write_csv(par, s3);
    CHECK(s1.str() == s2.str());
    CHECK(s1.str() == s3.str());

    SimConfig other = cfg;
    other.master_seed = 43;
    std::ostringstream s4;
    write_csv(run_bler(code, other), s4);
    CHECK(s1.str() != s4.str());
}

TEST_CASE("uncoded success implies decoder success") {
    // When every hard decision is already right, the all-hard pattern is the
    // closest valid word, so the decoder can never do worse.
    const PolarCode code = build_code(sequence(), 5);
    const Decoder decoder(code, Constellation(4), 8);
    const ChannelParams params = make_channel(4, 4.0);
    int uncoded_ok = 0;
    for (std::uint64_t t = 0; t < 400; ++t) {
        SplitMix64 rng(derive_stream(99, 0, t));
        const TrialOutcome out = run_trial(decoder, params, rng);
        if (!out.uncoded_error) {
            ++uncoded_ok;
            CHECK(out.kind == TrialKind::success);
        }
    }
    CHECK(uncoded_ok > 0);
}

TEST_CASE("run_bler validates its configuration") {
    const PolarCode code = build_code(sequence(), 5);
    SimConfig cfg = base_config();

    SimConfig no_grid = cfg;
    no_grid.ebn0_grid.clear();
    CHECK_THROWS_AS(run_bler(code, no_grid), std::invalid_argument);

    SimConfig no_trials = cfg;
    no_trials.trials_per_point = 0;
    CHECK_THROWS_AS(run_bler(code, no_trials), std::invalid_argument);

    SimConfig bad_order = cfg;
    bad_order.mqam = 12;
    CHECK_THROWS_AS(run_bler(code, bad_order), std::invalid_argument);

    SimConfig mismatched = cfg;
    mismatched.n = 6;  // code was built for n = 5
    CHECK_THROWS_AS(run_bler(code, mismatched), std::invalid_argument);

    // workers = 0 falls back to a single worker rather than erroring.
    SimConfig no_workers = cfg;
    no_workers.workers = 0;
    no_workers.trials_per_point = 50;
    SimConfig one_worker = no_workers;
    one_worker.workers = 1;
    std::ostringstream sz, so;
    write_csv(run_bler(code, no_workers), sz);
    write_csv(run_bler(code, one_worker), so);
    CHECK(sz.str() == so.str());
}

TEST_CASE("write_csv format") {
    SUBCASE("header only for an empty sweep") {
        std::ostringstream out;
        write_csv({}, out);
        CHECK(out.str() ==
              "ebn0_db,trials,block_errors,mismatches,abandonments,bler,mean_queries\n");
    }
    SUBCASE("one data row") {
        BlerPoint p;
        p.ebn0_db = 2.0;
        p.trials = 1000;
        p.block_errors = 125;
        p.mismatches = 100;
        p.abandonments = 25;
        p.bler = 0.125;
        p.mean_queries = 37.25;
        std::ostringstream out;
        write_csv({p}, out);
        CHECK(out.str() ==
              "ebn0_db,trials,block_errors,mismatches,abandonments,bler,mean_queries\n"
              "2,1000,125,100,25,0.125,37.25\n");
    }
}

TEST_CASE("write_json round-trips through a JSON parser") {
    const PolarCode code = build_code(sequence(), 5);
    SimConfig cfg = base_config();
    cfg.trials_per_point = 200;
    const auto points = run_bler(code, cfg);

    std::ostringstream out;
    write_json(cfg, points, out);
    const nlohmann::json doc = nlohmann::json::parse(out.str());

    CHECK(doc.at("config").at("n").get<int>() == 5);
    CHECK(doc.at("config").at("mqam").get<unsigned>() == 4);
    CHECK(doc.at("config").at("s").get<unsigned>() == 8);
    CHECK(doc.at("config").at("trials_per_point").get<std::size_t>() == 200);
    CHECK(doc.at("config").at("master_seed").get<std::uint64_t>() == 42);
    CHECK(doc.at("config").at("ebn0_grid").size() == 2);

    REQUIRE(doc.at("points").size() == points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& jp = doc.at("points").at(i);
        CHECK(jp.at("ebn0_db").get<double>() == doctest::Approx(points[i].ebn0_db));
        CHECK(jp.at("trials").get<std::size_t>() == points[i].trials);
        CHECK(jp.at("block_errors").get<std::size_t>() == points[i].block_errors);
        CHECK(jp.at("mismatches").get<std::size_t>() == points[i].mismatches);
        CHECK(jp.at("abandonments").get<std::size_t>() == points[i].abandonments);
        CHECK(jp.at("bler").get<double>() == doctest::Approx(points[i].bler));
        CHECK(jp.at("mean_queries").get<double>() == doctest::Approx(points[i].mean_queries));
        CHECK(jp.at("mean_patterns_valid").get<double>() ==
              doctest::Approx(points[i].mean_patterns_valid));
        CHECK(jp.at("uncoded_block_errors").get<std::size_t>() ==
              points[i].uncoded_block_errors);
    }
}

TEST_CASE("default output names encode the clamped cut-off") {
    SimConfig cfg = base_config();
    CHECK(default_output_name(cfg, "csv") == "bler_N32_M4_S8.csv");

    SimConfig wide = cfg;
    wide.mqam = 256;  // 32 bits / 8 per symbol = 4 symbols < cutoff 8
    CHECK(default_output_name(wide, "json") == "bler_N32_M256_S4.json");
}
