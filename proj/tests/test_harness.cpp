#include <filesystem>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "drowsy/config.hpp"
#include "drowsy/errors.hpp"
#include "drowsy/harness.hpp"

using namespace drowsy;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = DROWSY_FIXTURE_DIR;

RunConfig fixture_config(const std::string& name) {
    return load_config(kFixtures / "configs" / (name + ".cfg"));
}

std::vector<AlertLevel> level_sequence(const RunReport& rep) {
    std::vector<AlertLevel> seq;
    for (const Transition& tr : rep.transitions)
        seq.push_back(tr.to);
    return seq;
}

} // namespace

TEST_CASE("config defaults, round-trip, and validation") {
    RunConfig cfg = fixture_config("microsleep");
    CHECK(cfg.eye.close_threshold == 0.40);
    CHECK(cfg.eye.open_threshold == 0.60);
    CHECK(cfg.eye.debounce_ms == 30.0);
    CHECK(cfg.blink.blink_max_ms == 400.0);
    CHECK(cfg.blink.window_ms == 60000.0);
    CHECK(cfg.peak.refractory_ms == 250.0);
    CHECK(cfg.peak.rel_threshold == 0.6);
    CHECK(cfg.heart.bpm_window_ms == 10000.0);
    CHECK(cfg.heart.baseline_tau_ms == 60000.0);
    CHECK(cfg.heart.slowdown_ratio == 0.9);
    CHECK(cfg.escalate.t_blink_ms == 400.0);
    CHECK(cfg.escalate.t_persist_ms == 3000.0);
    CHECK(cfg.escalate.t_recover_ms == 1000.0);
    CHECK(cfg.escalate.slowdown_required);
    CHECK(cfg.escalate.vibrator_duty == 200);
    CHECK(cfg.siren.period_ms == 500.0);
    CHECK(cfg.siren.duty == 0.5);

    // Round-trip: every tunable parses back to an equal value.
    cfg.eye.debounce_ms = 17.5;
    cfg.heart.slowdown_ratio = 0.873;
    cfg.escalate.t_persist_ms = 2718.281828;
    cfg.escalate.slowdown_required = false;
    const RunConfig back = parse_config(cfg.to_text(), "");
    CHECK(back == cfg);
}

TEST_CASE("config errors name the offending field") {
    CHECK_THROWS_WITH_AS(parse_config("scenario x.scn\nescalate.t_blink_ms 0\n", ""),
                         "escalate.t_blink_ms must be > 0", ParseError);
    CHECK_THROWS_AS(parse_config("escalate.t_blink_ms 400\n", ""), ParseError); // no scenario
    CHECK_THROWS_AS(parse_config("scenario x\nnope 1\n", ""), ParseError);
    CHECK_THROWS_AS(parse_config("scenario x\ndetect.rel_threshold 1.5\n", ""), ParseError);
    CHECK_THROWS_AS(parse_config("scenario x\ngsm.recipient 911\n", ""), ParseError);
    CHECK_THROWS_AS(load_config(kFixtures / "configs" / "bad.cfg"), ParseError);
    CHECK_THROWS_AS(load_config(kFixtures / "configs" / "nonexistent.cfg"), IoError);
}

TEST_CASE("alert driver: no transitions, no false alarms over ten minutes") {
    const RunReport rep = run(fixture_config("alert_driver"));
    CHECK(rep.transitions.empty());
    CHECK(rep.false_alarm_count == 0);
    CHECK(rep.missed_count == 0);
    CHECK(rep.gsm_payloads.empty());
    CHECK(rep.episode_count() == 0);
    CHECK(rep.trace.size() == 60000);
}

TEST_CASE("short blink: quiescent run") {
    const RunReport rep = run(fixture_config("short_blink"));
    CHECK(rep.transitions.empty());
    CHECK(rep.false_alarm_count == 0);
    for (const TickRecord& t : rep.trace) {
        CHECK(t.level == AlertLevel::Awake);
        CHECK(!t.buzzer);
        CHECK(t.vibrator_duty == 0);
    }
}

TEST_CASE("600 ms closure: stage1 only, no gsm") {
    const RunReport rep = run(fixture_config("closure600"));
    REQUIRE(level_sequence(rep) ==
            std::vector<AlertLevel>{AlertLevel::Stage1, AlertLevel::Awake});
    CHECK(rep.gsm_payloads.empty());
    CHECK(rep.false_alarm_count == 0);
    CHECK(rep.missed_count == 0);
    REQUIRE(rep.detection_latency_ms.size() == 1);
    // <= debounce + 2 ticks
    CHECK(rep.detection_latency_ms[0] >= 0.0);
    CHECK(rep.detection_latency_ms[0] <= 30.0 + 20.0);
}

TEST_CASE("microsleep with heart slowdown: full escalation episode") {
    const RunReport rep = run(fixture_config("microsleep"));
    REQUIRE(level_sequence(rep) == std::vector<AlertLevel>{AlertLevel::Stage1,
                                                           AlertLevel::Stage2,
                                                           AlertLevel::Awake});
    CHECK(rep.episode_count() == 1);
    REQUIRE(rep.gsm_payloads.size() == 1);
    REQUIRE(rep.detection_latency_ms.size() == 1);
    CHECK(rep.detection_latency_ms[0] <= 30.0 + 20.0);
    CHECK(rep.missed_count == 0);

    // Stage2 happened during the scripted closure, with the slowdown flag up.
    const Transition stage2 = rep.transitions[1];
    CHECK(stage2.t_ms > 33000.0);
    CHECK(stage2.t_ms < 35000.0);
    for (const TickRecord& t : rep.trace)
        if (t.t_ms == stage2.t_ms)
            CHECK(t.slowdown);
}

TEST_CASE("ppg dropout: fail-safe stage2 without any slowdown") {
    const RunReport rep = run(fixture_config("dropout"));
    REQUIRE(level_sequence(rep) == std::vector<AlertLevel>{AlertLevel::Stage1,
                                                           AlertLevel::Stage2,
                                                           AlertLevel::Awake});
    REQUIRE(rep.gsm_payloads.size() == 1);
    for (const TickRecord& t : rep.trace)
        CHECK(!t.slowdown); // the channel is dead, never slow
}

TEST_CASE("gsm payload count equals stage2 entries") {
    for (const char* name : {"alert_driver", "closure600", "microsleep", "dropout"}) {
        const RunReport rep = run(fixture_config(name));
        int stage2 = 0;
        for (const Transition& tr : rep.transitions)
            if (tr.to == AlertLevel::Stage2)
                ++stage2;
        CHECK(rep.gsm_payloads.size() == static_cast<std::size_t>(stage2));
    }
}

TEST_CASE("csv output shape and golden bytes") {
    const RunConfig cfg = fixture_config("closure600");
    const RunReport rep = run(cfg);
    const std::string csv = csv_string(rep);

    // Row count = sample count + header; LF endings only.
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1501);
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(csv.rfind("t_ms,eye_ir,ppg_ir,eye_closed,perclos,bpm,slowdown,level,buzzer,"
                    "vibrator_duty\n", 0) == 0);

    // Byte-for-byte against the checked-in golden.
    CHECK(csv == read_text_file(kFixtures / "expected_closure600.csv"));
}

TEST_CASE("csv of an empty run is just the header") {
    RunConfig cfg = fixture_config("short_blink");
    Scenario sc;
    sc.duration_ms = 0;
    sc.sample_rate_hz = 100;
    const RunReport rep = run(cfg, sc);
    CHECK(csv_string(rep) ==
          "t_ms,eye_ir,ppg_ir,eye_closed,perclos,bpm,slowdown,level,buzzer,vibrator_duty\n");
}

TEST_CASE("level column stays within its enum domain") {
    const std::string csv = csv_string(run(fixture_config("microsleep")));
    std::size_t pos = csv.find('\n') + 1;
    while (pos < csv.size()) {
        const std::size_t eol = csv.find('\n', pos);
        const std::string row = csv.substr(pos, eol - pos);
        const bool ok = row.find(",awake,") != std::string::npos ||
                        row.find(",stage1,") != std::string::npos ||
                        row.find(",stage2,") != std::string::npos;
        if (!ok)
            FAIL("row without a valid level: ", row);
        pos = eol + 1;
    }
}

TEST_CASE("identical config and seed give byte-identical csv") {
    const RunConfig cfg = fixture_config("microsleep");
    CHECK(csv_string(run(cfg)) == csv_string(run(cfg)));

    RunConfig reseeded = cfg;
    reseeded.seed_override = 777;
    const std::string a = csv_string(run(reseeded));
    const std::string b = csv_string(run(reseeded));
    CHECK(a == b);
}

TEST_CASE("seed override changes the stream") {
    RunConfig cfg = fixture_config("alert_driver");
    const std::string base = csv_string(run(cfg));
    cfg.seed_override = 999;
    CHECK(csv_string(run(cfg)) != base);
}

TEST_CASE("latency stays under debounce + two ticks on noise-free closures") {
    std::mt19937_64 rng(505);
    std::uniform_int_distribution<std::int64_t> gap(800, 3000);
    std::uniform_int_distribution<std::int64_t> dur(500, 2500);

    RunConfig cfg = fixture_config("short_blink");
    for (int trial = 0; trial < 5; ++trial) {
        Scenario sc;
        sc.duration_ms = 30000;
        sc.sample_rate_hz = 100;
        sc.seed = rng();
        std::int64_t t = 2000;
        while (true) {
            const std::int64_t d = dur(rng);
            if (t + d > sc.duration_ms - 1500)
                break;
            sc.events.push_back({t, EventKind::EyesClosed, d, 0.0, 0});
            t += d + gap(rng) + static_cast<std::int64_t>(cfg.escalate.t_recover_ms);
        }
        validate_scenario(sc);

        const RunReport rep = run(cfg, sc);
        CHECK(rep.false_alarm_count == 0);
        CHECK(rep.detection_latency_ms.size() ==
              static_cast<std::size_t>(rep.episode_count()));
        for (const double latency : rep.detection_latency_ms) {
            CHECK(latency >= 0.0);
            CHECK(latency <= cfg.eye.debounce_ms + 2.0 * 10.0);
        }
    }
}

TEST_CASE("emit_csv reports unwritable paths as io errors") {
    const RunReport rep = run(fixture_config("short_blink"));
    CHECK_THROWS_AS(emit_csv(rep, "/nonexistent-dir/trace.csv"), IoError);
}
