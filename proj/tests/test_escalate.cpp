#include <random>
#include <stdexcept>

#include <doctest.h>

#include "drowsy/escalate.hpp"

using namespace drowsy;

namespace {

VigilanceMetrics closure(double ms) {
    VigilanceMetrics m;
    m.current_closure_ms = ms;
    return m;
}

HeartEstimate heart(bool valid, bool slowdown) {
    HeartEstimate e;
    e.valid = valid;
    e.slowdown = slowdown;
    e.bpm = valid ? 70.0 : 0.0;
    e.baseline_bpm = valid ? 75.0 : 0.0;
    return e;
}

EscalationConfig test_config() {
    EscalationConfig cfg;
    cfg.alert = {"+15551234567", "DROWSY DRIVER ALERT"};
    return cfg;
}

// Walks the machine over a closure profile at a 10 ms tick, returning the
// transition log. closure_at(t) gives the ongoing-closure length.
template <typename ClosureFn, typename HeartFn>
std::vector<Transition> walk(AlertMachine& m, double until_ms, ClosureFn closure_at,
                             HeartFn heart_at) {
    TransitionLog log;
    for (double t = 0.0; t <= until_ms; t += 10.0) {
        const AlertLevel before = m.state().level;
        m.step(t, closure(closure_at(t)), heart_at(t));
        if (m.state().level != before)
            log.record(t, before, m.state().level);
    }
    return log.entries();
}

// Closure profile of one eye-closure episode [start, end): the ongoing
// closure length the tracker would report.
auto episode_profile(double start, double end) {
    return [=](double t) { return t >= start && t < end ? t - start : 0.0; };
}

} // namespace

TEST_CASE("closure past t_blink triggers stage1 and the buzzer") {
    AlertMachine m(test_config());
    const ActuatorCommand cmd = m.step(0.0, closure(500.0), heart(true, false));
    CHECK(m.state().level == AlertLevel::Stage1);
    CHECK(cmd.buzzer_on);
    CHECK(cmd.vibrator_duty == 0);
    CHECK(!cmd.gsm.has_value());
}

TEST_CASE("persistent closure with slowdown reaches stage2 with gsm") {
    AlertMachine m(test_config());
    m.step(0.0, closure(500.0), heart(true, false));
    REQUIRE(m.state().level == AlertLevel::Stage1);
    const ActuatorCommand cmd = m.step(10.0, closure(3600.0), heart(true, true));
    CHECK(m.state().level == AlertLevel::Stage2);
    CHECK(cmd.buzzer_on);
    CHECK(cmd.vibrator_duty == 200);
    REQUIRE(cmd.gsm.has_value());
    CHECK(cmd.gsm->body == "DROWSY DRIVER ALERT");
}

TEST_CASE("sustained open eyes recover to awake with actuators off") {
    AlertMachine m(test_config());
    m.step(0.0, closure(500.0), heart(true, false));
    ActuatorCommand cmd;
    for (double t = 10.0; t <= 1010.0; t += 10.0)
        cmd = m.step(t, closure(0.0), heart(true, false));
    CHECK(m.state().level == AlertLevel::Awake);
    CHECK(!cmd.buzzer_on);
    CHECK(cmd.vibrator_duty == 0);
    CHECK(!cmd.gsm.has_value());
}

TEST_CASE("stage2 is never entered directly from awake") {
    AlertMachine m(test_config());
    // Hugely persistent closure with slowdown on the very first step.
    const ActuatorCommand cmd = m.step(0.0, closure(60000.0), heart(true, true));
    CHECK(m.state().level == AlertLevel::Stage1);
    CHECK(!cmd.gsm.has_value());
    // The next step may then escalate.
    m.step(10.0, closure(60010.0), heart(true, true));
    CHECK(m.state().level == AlertLevel::Stage2);
}

TEST_CASE("no slowdown blocks stage2 when required") {
    AlertMachine m(test_config());
    const auto log = walk(
        m, 8000.0, episode_profile(1000.0, 7000.0), [](double) { return heart(true, false); });
    REQUIRE(log.size() == 2);
    CHECK(log[0].from == AlertLevel::Awake);
    CHECK(log[0].to == AlertLevel::Stage1);
    CHECK(log[1].from == AlertLevel::Stage1);
    CHECK(log[1].to == AlertLevel::Awake);
}

TEST_CASE("slowdown_required=false escalates on closure alone") {
    EscalationConfig cfg = test_config();
    cfg.slowdown_required = false;
    AlertMachine m(cfg);
    const auto log = walk(
        m, 8000.0, episode_profile(1000.0, 7000.0), [](double) { return heart(true, false); });
    REQUIRE(log.size() == 3);
    CHECK(log[1].to == AlertLevel::Stage2);
}

TEST_CASE("five second microsleep with slowdown walks the full episode") {
    AlertMachine m(test_config());
    const auto log = walk(m, 10000.0, episode_profile(1000.0, 6000.0),
                          [](double t) { return heart(true, t >= 2000.0); });
    REQUIRE(log.size() == 3);
    CHECK(log[0].to == AlertLevel::Stage1);
    CHECK(log[1].to == AlertLevel::Stage2);
    CHECK(log[2].to == AlertLevel::Awake);
    // Stage1 at closure > 400 ms, Stage2 at closure > 3400 ms.
    CHECK(log[0].t_ms == doctest::Approx(1410.0).epsilon(1e-9));
    CHECK(log[1].t_ms == doctest::Approx(4410.0).epsilon(1e-9));
    CHECK(log[2].t_ms == doctest::Approx(7000.0).epsilon(1e-9));
}

TEST_CASE("600 ms closure without slowdown gives stage1 then awake") {
    AlertMachine m(test_config());
    const auto log = walk(
        m, 4000.0, episode_profile(1000.0, 1600.0), [](double) { return heart(true, false); });
    REQUIRE(log.size() == 2);
    CHECK(log[0].to == AlertLevel::Stage1);
    CHECK(log[1].to == AlertLevel::Awake);
}

TEST_CASE("invalid heart for heart_dropout_ms waives the slowdown gate") {
    AlertMachine m(test_config());
    // Heart invalid from t=0; closure starts at 2 s and holds past 16 s.
    const auto log = walk(m, 16000.0, episode_profile(2000.0, 16000.0),
                          [](double) { return heart(false, false); });
    REQUIRE(log.size() >= 2);
    CHECK(log[0].to == AlertLevel::Stage1);
    CHECK(log[1].to == AlertLevel::Stage2);
    // Fail-safe arms only after 10 s of invalid heart data.
    CHECK(log[1].t_ms > 10000.0);
}

TEST_CASE("gsm is sent exactly once per episode") {
    AlertMachine m(test_config());
    int gsm_count = 0;
    // Two full episodes separated by a recovery.
    const auto profile = [](double t) {
        if (t >= 1000 && t < 6000)
            return t - 1000;
        if (t >= 8000 && t < 13000)
            return t - 8000;
        return 0.0;
    };
    for (double t = 0.0; t <= 15000.0; t += 10.0)
        if (m.step(t, closure(profile(t)), heart(true, true)).gsm)
            ++gsm_count;
    CHECK(gsm_count == 2); // one per episode
}

TEST_CASE("escalation is monotone in closure duration under slowdown") {
    AlertLevel prev_peak = AlertLevel::Awake;
    for (double dur = 100.0; dur <= 6000.0; dur += 100.0) {
        AlertMachine m(test_config());
        AlertLevel peak = AlertLevel::Awake;
        for (double t = 0.0; t <= 8000.0; t += 10.0) {
            m.step(t, closure(t >= 500 && t < 500 + dur ? t - 500 : 0.0), heart(true, true));
            if (static_cast<int>(m.state().level) > static_cast<int>(peak))
                peak = m.state().level;
        }
        CHECK(static_cast<int>(peak) >= static_cast<int>(prev_peak));
        prev_peak = peak;
    }
    CHECK(prev_peak == AlertLevel::Stage2);
}

TEST_CASE("quiescence: short closures never raise any alert") {
    AlertMachine m(test_config());
    for (double t = 0.0; t <= 30000.0; t += 10.0) {
        const double phase = std::fmod(t, 3000.0);
        const double cl = phase < 350.0 ? phase : 0.0; // 350 ms blinks
        const ActuatorCommand cmd = m.step(t, closure(cl), heart(true, false));
        CHECK(m.state().level == AlertLevel::Awake);
        CHECK(!cmd.buzzer_on);
        CHECK(cmd.vibrator_duty == 0);
        CHECK(!cmd.gsm.has_value());
    }
}

TEST_CASE("time regression throws") {
    AlertMachine m(test_config());
    m.step(100.0, closure(0.0), heart(true, false));
    CHECK_THROWS_AS(m.step(50.0, closure(0.0), heart(true, false)), std::invalid_argument);
}

TEST_CASE("config invariants are enforced") {
    EscalationConfig bad = test_config();
    bad.t_blink_ms = 0.0;
    CHECK_THROWS_AS(AlertMachine{bad}, std::invalid_argument);
    bad = test_config();
    bad.vibrator_duty = 300;
    CHECK_THROWS_AS(AlertMachine{bad}, std::invalid_argument);
}

TEST_CASE("transition log rejects no-op and out-of-order entries") {
    TransitionLog log;
    log.record(100.0, AlertLevel::Awake, AlertLevel::Stage1);
    CHECK_THROWS_AS(log.record(200.0, AlertLevel::Stage1, AlertLevel::Stage1),
                    std::invalid_argument);
    CHECK_THROWS_AS(log.record(50.0, AlertLevel::Stage1, AlertLevel::Awake),
                    std::invalid_argument);
    log.record(200.0, AlertLevel::Stage1, AlertLevel::Awake);
    CHECK(log.entries().size() == 2);
}

TEST_CASE("randomized safety: no skips, gsm only on stage2 entry, awake is silent") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        EscalationConfig cfg = test_config();
        cfg.t_blink_ms = 100.0 + uni(rng) * 900.0;
        cfg.t_persist_ms = 500.0 + uni(rng) * 4000.0;
        cfg.t_recover_ms = 200.0 + uni(rng) * 2000.0;
        cfg.slowdown_required = uni(rng) < 0.7;
        AlertMachine m(cfg);

        double cl = 0.0;
        AlertLevel prev = AlertLevel::Awake;
        for (double t = 0.0; t <= 20000.0; t += 10.0) {
            // Random walk closure profile: grows while "closed", resets open.
            cl = uni(rng) < 0.97 ? cl + 10.0 : 0.0;
            const HeartEstimate h = heart(uni(rng) < 0.8, uni(rng) < 0.3);
            const ActuatorCommand cmd = m.step(t, closure(cl), h);
            const AlertLevel now = m.state().level;

            if (prev == AlertLevel::Awake)
                CHECK(now != AlertLevel::Stage2); // no skipping
            if (cmd.gsm.has_value()) {
                CHECK(now == AlertLevel::Stage2);
                CHECK(prev == AlertLevel::Stage1);
            }
            CHECK(cmd.buzzer_on == (now != AlertLevel::Awake));
            CHECK((cmd.vibrator_duty > 0) == (now == AlertLevel::Stage2));
            prev = now;
        }
    }
}
