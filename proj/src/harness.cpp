#include "drowsy/harness.hpp"

#include <cstdio>
#include <numeric>

#include "drowsy/detect.hpp"
#include "drowsy/errors.hpp"

namespace drowsy {

namespace {

// Detection runs behind ground truth by up to the debounce dwell plus two
// ticks, so truth spans are matched with that much slack at their end.
double grace_ms(const RunConfig& cfg, double step_ms) {
    return cfg.eye.debounce_ms + 2.0 * step_ms;
}

void score_against_truth(RunReport& rep, const GroundTruth& truth, const RunConfig& cfg,
                         double step_ms) {
    const double grace = grace_ms(cfg, step_ms);
    const double t_blink = cfg.escalate.t_blink_ms;

    for (const Transition& tr : rep.transitions) {
        if (!(tr.from == AlertLevel::Awake && tr.to == AlertLevel::Stage1))
            continue;
        const ClosureSpan* match = nullptr;
        for (const ClosureSpan& span : truth.blink_events) {
            if (span.end_ms - span.start_ms >= t_blink && span.start_ms <= tr.t_ms &&
                tr.t_ms <= span.end_ms + grace) {
                match = &span;
                break;
            }
        }
        if (match)
            rep.detection_latency_ms.push_back(tr.t_ms - match->start_ms - t_blink);
        else
            ++rep.false_alarm_count;
    }

    const double stage2_span = t_blink + cfg.escalate.t_persist_ms;
    for (const ClosureSpan& span : truth.blink_events) {
        if (span.end_ms - span.start_ms < stage2_span)
            continue;
        bool reached = false;
        for (const Transition& tr : rep.transitions)
            if (tr.to == AlertLevel::Stage2 && span.start_ms <= tr.t_ms &&
                tr.t_ms <= span.end_ms + grace) {
                reached = true;
                break;
            }
        if (!reached)
            ++rep.missed_count;
    }
}

} // namespace

int RunReport::episode_count() const {
    int n = 0;
    for (const Transition& tr : transitions)
        if (tr.from == AlertLevel::Awake && tr.to == AlertLevel::Stage1)
            ++n;
    return n;
}

double RunReport::mean_latency_ms() const {
    if (detection_latency_ms.empty())
        return 0.0;
    const double sum =
        std::accumulate(detection_latency_ms.begin(), detection_latency_ms.end(), 0.0);
    return sum / static_cast<double>(detection_latency_ms.size());
}

RunReport run(const RunConfig& config) {
    Scenario sc = parse_scenario(read_text_file(config.scenario_path));
    return run(config, sc);
}

RunReport run(const RunConfig& config, const Scenario& scenario) {
    config.validate();
    Scenario sc = scenario;
    if (config.seed_override)
        sc.seed = *config.seed_override;

    const Generation gen = generate(sc);

    EyeClassifier eye(config.eye);
    BlinkTracker tracker(config.blink);
    PeakDetector peaks(config.peak);
    HeartEstimator heart(config.heart);
    AlertMachine machine(config.escalate);
    TransitionLog log;

    RunReport rep;
    rep.trace.reserve(gen.samples.size());
    for (const SensorSample& sample : gen.samples) {
        const EyeState st = eye.update(sample);
        const BlinkTracker::Result vig = tracker.update(sample.t_ms, st, eye.last_edge_ms());
        const std::optional<double> peak = peaks.update(sample);
        const HeartEstimate est = heart.update(sample.t_ms, peak);

        const AlertLevel before = machine.state().level;
        const ActuatorCommand cmd = machine.step(sample.t_ms, vig.metrics, est);
        const AlertLevel after = machine.state().level;
        if (after != before)
            log.record(sample.t_ms, before, after);
        if (cmd.gsm)
            rep.gsm_payloads.push_back(encode_gsm_at(*cmd.gsm));

        rep.trace.push_back({sample.t_ms, sample.eye_ir, sample.ppg_ir,
                             st == EyeState::Closed, vig.metrics.perclos, est.bpm,
                             est.slowdown, after, cmd.buzzer_on, cmd.vibrator_duty});
    }

    rep.transitions = log.entries();
    score_against_truth(rep, gen.truth, config, 1000.0 / sc.sample_rate_hz);
    return rep;
}

std::string csv_string(const RunReport& report) {
    std::string out = "t_ms,eye_ir,ppg_ir,eye_closed,perclos,bpm,slowdown,level,buzzer,"
                      "vibrator_duty\n";
    out.reserve(out.size() + report.trace.size() * 72);
    char row[160];
    for (const TickRecord& t : report.trace) {
        const std::string_view level = alert_level_name(t.level);
        const int n = std::snprintf(row, sizeof row,
                                    "%.4f,%.4f,%.4f,%d,%.4f,%.4f,%d,%.*s,%d,%d\n", t.t_ms,
                                    t.eye_ir, t.ppg_ir, t.eye_closed ? 1 : 0, t.perclos,
                                    t.bpm, t.slowdown ? 1 : 0, static_cast<int>(level.size()),
                                    level.data(), t.buzzer ? 1 : 0, t.vibrator_duty);
        out.append(row, static_cast<std::size_t>(n));
    }
    return out;
}

void emit_csv(const RunReport& report, const std::filesystem::path& path) {
    write_file(path, csv_string(report));
}

} // namespace drowsy
