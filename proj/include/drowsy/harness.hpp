#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "drowsy/config.hpp"
#include "drowsy/escalate.hpp"
#include "drowsy/signal_gen.hpp"

namespace drowsy {

struct TickRecord {
    double t_ms = 0.0;
    double eye_ir = 0.0;
    double ppg_ir = 0.0;
    bool eye_closed = false;
    double perclos = 0.0;
    double bpm = 0.0;
    bool slowdown = false;
    AlertLevel level = AlertLevel::Awake;
    bool buzzer = false;
    int vibrator_duty = 0;
};

// Outcome of one simulated drive: the transition log, detection quality
// measured against the generator's ground truth, every GSM payload emitted,
// and the per-tick trace.
struct RunReport {
    std::vector<Transition> transitions;
    std::vector<double> detection_latency_ms; // per matched Stage1 entry
    int false_alarm_count = 0; // Stage1 entries with no qualifying closure
    int missed_count = 0;      // long closures that never reached Stage2
    std::vector<std::vector<std::uint8_t>> gsm_payloads;
    std::vector<TickRecord> trace;

    int episode_count() const; // number of Awake -> Stage1 entries
    double mean_latency_ms() const;
};

// Runs the fixed-tick loop sample -> detect -> escalate -> device over the
// scenario named by the config. Deterministic given config (and seed).
RunReport run(const RunConfig& config);
RunReport run(const RunConfig& config, const Scenario& scenario);

// CSV trace: header
//   t_ms,eye_ir,ppg_ir,eye_closed,perclos,bpm,slowdown,level,buzzer,vibrator_duty
// one row per tick, decimal fields with 4 fractional digits, LF endings.
std::string csv_string(const RunReport& report);
void emit_csv(const RunReport& report, const std::filesystem::path& path);

} // namespace drowsy
