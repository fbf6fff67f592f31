#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "drowsy/detect.hpp"
#include "drowsy/device.hpp"

namespace drowsy {

enum class AlertLevel { Awake, Stage1, Stage2 };

std::string_view alert_level_name(AlertLevel level);

struct AlertState {
    AlertLevel level = AlertLevel::Awake;
    double entered_at_ms = 0.0;
    bool gsm_sent = false; // one text per episode
};

struct EscalationConfig {
    double t_blink_ms = 400.0;       // closure longer than this enters Stage1
    double t_persist_ms = 3000.0;    // additional persistence for Stage2
    double t_recover_ms = 1000.0;    // continuous open time to de-escalate
    double heart_dropout_ms = 10000.0; // invalid-heart time before the
                                       // closure-only Stage2 fail-safe
    bool slowdown_required = true;   // Stage2 needs a heart slowdown
    int vibrator_duty = 200;         // PWM duty commanded in Stage2, 0-255
    GsmAlert alert;                  // payload sent on Stage2 entry

    bool operator==(const EscalationConfig&) const = default;
};

struct ActuatorCommand {
    bool buzzer_on = false;
    int vibrator_duty = 0;          // 0-255
    std::optional<GsmAlert> gsm;    // present only on the Stage2 entry tick
};

// The escalation state machine. Stage1 (buzzer) when a closure outlasts a
// blink; Stage2 (buzzer + seat vibrator + one GSM text) when it persists and
// the heart has slowed; back to Awake after sustained open eyes. Stage2 is
// reachable only through Stage1. If the heart estimate stays invalid for
// heart_dropout_ms the slowdown requirement is waived - a dead PPG channel
// must not block alerting.
class AlertMachine {
public:
    explicit AlertMachine(EscalationConfig cfg = {});

    // now_ms must be non-decreasing; throws std::invalid_argument otherwise.
    ActuatorCommand step(double now_ms, const VigilanceMetrics& vig,
                         const HeartEstimate& heart);

    const AlertState& state() const { return state_; }
    const EscalationConfig& config() const { return cfg_; }

private:
    void enter(AlertLevel to, double now_ms);

    EscalationConfig cfg_;
    AlertState state_;
    std::optional<double> open_since_ms_;
    std::optional<double> heart_invalid_since_ms_;
    double last_now_ms_ = 0.0;
    bool stepped_ = false;
};

struct Transition {
    double t_ms = 0.0;
    AlertLevel from = AlertLevel::Awake;
    AlertLevel to = AlertLevel::Awake;

    bool operator==(const Transition&) const = default;
};

// Time-ordered record of level changes over a run.
class TransitionLog {
public:
    void record(double t_ms, AlertLevel from, AlertLevel to);
    const std::vector<Transition>& entries() const { return entries_; }

private:
    std::vector<Transition> entries_;
};

} // namespace drowsy
