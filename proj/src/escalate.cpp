#include "drowsy/escalate.hpp"

#include <stdexcept>

namespace drowsy {

std::string_view alert_level_name(AlertLevel level) {
    switch (level) {
    case AlertLevel::Awake: return "awake";
    case AlertLevel::Stage1: return "stage1";
    case AlertLevel::Stage2: return "stage2";
    }
    return "?";
}

AlertMachine::AlertMachine(EscalationConfig cfg) : cfg_(cfg) {
    if (cfg.t_blink_ms <= 0.0 || cfg.t_persist_ms <= 0.0 || cfg.t_recover_ms <= 0.0 ||
        cfg.heart_dropout_ms <= 0.0)
        throw std::invalid_argument("escalation durations must be > 0");
    if (cfg.vibrator_duty < 0 || cfg.vibrator_duty > 255)
        throw std::invalid_argument("vibrator_duty must be in [0, 255]");
}

void AlertMachine::enter(AlertLevel to, double now_ms) {
    state_.level = to;
    state_.entered_at_ms = now_ms;
    if (to == AlertLevel::Awake)
        state_.gsm_sent = false; // episode over
}

ActuatorCommand AlertMachine::step(double now_ms, const VigilanceMetrics& vig,
                                   const HeartEstimate& heart) {
    if (stepped_ && now_ms < last_now_ms_)
        throw std::invalid_argument("alert machine: time regression");
    last_now_ms_ = now_ms;
    stepped_ = true;

    // Continuous-open and heart-validity clocks.
    if (vig.current_closure_ms > 0.0)
        open_since_ms_.reset();
    else if (!open_since_ms_)
        open_since_ms_ = now_ms;
    if (heart.valid)
        heart_invalid_since_ms_.reset();
    else if (!heart_invalid_since_ms_)
        heart_invalid_since_ms_ = now_ms;

    const bool recovered =
        open_since_ms_ && now_ms - *open_since_ms_ >= cfg_.t_recover_ms;
    const bool heart_dropped_out =
        heart_invalid_since_ms_ && now_ms - *heart_invalid_since_ms_ > cfg_.heart_dropout_ms;

    // At most one level change per tick: Stage2 is reachable only via Stage1.
    ActuatorCommand cmd;
    switch (state_.level) {
    case AlertLevel::Awake:
        if (vig.current_closure_ms > cfg_.t_blink_ms)
            enter(AlertLevel::Stage1, now_ms);
        break;
    case AlertLevel::Stage1:
        if (recovered) {
            enter(AlertLevel::Awake, now_ms);
        } else if (vig.current_closure_ms > cfg_.t_blink_ms + cfg_.t_persist_ms &&
                   (heart.slowdown || !cfg_.slowdown_required || heart_dropped_out)) {
            enter(AlertLevel::Stage2, now_ms);
            if (!state_.gsm_sent) {
                cmd.gsm = cfg_.alert;
                state_.gsm_sent = true;
            }
        }
        break;
    case AlertLevel::Stage2:
        if (recovered)
            enter(AlertLevel::Awake, now_ms);
        break;
    }

    cmd.buzzer_on = state_.level != AlertLevel::Awake;
    cmd.vibrator_duty = state_.level == AlertLevel::Stage2 ? cfg_.vibrator_duty : 0;
    return cmd;
}

void TransitionLog::record(double t_ms, AlertLevel from, AlertLevel to) {
    if (from == to)
        throw std::invalid_argument("transition log: from == to");
    if (!entries_.empty() && t_ms < entries_.back().t_ms)
        throw std::invalid_argument("transition log: out-of-order entry");
    entries_.push_back({t_ms, from, to});
}

} // namespace drowsy
