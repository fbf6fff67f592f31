#include "drowsy/detect.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace drowsy {

namespace {

void check_order(double& last_t_ms, double t_ms, const char* who) {
    if (t_ms < last_t_ms)
        throw std::invalid_argument(std::string(who) + ": out-of-order timestamp");
    last_t_ms = t_ms;
}

void check_positive(double v, const char* what) {
    if (v <= 0.0)
        throw std::invalid_argument(std::string(what) + " must be > 0");
}

} // namespace

EyeClassifier::EyeClassifier(EyeClassifierConfig cfg) : cfg_(cfg) {
    if (!(0.0 < cfg.close_threshold && cfg.close_threshold < cfg.open_threshold &&
          cfg.open_threshold < 1.0))
        throw std::invalid_argument("eye thresholds must satisfy 0 < close < open < 1");
    if (cfg.debounce_ms < 0.0)
        throw std::invalid_argument("debounce_ms must be >= 0");
}

EyeState EyeClassifier::update(const SensorSample& sample) {
    check_order(last_t_ms_, sample.t_ms, "eye classifier");
    last_edge_ms_.reset();

    // A candidate transition must hold continuously for debounce_ms; any
    // sample back on the holding side resets the dwell clock.
    const bool crossing = state_ == EyeState::Open
                              ? sample.eye_ir < cfg_.close_threshold
                              : sample.eye_ir > cfg_.open_threshold;
    if (!crossing) {
        pending_since_ms_.reset();
        return state_;
    }
    if (!pending_since_ms_)
        pending_since_ms_ = sample.t_ms;
    if (sample.t_ms - *pending_since_ms_ >= cfg_.debounce_ms) {
        state_ = state_ == EyeState::Open ? EyeState::Closed : EyeState::Open;
        last_edge_ms_ = *pending_since_ms_; // the flip began at the first crossing
        pending_since_ms_.reset();
    }
    return state_;
}

BlinkTracker::BlinkTracker(BlinkTrackerConfig cfg) : cfg_(cfg) {
    check_positive(cfg.blink_max_ms, "blink_max_ms");
    check_positive(cfg.window_ms, "window_ms");
}

BlinkTracker::Result BlinkTracker::update(double t_ms, EyeState eye,
                                          std::optional<double> edge_at_ms) {
    check_order(last_t_ms_, t_ms, "blink tracker");

    Result res;
    if (prev_ == EyeState::Open && eye == EyeState::Closed) {
        closure_start_ms_ = edge_at_ms.value_or(t_ms);
    } else if (prev_ == EyeState::Closed && eye == EyeState::Open) {
        const BlinkEvent span{*closure_start_ms_, edge_at_ms.value_or(t_ms)};
        const bool is_blink = span.end_ms - span.start_ms < cfg_.blink_max_ms;
        completed_.push_back({span, is_blink});
        if (is_blink)
            ++blink_count_;
        closure_start_ms_.reset();
        res.closure_ended = span;
    }
    prev_ = eye;

    samples_.emplace_back(t_ms, eye == EyeState::Closed);
    if (eye == EyeState::Closed)
        ++closed_count_;

    // Window is the trailing (t - window_ms, t].
    while (samples_.front().first <= t_ms - cfg_.window_ms) {
        if (samples_.front().second)
            --closed_count_;
        samples_.pop_front();
    }
    while (!completed_.empty() && completed_.front().span.end_ms <= t_ms - cfg_.window_ms) {
        if (completed_.front().is_blink)
            --blink_count_;
        completed_.pop_front();
    }

    VigilanceMetrics& m = res.metrics;
    m.window_ms = cfg_.window_ms;
    m.blink_count = blink_count_;
    m.perclos = static_cast<double>(closed_count_) / static_cast<double>(samples_.size());
    m.current_closure_ms = closure_start_ms_ ? t_ms - *closure_start_ms_ : 0.0;
    m.longest_closure_ms = m.current_closure_ms;
    for (const Completed& c : completed_)
        m.longest_closure_ms = std::max(m.longest_closure_ms, c.span.end_ms - c.span.start_ms);
    return res;
}

double compute_perclos(const std::vector<bool>& closed_flags) {
    if (closed_flags.empty())
        throw std::invalid_argument("perclos window is empty");
    const auto closed = std::count(closed_flags.begin(), closed_flags.end(), true);
    return static_cast<double>(closed) / static_cast<double>(closed_flags.size());
}

PeakDetector::PeakDetector(PeakDetectorConfig cfg) : cfg_(cfg) {
    check_positive(cfg.refractory_ms, "refractory_ms");
    check_positive(cfg.rolling_max_ms, "rolling_max_ms");
    if (!(0.0 < cfg.rel_threshold && cfg.rel_threshold < 1.0))
        throw std::invalid_argument("rel_threshold must be in (0, 1)");
}

std::optional<double> PeakDetector::update(const SensorSample& sample) {
    check_order(last_t_ms_, sample.t_ms, "peak detector");

    // Monotonic deque holding the rolling max of the trailing window.
    while (!max_window_.empty() && max_window_.back().second <= sample.ppg_ir)
        max_window_.pop_back();
    max_window_.emplace_back(sample.t_ms, sample.ppg_ir);
    while (max_window_.front().first <= sample.t_ms - cfg_.rolling_max_ms)
        max_window_.pop_front();
    const double rolling_max = max_window_.front().second;

    // The previous sample is a peak once the current one falls below it.
    std::optional<double> peak;
    if (prev1_ && prev2_value_) {
        const auto [pt, pv] = *prev1_;
        const bool local_max = *prev2_value_ <= pv && sample.ppg_ir < pv;
        const bool strong = pv > cfg_.rel_threshold * rolling_max;
        const bool spaced = !last_peak_ms_ || pt - *last_peak_ms_ >= cfg_.refractory_ms;
        if (local_max && strong && spaced) {
            last_peak_ms_ = pt;
            peak = pt;
        }
    }
    prev2_value_ = prev1_ ? std::optional<double>(prev1_->second) : std::nullopt;
    prev1_ = {sample.t_ms, sample.ppg_ir};
    return peak;
}

HeartEstimator::HeartEstimator(HeartEstimatorConfig cfg) : cfg_(cfg) {
    check_positive(cfg.bpm_window_ms, "bpm_window_ms");
    check_positive(cfg.baseline_tau_ms, "baseline_tau_ms");
    if (!(0.0 < cfg.slowdown_ratio && cfg.slowdown_ratio < 1.0))
        throw std::invalid_argument("slowdown_ratio must be in (0, 1)");
}

HeartEstimate HeartEstimator::update(double now_ms, std::optional<double> peak_ms) {
    check_order(last_t_ms_, now_ms, "heart estimator");

    if (peak_ms)
        peaks_.push_back(*peak_ms);
    while (!peaks_.empty() && peaks_.front() <= now_ms - cfg_.bpm_window_ms)
        peaks_.pop_front();

    HeartEstimate est;
    if (peaks_.size() >= 3) {
        std::vector<double> intervals;
        intervals.reserve(peaks_.size() - 1);
        for (std::size_t i = 1; i < peaks_.size(); ++i)
            intervals.push_back(peaks_[i] - peaks_[i - 1]);
        std::sort(intervals.begin(), intervals.end());
        const std::size_t n = intervals.size();
        const double median = n % 2 ? intervals[n / 2]
                                    : 0.5 * (intervals[n / 2 - 1] + intervals[n / 2]);
        const double bpm = 60000.0 / median;
        // Readings outside the physiological band are treated as invalid.
        if (bpm >= 20.0 && bpm <= 250.0) {
            est.valid = true;
            est.bpm = bpm;
        }
    }

    if (est.valid) {
        if (!baseline_bpm_) {
            baseline_bpm_ = est.bpm;
            last_update_ms_ = now_ms;
        }
        est.slowdown = est.bpm < cfg_.slowdown_ratio * *baseline_bpm_;
        // The baseline freezes during a slowdown; only its clock advances.
        if (!est.slowdown) {
            const double dt = now_ms - last_update_ms_;
            if (dt > 0.0)
                *baseline_bpm_ += (1.0 - std::exp(-dt / cfg_.baseline_tau_ms)) *
                                  (est.bpm - *baseline_bpm_);
        }
        last_update_ms_ = now_ms;
        est.baseline_bpm = *baseline_bpm_;
    } else {
        est.baseline_bpm = baseline_bpm_.value_or(0.0);
    }

    last_ = est;
    return est;
}

} // namespace drowsy
