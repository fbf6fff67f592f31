#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "drowsy/signal_gen.hpp"

namespace drowsy {

enum class EyeState { Open, Closed };

// Hysteresis thresholds with a dwell requirement: a crossing must hold for
// debounce_ms before the state flips, which keeps noise from chattering the
// classifier near a single boundary.
struct EyeClassifierConfig {
    double close_threshold = 0.40;
    double open_threshold = 0.60;
    double debounce_ms = 30.0;

    bool operator==(const EyeClassifierConfig&) const = default;
};

class EyeClassifier {
public:
    explicit EyeClassifier(EyeClassifierConfig cfg = {});

    // Consumes one sample (time-ordered) and returns the classified state.
    EyeState update(const SensorSample& sample);
    EyeState state() const { return state_; }

    // When the last update() flipped the state, the time the flip actually
    // began: the first sample of the sustained crossing, not the sample that
    // completed the dwell. Empty otherwise.
    std::optional<double> last_edge_ms() const { return last_edge_ms_; }

private:
    EyeClassifierConfig cfg_;
    EyeState state_ = EyeState::Open;
    std::optional<double> pending_since_ms_;
    std::optional<double> last_edge_ms_;
    double last_t_ms_ = -1.0;
};

struct BlinkEvent {
    double start_ms = 0.0;
    double end_ms = 0.0;
};

struct VigilanceMetrics {
    double window_ms = 60000.0;
    int blink_count = 0;              // blinks completed inside the window
    double perclos = 0.0;             // closed-sample fraction, [0,1]
    double current_closure_ms = 0.0;  // 0 while open
    double longest_closure_ms = 0.0;  // longest closure seen in the window
};

struct BlinkTrackerConfig {
    double blink_max_ms = 400.0; // closures at or above this are not blinks
    double window_ms = 60000.0;  // sliding metrics window

    bool operator==(const BlinkTrackerConfig&) const = default;
};

// Turns the classified eye state into closure spans and windowed vigilance
// metrics. Every completed closure is reported; only closures shorter than
// blink_max_ms count toward blink_count.
class BlinkTracker {
public:
    struct Result {
        std::optional<BlinkEvent> closure_ended;
        VigilanceMetrics metrics;
    };

    explicit BlinkTracker(BlinkTrackerConfig cfg = {});

    // edge_at_ms backdates a state flip to when the crossing began (see
    // EyeClassifier::last_edge_ms); closure boundaries use it when given.
    Result update(double t_ms, EyeState eye, std::optional<double> edge_at_ms = {});

private:
    struct Completed {
        BlinkEvent span;
        bool is_blink = false;
    };

    BlinkTrackerConfig cfg_;
    EyeState prev_ = EyeState::Open;
    std::optional<double> closure_start_ms_;
    std::deque<std::pair<double, bool>> samples_; // (t, closed)
    std::size_t closed_count_ = 0;
    std::deque<Completed> completed_;
    int blink_count_ = 0;
    double last_t_ms_ = -1.0;
};

// Closed-sample fraction of a window. Throws std::invalid_argument on an
// empty window.
double compute_perclos(const std::vector<bool>& closed_flags);

struct PeakDetectorConfig {
    double refractory_ms = 250.0;  // minimum spacing between reported peaks
    double rel_threshold = 0.6;    // fraction of the rolling max, in (0,1)
    double rolling_max_ms = 2000.0;

    bool operator==(const PeakDetectorConfig&) const = default;
};

// Streams PPG samples and reports systolic peaks: local maxima that exceed
// rel_threshold x rolling max and respect the refractory spacing.
class PeakDetector {
public:
    explicit PeakDetector(PeakDetectorConfig cfg = {});

    // Returns the peak time when the previous sample is confirmed a peak.
    std::optional<double> update(const SensorSample& sample);

private:
    PeakDetectorConfig cfg_;
    std::deque<std::pair<double, double>> max_window_; // decreasing values
    std::optional<std::pair<double, double>> prev1_;   // (t, value)
    std::optional<double> prev2_value_;
    std::optional<double> last_peak_ms_;
    double last_t_ms_ = -1.0;
};

struct HeartEstimate {
    double bpm = 0.0;
    double baseline_bpm = 0.0;
    bool slowdown = false;
    bool valid = false; // needs >= 3 peaks in the window and a plausible rate
};

struct HeartEstimatorConfig {
    double bpm_window_ms = 10000.0;   // inter-peak intervals kept this long
    double baseline_tau_ms = 60000.0; // EMA time constant of the baseline
    double slowdown_ratio = 0.9;      // slowdown when bpm < ratio * baseline

    bool operator==(const HeartEstimatorConfig&) const = default;
};

// BPM from the median inter-peak interval, plus a slow-moving baseline that
// freezes while a slowdown is flagged so a drowsy stretch cannot drag the
// reference down with it.
class HeartEstimator {
public:
    explicit HeartEstimator(HeartEstimatorConfig cfg = {});

    HeartEstimate update(double now_ms, std::optional<double> peak_ms);
    const HeartEstimate& current() const { return last_; }

private:
    HeartEstimatorConfig cfg_;
    std::deque<double> peaks_;
    std::optional<double> baseline_bpm_;
    double last_update_ms_ = 0.0;
    HeartEstimate last_;
    double last_t_ms_ = -1.0;
};

} // namespace drowsy
