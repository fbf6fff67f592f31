#pragma once

#include <cstdint>
#include <vector>

#include "drowsy/scenario.hpp"

namespace drowsy {

// Reflectance levels of the eye IR channel. Pupils reflect the emitter,
// eyelids do not, so the closed level sits far below the open one.
inline constexpr double kEyeOpenLevel = 0.85;
inline constexpr double kEyeClosedLevel = 0.10;

// PPG pulse shape parameters (fractions of one cardiac cycle).
inline constexpr double kPpgBaseline = 0.2;
inline constexpr double kPpgPeak = 0.8;
inline constexpr double kPpgLobeCenter = 0.15;
inline constexpr double kPpgLobeWidth = 0.3;

// One fixed-rate reading of both IR channels, each normalized to [0,1].
struct SensorSample {
    double t_ms = 0.0;
    double eye_ir = 0.0;
    double ppg_ir = 0.0;
};

struct ClosureSpan {
    double start_ms = 0.0;
    double end_ms = 0.0;
};

// Per-sample truth paired with a generated stream, used as the detection
// oracle in tests and reports.
struct GroundTruth {
    std::vector<std::uint8_t> eye_closed; // 0/1 per sample
    std::vector<double> true_bpm;         // piecewise constant
    std::vector<ClosureSpan> blink_events; // maximal scripted closure spans
};

struct Generation {
    std::vector<SensorSample> samples;
    GroundTruth truth;
};

// Normalized PPG intensity at a cycle phase in [0,1): one raised-cosine
// systolic lobe of width kPpgLobeWidth centered at kPpgLobeCenter on a flat
// baseline. Continuous and periodic.
double ppg_waveform(double phase);

// Number of samples a scenario produces: floor(duration_ms * rate / 1000).
std::size_t sample_count(const Scenario& sc);

// Synthesizes the sensor streams plus ground truth. Every sample is a pure
// function of (scenario, sample index), so the parallel kernel and the
// serial reference below produce bit-identical output; generate() runs the
// OpenMP kernel.
Generation generate(const Scenario& sc);
Generation generate_serial(const Scenario& sc);

} // namespace drowsy
