#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace drowsy {

enum class EventKind {
    Blink,        // brief eye closure
    Microsleep,   // involuntary closure, typically 0.5-15 s
    EyesClosed,   // scripted sustained closure
    SetHeartRate, // step change of the true heart rate
    SetNoise,     // step change of the additive noise sigma
    PpgDropout    // finger sensor detached: PPG flatlines at baseline
};

struct ScenarioEvent {
    std::int64_t at_ms = 0;
    EventKind kind = EventKind::Blink;
    std::int64_t duration_ms = 0; // Blink/Microsleep/EyesClosed/PpgDropout
    double value = 0.0;           // SetHeartRate bpm or SetNoise sigma
    int line = 0;                 // source line, for diagnostics
};

// A scripted driver-behavior timeline. Events are kept sorted by at_ms and
// eye-closure events never overlap each other.
struct Scenario {
    std::int64_t duration_ms = 0;
    int sample_rate_hz = 100;
    std::uint64_t seed = 0;
    double initial_bpm = 72.0;
    std::vector<ScenarioEvent> events;
};

// Parses the line-oriented scenario format:
//
//   duration <ms>
//   rate <hz>
//   seed <u64>
//   bpm <initial>
//   event <at_ms> blink <duration_ms>
//   event <at_ms> microsleep <duration_ms>
//   event <at_ms> eyesclosed <duration_ms>
//   event <at_ms> ppgdropout <duration_ms>
//   event <at_ms> sethr <bpm>
//   event <at_ms> setnoise <sigma>
//
// '#' starts a comment. `duration` and `rate` are required; `seed` defaults
// to 0 and `bpm` to 72. Throws ParseError with the offending line number.
Scenario parse_scenario(std::string_view text);

// Validates a programmatically built Scenario (same checks the parser
// applies) and normalizes event ordering. Throws ParseError on violation.
void validate_scenario(Scenario& sc);

std::string_view event_kind_name(EventKind kind);

} // namespace drowsy
