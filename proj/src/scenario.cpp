#include "drowsy/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <string>

#include "drowsy/errors.hpp"
#include "kv_lines.hpp"

namespace drowsy {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

std::int64_t parse_i64(const std::string& tok, int line, const char* what) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        fail(line, std::string("invalid integer for ") + what + ": '" + tok + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& tok, int line, const char* what) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        fail(line, std::string("invalid unsigned integer for ") + what + ": '" + tok + "'");
    return v;
}

double parse_f64(const std::string& tok, int line, const char* what) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || tok.empty())
        fail(line, std::string("invalid number for ") + what + ": '" + tok + "'");
    return v;
}

bool is_eye_event(EventKind kind) {
    return kind == EventKind::Blink || kind == EventKind::Microsleep ||
           kind == EventKind::EyesClosed;
}

std::int64_t event_end_ms(const ScenarioEvent& ev) {
    switch (ev.kind) {
    case EventKind::Blink:
    case EventKind::Microsleep:
    case EventKind::EyesClosed:
    case EventKind::PpgDropout:
        return ev.at_ms + ev.duration_ms;
    default:
        return ev.at_ms;
    }
}

void check_event_ranges(const ScenarioEvent& ev, std::int64_t duration_ms) {
    const int line = ev.line;
    if (ev.at_ms < 0)
        fail(line, "event time must be >= 0");
    switch (ev.kind) {
    case EventKind::Blink:
    case EventKind::Microsleep:
    case EventKind::EyesClosed:
    case EventKind::PpgDropout:
        if (ev.duration_ms <= 0)
            fail(line, "event duration must be > 0");
        break;
    case EventKind::SetHeartRate:
        if (ev.value < 20.0 || ev.value > 250.0)
            fail(line, "sethr bpm must be in [20, 250]");
        break;
    case EventKind::SetNoise:
        if (ev.value < 0.0)
            fail(line, "setnoise sigma must be >= 0");
        break;
    }
    if (event_end_ms(ev) > duration_ms)
        fail(line, "event runs past the scenario duration");
}

// Overlap check for one family of span events (eye closures, dropouts).
void check_no_overlap(const std::vector<ScenarioEvent>& events, bool eye_family) {
    const ScenarioEvent* prev = nullptr;
    for (const ScenarioEvent& ev : events) {
        const bool in_family = eye_family ? is_eye_event(ev.kind)
                                          : ev.kind == EventKind::PpgDropout;
        if (!in_family)
            continue;
        if (prev && ev.at_ms < event_end_ms(*prev))
            fail(ev.line, std::string(eye_family ? "eye" : "ppgdropout") +
                              " event overlaps the event at line " +
                              std::to_string(prev->line));
        prev = &ev;
    }
}

} // namespace

std::string_view event_kind_name(EventKind kind) {
    switch (kind) {
    case EventKind::Blink: return "blink";
    case EventKind::Microsleep: return "microsleep";
    case EventKind::EyesClosed: return "eyesclosed";
    case EventKind::SetHeartRate: return "sethr";
    case EventKind::SetNoise: return "setnoise";
    case EventKind::PpgDropout: return "ppgdropout";
    }
    return "?";
}

Scenario parse_scenario(std::string_view text) {
    Scenario sc;
    bool have_duration = false, have_rate = false, have_seed = false, have_bpm = false;

    for (const detail::Line& line : detail::scan_lines(text)) {
        const std::string& key = line.tokens.front();
        const int n = line.number;

        if (key == "duration" || key == "rate" || key == "seed" || key == "bpm") {
            if (line.tokens.size() != 2)
                fail(n, "expected exactly one value after '" + key + "'");
            const std::string& val = line.tokens[1];
            if (key == "duration") {
                if (have_duration) fail(n, "duplicate key 'duration'");
                sc.duration_ms = parse_i64(val, n, "duration");
                have_duration = true;
            } else if (key == "rate") {
                if (have_rate) fail(n, "duplicate key 'rate'");
                const std::int64_t rate = parse_i64(val, n, "rate");
                if (rate < 1 || rate > 100000)
                    fail(n, "rate must be in [1, 100000] Hz");
                sc.sample_rate_hz = static_cast<int>(rate);
                have_rate = true;
            } else if (key == "seed") {
                if (have_seed) fail(n, "duplicate key 'seed'");
                sc.seed = parse_u64(val, n, "seed");
                have_seed = true;
            } else {
                if (have_bpm) fail(n, "duplicate key 'bpm'");
                sc.initial_bpm = parse_f64(val, n, "bpm");
                have_bpm = true;
            }
        } else if (key == "event") {
            if (line.tokens.size() != 4)
                fail(n, "expected 'event <at_ms> <kind> <value>'");
            ScenarioEvent ev;
            ev.line = n;
            ev.at_ms = parse_i64(line.tokens[1], n, "event time");
            const std::string& kind = line.tokens[2];
            const std::string& val = line.tokens[3];
            if (kind == "blink" || kind == "microsleep" || kind == "eyesclosed" ||
                kind == "ppgdropout") {
                ev.kind = kind == "blink"        ? EventKind::Blink
                          : kind == "microsleep" ? EventKind::Microsleep
                          : kind == "eyesclosed" ? EventKind::EyesClosed
                                                 : EventKind::PpgDropout;
                ev.duration_ms = parse_i64(val, n, "event duration");
            } else if (kind == "sethr") {
                ev.kind = EventKind::SetHeartRate;
                ev.value = parse_f64(val, n, "sethr bpm");
            } else if (kind == "setnoise") {
                ev.kind = EventKind::SetNoise;
                ev.value = parse_f64(val, n, "setnoise sigma");
            } else {
                fail(n, "unknown event kind '" + kind + "'");
            }
            sc.events.push_back(ev);
        } else {
            fail(n, "unknown key '" + key + "'");
        }
    }

    if (!have_duration)
        throw ParseError("missing required key 'duration'");
    if (!have_rate)
        throw ParseError("missing required key 'rate'");

    validate_scenario(sc);
    return sc;
}

void validate_scenario(Scenario& sc) {
    if (sc.duration_ms < 0 || sc.duration_ms > 604'800'000) // a week is plenty
        throw ParseError("duration must be in [0, 604800000] ms");
    if (sc.sample_rate_hz <= 0 || sc.sample_rate_hz > 100000)
        throw ParseError("rate must be in [1, 100000] Hz");
    if (sc.initial_bpm < 20.0 || sc.initial_bpm > 250.0)
        throw ParseError("bpm must be in [20, 250]");

    // Normalize ordering; parse order breaks ties so same-time events apply
    // in file order.
    std::stable_sort(sc.events.begin(), sc.events.end(),
                     [](const ScenarioEvent& a, const ScenarioEvent& b) {
                         return a.at_ms < b.at_ms;
                     });

    for (const ScenarioEvent& ev : sc.events)
        check_event_ranges(ev, sc.duration_ms);
    check_no_overlap(sc.events, /*eye_family=*/true);
    check_no_overlap(sc.events, /*eye_family=*/false);
}

} // namespace drowsy
