#include "drowsy/signal_gen.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "drowsy/noise.hpp"

namespace drowsy {

namespace {

constexpr std::uint64_t kEyeStream = 0;
constexpr std::uint64_t kPpgStream = 1;

struct HrSegment {
    double start_ms;
    double bpm;
    double phase0; // accumulated cycles at start_ms
};

struct SigmaSegment {
    double start_ms;
    double sigma;
};

// Everything sample_at() needs, precomputed once so each sample is an
// independent lookup (the prerequisite for the parallel kernel).
struct Prepared {
    double step_ms = 0.0;
    std::size_t count = 0;
    std::uint64_t seed = 0;
    std::vector<ClosureSpan> closures; // merged, ordered
    std::vector<ClosureSpan> dropouts;
    std::vector<HrSegment> hr;
    std::vector<SigmaSegment> sigma;
};

bool in_spans(const std::vector<ClosureSpan>& spans, double t_ms) {
    auto it = std::upper_bound(spans.begin(), spans.end(), t_ms,
                               [](double t, const ClosureSpan& s) { return t < s.start_ms; });
    if (it == spans.begin())
        return false;
    --it;
    return t_ms < it->end_ms;
}

template <typename Seg>
const Seg& segment_at(const std::vector<Seg>& segs, double t_ms) {
    auto it = std::upper_bound(segs.begin(), segs.end(), t_ms,
                               [](double t, const Seg& s) { return t < s.start_ms; });
    return *(it - 1); // segs always starts at t = 0
}

// Collects span events of one family into merged maximal spans. Touching
// events (end == next start) fuse; the signal cannot tell them apart.
std::vector<ClosureSpan> collect_spans(const Scenario& sc, bool eye_family) {
    std::vector<ClosureSpan> spans;
    for (const ScenarioEvent& ev : sc.events) {
        const bool in_family = eye_family ? (ev.kind == EventKind::Blink ||
                                             ev.kind == EventKind::Microsleep ||
                                             ev.kind == EventKind::EyesClosed)
                                          : ev.kind == EventKind::PpgDropout;
        if (!in_family)
            continue;
        const double start = static_cast<double>(ev.at_ms);
        const double end = static_cast<double>(ev.at_ms + ev.duration_ms);
        if (!spans.empty() && start <= spans.back().end_ms)
            spans.back().end_ms = std::max(spans.back().end_ms, end);
        else
            spans.push_back({start, end});
    }
    return spans;
}

Prepared prepare(const Scenario& sc) {
    Prepared p;
    p.step_ms = 1000.0 / sc.sample_rate_hz;
    p.count = sample_count(sc);
    p.seed = sc.seed;
    p.closures = collect_spans(sc, /*eye_family=*/true);
    p.dropouts = collect_spans(sc, /*eye_family=*/false);

    p.hr.push_back({0.0, sc.initial_bpm, 0.0});
    p.sigma.push_back({0.0, 0.0});
    for (const ScenarioEvent& ev : sc.events) {
        if (ev.kind == EventKind::SetHeartRate) {
            const HrSegment& prev = p.hr.back();
            const double at = static_cast<double>(ev.at_ms);
            const double phase0 = prev.phase0 + (at - prev.start_ms) * prev.bpm / 60000.0;
            if (at == prev.start_ms)
                p.hr.back() = {at, ev.value, prev.phase0};
            else
                p.hr.push_back({at, ev.value, phase0});
        } else if (ev.kind == EventKind::SetNoise) {
            const double at = static_cast<double>(ev.at_ms);
            if (at == p.sigma.back().start_ms)
                p.sigma.back().sigma = ev.value;
            else
                p.sigma.push_back({at, ev.value});
        }
    }
    return p;
}

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

struct SamplePoint {
    SensorSample sample;
    bool closed;
    double bpm;
};

// Pure function of (prepared scenario, index): both generate paths call this.
SamplePoint sample_at(const Prepared& p, std::size_t i) {
    const double t = static_cast<double>(i) * p.step_ms;
    const bool closed = in_spans(p.closures, t);
    const double sigma = segment_at(p.sigma, t).sigma;

    const double eye_base = closed ? kEyeClosedLevel : kEyeOpenLevel;
    const double eye = clamp_unit(eye_base + sigma * gaussian_at(p.seed, kEyeStream, i));

    const HrSegment& hr = segment_at(p.hr, t);
    const double phase = hr.phase0 + (t - hr.start_ms) * hr.bpm / 60000.0;
    const double ppg_base = in_spans(p.dropouts, t)
                                ? kPpgBaseline
                                : ppg_waveform(phase - std::floor(phase));
    const double ppg = clamp_unit(ppg_base + sigma * gaussian_at(p.seed, kPpgStream, i));

    return {{t, eye, ppg}, closed, hr.bpm};
}

Generation make_output(const Prepared& p, const Scenario& sc) {
    Generation g;
    g.samples.resize(p.count);
    g.truth.eye_closed.resize(p.count);
    g.truth.true_bpm.resize(p.count);
    g.truth.blink_events = collect_spans(sc, /*eye_family=*/true);
    return g;
}

void fill_one(Generation& g, const Prepared& p, std::size_t i) {
    const SamplePoint pt = sample_at(p, i);
    g.samples[i] = pt.sample;
    g.truth.eye_closed[i] = pt.closed ? 1 : 0;
    g.truth.true_bpm[i] = pt.bpm;
}

} // namespace

double ppg_waveform(double phase) {
    // Circular distance from the lobe center.
    double d = std::fabs(phase - kPpgLobeCenter);
    d = std::min(d, 1.0 - d);
    const double half_width = kPpgLobeWidth / 2.0;
    if (d >= half_width)
        return kPpgBaseline;
    return kPpgBaseline +
           (kPpgPeak - kPpgBaseline) * 0.5 * (1.0 + std::cos(M_PI * d / half_width));
}

std::size_t sample_count(const Scenario& sc) {
    return static_cast<std::size_t>(static_cast<std::uint64_t>(sc.duration_ms) *
                                    static_cast<std::uint64_t>(sc.sample_rate_hz) / 1000u);
}

Generation generate(const Scenario& sc) {
    const Prepared p = prepare(sc);
    Generation g = make_output(p, sc);
    const std::int64_t n = static_cast<std::int64_t>(p.count);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
        fill_one(g, p, static_cast<std::size_t>(i));
    return g;
}

Generation generate_serial(const Scenario& sc) {
    const Prepared p = prepare(sc);
    Generation g = make_output(p, sc);
    for (std::size_t i = 0; i < p.count; ++i)
        fill_one(g, p, i);
    return g;
}

} // namespace drowsy
