#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "drowsy/detect.hpp"
#include "drowsy/device.hpp"
#include "drowsy/escalate.hpp"

namespace drowsy {

// Everything a run needs: the scenario to drive and every detector/escalation
// tunable. Uses the same line-oriented `key value` format as scenarios with
// one namespaced key per tunable, e.g. `escalate.t_blink_ms 400`.
struct RunConfig {
    std::string scenario_path; // resolved against the config file's directory
    std::optional<std::uint64_t> seed_override;

    EyeClassifierConfig eye;
    BlinkTrackerConfig blink;
    PeakDetectorConfig peak;
    HeartEstimatorConfig heart;
    EscalationConfig escalate;
    SirenPattern siren;

    std::string csv_path; // empty: no trace file unless the CLI overrides

    bool operator==(const RunConfig&) const;

    // Throws ParseError naming the first field outside its valid range.
    void validate() const;

    // Serializes every tunable; parse(to_text()) reproduces equal values.
    std::string to_text() const;
};

// base_dir resolves a relative `scenario` value.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

} // namespace drowsy
