#include "drowsy/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "drowsy/errors.hpp"
#include "kv_lines.hpp"

namespace drowsy {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

double parse_f64(const std::string& tok, int line, const std::string& key) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size())
        fail(line, "invalid number for " + key + ": '" + tok + "'");
    return v;
}

int parse_int(const std::string& tok, int line, const std::string& key) {
    int v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        fail(line, "invalid integer for " + key + ": '" + tok + "'");
    return v;
}

bool parse_bool(const std::string& tok, int line, const std::string& key) {
    if (tok == "true" || tok == "1")
        return true;
    if (tok == "false" || tok == "0")
        return false;
    fail(line, "invalid boolean for " + key + ": '" + tok + "'");
}

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, p};
}

void require(bool ok, const std::string& message) {
    if (!ok)
        throw ParseError(message);
}

} // namespace

bool RunConfig::operator==(const RunConfig& o) const {
    return scenario_path == o.scenario_path && seed_override == o.seed_override &&
           eye == o.eye && blink == o.blink && peak == o.peak && heart == o.heart &&
           escalate == o.escalate && siren == o.siren && csv_path == o.csv_path;
}

void RunConfig::validate() const {
    require(!scenario_path.empty(), "config: missing required key 'scenario'");
    require(0.0 < eye.close_threshold && eye.close_threshold < eye.open_threshold &&
                eye.open_threshold < 1.0,
            "detect.close_threshold/detect.open_threshold must satisfy 0 < close < open < 1");
    require(eye.debounce_ms >= 0.0, "detect.debounce_ms must be >= 0");
    require(blink.blink_max_ms > 0.0, "detect.blink_max_ms must be > 0");
    require(blink.window_ms > 0.0, "detect.window_ms must be > 0");
    require(peak.refractory_ms > 0.0, "detect.refractory_ms must be > 0");
    require(0.0 < peak.rel_threshold && peak.rel_threshold < 1.0,
            "detect.rel_threshold must be in (0, 1)");
    require(peak.rolling_max_ms > 0.0, "detect.rolling_max_ms must be > 0");
    require(heart.bpm_window_ms > 0.0, "detect.bpm_window_ms must be > 0");
    require(heart.baseline_tau_ms > 0.0, "detect.baseline_tau_ms must be > 0");
    require(0.0 < heart.slowdown_ratio && heart.slowdown_ratio < 1.0,
            "detect.slowdown_ratio must be in (0, 1)");
    require(escalate.t_blink_ms > 0.0, "escalate.t_blink_ms must be > 0");
    require(escalate.t_persist_ms > 0.0, "escalate.t_persist_ms must be > 0");
    require(escalate.t_recover_ms > 0.0, "escalate.t_recover_ms must be > 0");
    require(escalate.heart_dropout_ms > 0.0, "escalate.heart_dropout_ms must be > 0");
    require(escalate.vibrator_duty >= 0 && escalate.vibrator_duty <= 255,
            "device.vibrator_duty must be in [0, 255]");
    require(siren.period_ms > 0.0, "device.siren_period_ms must be > 0");
    require(0.0 < siren.duty && siren.duty <= 1.0, "device.siren_duty must be in (0, 1]");
    try {
        validate_gsm_alert(escalate.alert);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("gsm.recipient/gsm.body: ") + e.what());
    }
}

std::string RunConfig::to_text() const {
    std::ostringstream out;
    out << "scenario " << scenario_path << "\n";
    out << "detect.close_threshold " << format_double(eye.close_threshold) << "\n";
    out << "detect.open_threshold " << format_double(eye.open_threshold) << "\n";
    out << "detect.debounce_ms " << format_double(eye.debounce_ms) << "\n";
    out << "detect.blink_max_ms " << format_double(blink.blink_max_ms) << "\n";
    out << "detect.window_ms " << format_double(blink.window_ms) << "\n";
    out << "detect.refractory_ms " << format_double(peak.refractory_ms) << "\n";
    out << "detect.rel_threshold " << format_double(peak.rel_threshold) << "\n";
    out << "detect.rolling_max_ms " << format_double(peak.rolling_max_ms) << "\n";
    out << "detect.bpm_window_ms " << format_double(heart.bpm_window_ms) << "\n";
    out << "detect.baseline_tau_ms " << format_double(heart.baseline_tau_ms) << "\n";
    out << "detect.slowdown_ratio " << format_double(heart.slowdown_ratio) << "\n";
    out << "escalate.t_blink_ms " << format_double(escalate.t_blink_ms) << "\n";
    out << "escalate.t_persist_ms " << format_double(escalate.t_persist_ms) << "\n";
    out << "escalate.t_recover_ms " << format_double(escalate.t_recover_ms) << "\n";
    out << "escalate.heart_dropout_ms " << format_double(escalate.heart_dropout_ms) << "\n";
    out << "escalate.slowdown_required " << (escalate.slowdown_required ? "true" : "false")
        << "\n";
    out << "device.vibrator_duty " << escalate.vibrator_duty << "\n";
    out << "device.siren_period_ms " << format_double(siren.period_ms) << "\n";
    out << "device.siren_duty " << format_double(siren.duty) << "\n";
    out << "gsm.recipient " << escalate.alert.recipient << "\n";
    out << "gsm.body " << escalate.alert.body << "\n";
    if (!csv_path.empty())
        out << "output.csv " << csv_path << "\n";
    return out.str();
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
    RunConfig cfg;
    cfg.escalate.alert = {"+15551234567", "DROWSY DRIVER ALERT"};

    for (const detail::Line& line : detail::scan_lines(text)) {
        const std::string& key = line.tokens.front();
        const std::string& val = line.tokens.size() > 1 ? line.tokens[1] : line.rest;
        const int n = line.number;
        if (line.tokens.size() < 2 && line.rest.empty())
            fail(n, "missing value for key '" + key + "'");

        if (key == "scenario") {
            std::filesystem::path p = line.rest;
            cfg.scenario_path = (p.is_absolute() ? p : base_dir / p).lexically_normal().string();
        } else if (key == "detect.close_threshold") {
            cfg.eye.close_threshold = parse_f64(val, n, key);
        } else if (key == "detect.open_threshold") {
            cfg.eye.open_threshold = parse_f64(val, n, key);
        } else if (key == "detect.debounce_ms") {
            cfg.eye.debounce_ms = parse_f64(val, n, key);
        } else if (key == "detect.blink_max_ms") {
            cfg.blink.blink_max_ms = parse_f64(val, n, key);
        } else if (key == "detect.window_ms") {
            cfg.blink.window_ms = parse_f64(val, n, key);
        } else if (key == "detect.refractory_ms") {
            cfg.peak.refractory_ms = parse_f64(val, n, key);
        } else if (key == "detect.rel_threshold") {
            cfg.peak.rel_threshold = parse_f64(val, n, key);
        } else if (key == "detect.rolling_max_ms") {
            cfg.peak.rolling_max_ms = parse_f64(val, n, key);
        } else if (key == "detect.bpm_window_ms") {
            cfg.heart.bpm_window_ms = parse_f64(val, n, key);
        } else if (key == "detect.baseline_tau_ms") {
            cfg.heart.baseline_tau_ms = parse_f64(val, n, key);
        } else if (key == "detect.slowdown_ratio") {
            cfg.heart.slowdown_ratio = parse_f64(val, n, key);
        } else if (key == "escalate.t_blink_ms") {
            cfg.escalate.t_blink_ms = parse_f64(val, n, key);
        } else if (key == "escalate.t_persist_ms") {
            cfg.escalate.t_persist_ms = parse_f64(val, n, key);
        } else if (key == "escalate.t_recover_ms") {
            cfg.escalate.t_recover_ms = parse_f64(val, n, key);
        } else if (key == "escalate.heart_dropout_ms") {
            cfg.escalate.heart_dropout_ms = parse_f64(val, n, key);
        } else if (key == "escalate.slowdown_required") {
            cfg.escalate.slowdown_required = parse_bool(val, n, key);
        } else if (key == "device.vibrator_duty") {
            cfg.escalate.vibrator_duty = parse_int(val, n, key);
        } else if (key == "device.siren_period_ms") {
            cfg.siren.period_ms = parse_f64(val, n, key);
        } else if (key == "device.siren_duty") {
            cfg.siren.duty = parse_f64(val, n, key);
        } else if (key == "gsm.recipient") {
            cfg.escalate.alert.recipient = val;
        } else if (key == "gsm.body") {
            cfg.escalate.alert.body = line.rest;
        } else if (key == "output.csv") {
            std::filesystem::path p = line.rest;
            cfg.csv_path = (p.is_absolute() ? p : base_dir / p).lexically_normal().string();
        } else {
            fail(n, "unknown config key '" + key + "'");
        }
    }

    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    return parse_config(read_text_file(path), path.parent_path());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw IoError("read failed for " + path.string());
    return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out)
        throw IoError("write failed for " + path.string());
}

} // namespace drowsy
