#include "drowsy/device.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace drowsy {

namespace {

constexpr std::size_t kSmsBodyMax = 160;
constexpr int kDigitalPinLimit = 14;
constexpr int kAnalogPinLimit = 6;
constexpr int kPwmPinLimit = 6;
constexpr std::uint32_t kClockHz = 16'000'000;

} // namespace

void validate_gsm_alert(const GsmAlert& alert) {
    const std::string& r = alert.recipient;
    const bool shape_ok = r.size() >= 8 && r.size() <= 16 && r[0] == '+';
    bool digits_ok = shape_ok;
    for (std::size_t i = 1; digits_ok && i < r.size(); ++i)
        digits_ok = r[i] >= '0' && r[i] <= '9';
    if (!shape_ok || !digits_ok)
        throw std::invalid_argument("gsm recipient must be '+' followed by 7-15 digits");

    if (alert.body.size() > kSmsBodyMax)
        throw std::invalid_argument("gsm body exceeds 160 characters");
    for (const char c : alert.body)
        if (c < 0x20 || c > 0x7e)
            throw std::invalid_argument("gsm body must be printable ASCII");
}

std::vector<std::uint8_t> encode_gsm_at(const GsmAlert& alert) {
    validate_gsm_alert(alert);

    std::string bytes;
    bytes.reserve(32 + alert.recipient.size() + alert.body.size());
    bytes += "AT+CMGF=1\r";
    bytes += "AT+CMGS=\"";
    bytes += alert.recipient;
    bytes += "\"\r";
    bytes += alert.body;
    bytes += '\x1a';
    return {bytes.begin(), bytes.end()};
}

bool buzzer_signal(const SirenPattern& pattern, double t_ms) {
    if (pattern.period_ms <= 0.0 || pattern.duty <= 0.0 || pattern.duty > 1.0)
        throw std::invalid_argument("siren pattern: period must be > 0 and duty in (0, 1]");
    return std::fmod(t_ms, pattern.period_ms) < pattern.duty * pattern.period_ms;
}

BoardProfile BoardProfile::system_default() {
    BoardProfile p;
    p.digital_pins_used = {4, 7, 8, 9}; // buzzer, eye IR LED, finger IR LED, motor PWM
    p.pwm_pins_used = {9};
    p.analog_pins_used = {0, 1}; // eye and finger phototransistors
    return p;
}

std::vector<std::string> validate_board(const BoardProfile& profile) {
    std::vector<std::string> violations;
    const auto over = [&](const char* what, std::size_t used, int limit) {
        if (used > static_cast<std::size_t>(limit))
            violations.push_back(std::string(what) + " " + std::to_string(used) + " > " +
                                 std::to_string(limit));
    };
    over("digital", profile.digital_pins_used.size(), kDigitalPinLimit);
    over("analog", profile.analog_pins_used.size(), kAnalogPinLimit);
    over("pwm", profile.pwm_pins_used.size(), kPwmPinLimit);

    for (const int pin : profile.pwm_pins_used)
        if (!profile.digital_pins_used.contains(pin)) {
            violations.push_back("pwm pin " + std::to_string(pin) + " not among digital pins");
            break;
        }
    if (profile.clock_hz != kClockHz)
        violations.push_back("clock " + std::to_string(profile.clock_hz) +
                             " != " + std::to_string(kClockHz));
    return violations;
}

} // namespace drowsy
