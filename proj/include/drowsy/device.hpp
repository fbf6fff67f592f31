#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace drowsy {

// Text-mode SMS alert. Recipient is '+' followed by 7-15 digits; body is
// plain printable ASCII, at most 160 characters.
struct GsmAlert {
    std::string recipient;
    std::string body;

    bool operator==(const GsmAlert&) const = default;
};

// Throws std::invalid_argument when the alert violates its constraints.
void validate_gsm_alert(const GsmAlert& alert);

// Byte sequence the modem receives, exactly:
//   AT+CMGF=1<CR> AT+CMGS="<recipient>"<CR> <body> <0x1A>
std::vector<std::uint8_t> encode_gsm_at(const GsmAlert& alert);

struct SirenPattern {
    double period_ms = 500.0;
    double duty = 0.5; // on-fraction of each period, (0,1]

    bool operator==(const SirenPattern&) const = default;
};

// On/off level of the pulsed siren at time t_ms (t_ms >= 0).
bool buzzer_signal(const SirenPattern& pattern, double t_ms);

// Pin budget of the target board (Arduino Uno class: 14 digital pins of
// which 6 are PWM-capable, 6 analog inputs, 16 MHz clock).
struct BoardProfile {
    std::set<int> digital_pins_used;
    std::set<int> analog_pins_used;
    std::set<int> pwm_pins_used; // must be a subset of digital_pins_used
    std::uint32_t clock_hz = 16'000'000;

    // Pins the simulated system occupies: two digital IR LED drivers, the
    // buzzer pin, one PWM pin for the motor driver, two analog inputs for
    // the phototransistors.
    static BoardProfile system_default();
};

// Every violated constraint, each with the limit and the observed count;
// empty means the profile fits the board.
std::vector<std::string> validate_board(const BoardProfile& profile);

} // namespace drowsy
