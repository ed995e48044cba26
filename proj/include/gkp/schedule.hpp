#ifndef GKP_SCHEDULE_HPP
#define GKP_SCHEDULE_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gkp/protocol.hpp"

namespace gkp {

enum class PulseKind { pi_half, pi, displacement, measure, wait };

std::string_view to_string(PulseKind kind) noexcept;
PulseKind parse_pulse_kind(std::string_view text);

/// One pulse-level instruction. Pulses are instantaneous; physical time lives
/// in Wait ops. Times are in trap periods.
struct PulseOp {
    PulseKind kind = PulseKind::wait;
    double time = 0.0;
    double magnitude = 0.0;  ///< displacement, units of alpha
    double phase = 0.0;      ///< optical phase of pulses, radians
    double duration = 0.0;   ///< wait length, trap periods
    int bright_state = 1;    ///< measure: qubit state that fluoresces

    bool operator==(const PulseOp&) const = default;
};

struct PulseSchedule {
    ProtocolConfig config;
    std::vector<PulseOp> ops;
    double total_duration = 0.0;

    bool operator==(const PulseSchedule&) const = default;
};

/// Per iteration k = 1..n, starting at t = k-1:
///   PiHalf(0), Displacement(2^{k-1}, pi), Pi, Displacement(2^{k-1}, 0),
///   PiHalf(pi), Wait(1), Measure at t = k.
/// Throws DomainError for n = 0 or an invalid config.
PulseSchedule compile(const ProtocolConfig& config);

/// Structural violations; empty when the schedule is well formed.
std::vector<std::string> validate(const PulseSchedule& schedule);

enum class ScheduleFormat { json, text };

/// Throws DomainError if validate() reports anything.
std::string emit(const PulseSchedule& schedule, ScheduleFormat format);

/// Inverse of emit(.., json). Throws ParseError.
PulseSchedule parse_schedule(const std::string& json);

/// Runs the schedule on squeezed vacuum with the abstract pulse semantics:
///   PiHalf(phi): H for phi = 0, H X for phi = pi
///   Pi: X
///   Displacement(m, phi): moves the |1> branch by m alpha cos(phi)
///   Measure: projects onto `outcomes[i]` (1 = bright state)
/// A bit-0 config applies the final +alpha offset of the logical frame.
OutcomeRecord interpret(const PulseSchedule& schedule, std::span<const int> outcomes);

}  // namespace gkp

#endif  // GKP_SCHEDULE_HPP
