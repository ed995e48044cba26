#ifndef GKP_PROTOCOL_HPP
#define GKP_PROTOCOL_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "gkp/comb.hpp"

namespace gkp {

enum class PrepMode { postselect, deterministic, sample };

std::string_view to_string(PrepMode mode) noexcept;
PrepMode parse_prep_mode(std::string_view text);

inline constexpr int kMaxIterations = 16;
inline constexpr int kMaxEnumeratedIterations = 12;

struct ProtocolConfig {
    double alpha = 1.2533141373155001;  // sqrt(pi/2)
    double delta = 0.15;
    int iterations = 3;
    int bit = 1;
    Quadrature axis = Quadrature::position;
    PrepMode mode = PrepMode::postselect;
    std::uint64_t seed = 0;

    bool operator==(const ProtocolConfig&) const = default;
};

/// Throws DomainError for alpha/delta <= 0, bit outside {0,1} or
/// iterations outside [0, 16].
void validate(const ProtocolConfig& config);

/// Non-fatal diagnostics, e.g. delta/alpha >= 1.
std::vector<std::string> config_warnings(const ProtocolConfig& config);

/// Qubit (x) oscillator state as two unnormalized oscillator branches, one per
/// qubit basis state. An empty branch is exactly zero.
struct QubitOscState {
    std::optional<GaussianComb> branch0;
    std::optional<GaussianComb> branch1;

    double norm_squared() const;
};

/// Qubit in |0>, oscillator in `oscillator`.
QubitOscState qubit_zero(const GaussianComb& oscillator);

QubitOscState hadamard(const QubitOscState& state);

/// Qubit X: swaps the branches.
QubitOscState pauli_x(const QubitOscState& state);

/// exp(-i d P sigma_z) along `axis`: branch0 moves by +d, branch1 by -d.
QubitOscState conditional_displacement(const QubitOscState& state, double d, Quadrature axis);

/// Displaces only the |1> branch by d.
QubitOscState excited_displacement(const QubitOscState& state, double d, Quadrature axis);

struct MeasureResult {
    double probability;
    GaussianComb collapsed;
};

/// Projects the qubit onto `outcome`. The collapsed oscillator state is
/// normalized with its leftmost peak coefficient made positive real.
/// Requires joint norm 1 within 1e-9; DegenerateError on a zero branch.
MeasureResult measure_qubit(const QubitOscState& state, int outcome);

/// Both outcome probabilities; they sum to the joint norm.
std::pair<double, double> outcome_probabilities(const QubitOscState& state);

struct OutcomeRecord {
    std::vector<int> bits;
    double probability = 1.0;
    GaussianComb state;
    double normalization = 1.0;  ///< N with coefficients of magnitude N / sqrt(#peaks)
};

/// One iteration: H, conditional displacement 2^{k-1} alpha, H. k is 1-based.
QubitOscState iteration_unitary(const GaussianComb& oscillator, int k, const ProtocolConfig& config);

/// Runs the protocol along a fixed outcome sequence (one entry per
/// iteration). Bit 0 targets get a final +alpha displacement.
OutcomeRecord run_with_outcomes(const ProtocolConfig& config, std::span<const int> outcomes);

/// Postselected run: every measurement returns 0.
OutcomeRecord prepare(const ProtocolConfig& config);

/// Every outcome sequence with its exact probability, in lexicographic bit
/// order (all zeros first). Requires iterations <= 12.
std::vector<OutcomeRecord> enumerate_branches(const ProtocolConfig& config);

/// Born-rule sampling of each measurement. Outcome draws use 53-bit uniforms
/// from the 64-bit Mersenne twister.
OutcomeRecord sample_run(const ProtocolConfig& config, std::mt19937_64& rng);
OutcomeRecord sample_run(const ProtocolConfig& config);

/// Dispatch on config.mode. Deterministic mode returns all branches.
std::vector<OutcomeRecord> run(const ProtocolConfig& config);

double uniform01(std::mt19937_64& rng);

}  // namespace gkp

#endif  // GKP_PROTOCOL_HPP
