#ifndef GKP_RECOVERY_HPP
#define GKP_RECOVERY_HPP

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gkp/grid.hpp"
#include "gkp/protocol.hpp"

namespace gkp {

/// Joint amplitudes Psi(x_e, x_a) of the encoded mode and an ancilla mode,
/// both sampled along the same quadrature with the same spacing. Row-major,
/// one row per encoded grid point. The ancilla axis can be periodic, which
/// represents an ancilla that is periodic in its quadrature (an ideal comb).
class TwoModeGrid {
public:
    TwoModeGrid(GridSpec encoded, GridSpec ancilla, bool ancilla_periodic, std::vector<cplx> amplitudes);

    const GridSpec& encoded_spec() const noexcept { return encoded_; }
    const GridSpec& ancilla_spec() const noexcept { return ancilla_; }
    bool ancilla_periodic() const noexcept { return periodic_; }
    Quadrature axis() const noexcept { return encoded_.axis; }
    double spacing() const noexcept { return encoded_.spacing; }
    std::span<const cplx> amplitudes() const noexcept { return amplitudes_; }
    const cplx& at(std::size_t e, std::size_t a) const noexcept { return amplitudes_[e * ancilla_.size + a]; }
    double norm_squared() const noexcept;

private:
    GridSpec encoded_;
    GridSpec ancilla_;
    bool periodic_;
    std::vector<cplx> amplitudes_;
};

TwoModeGrid product_state(const GridState& encoded, const GridState& ancilla, bool ancilla_periodic = false);

/// position: exp(-i q_e p_a), Psi(q_e, q_a) -> Psi(q_e, q_a - q_e).
/// momentum: exp(-i p_e q_a) in the momentum frame, Phi(p_e, p_a) -> Phi(p_e, p_a + p_e).
enum class SumDirection { position, momentum };

/// Exact integer-cell row shifts. The joint grid must be sampled along the
/// direction's quadrature. Mass shifted off a non-periodic ancilla window
/// raises TruncationError.
TwoModeGrid sum_gate(const TwoModeGrid& joint, SumDirection direction);

struct AncillaMeasurement {
    double value;                ///< measured ancilla coordinate
    std::size_t index;           ///< its ancilla grid index
    double probability_density;  ///< marginal density at value
    GridState collapsed;         ///< normalized encoded slice
};

/// Samples the ancilla coordinate from its marginal.
AncillaMeasurement measure_ancilla(const TwoModeGrid& joint, std::mt19937_64& rng);
/// Replays a fixed outcome; `value` must be an ancilla grid point.
AncillaMeasurement measure_ancilla(const TwoModeGrid& joint, double value);

struct Syndrome {
    double measured;    ///< q_m (or p_m)
    double estimate;    ///< shift estimate in [-modulus/2, modulus/2)
    double correction;  ///< displacement applied to the encoded mode, -estimate
};

/// estimate = ((measured + m/2) mod m) - m/2.
Syndrome syndrome_to_correction(double measured, double modulus);

/// c0 |0~_n> + c1 |1~_n>, normalized; codewords from the postselected
/// protocol with `config`'s alpha, delta, iterations and axis.
GaussianComb encode_superposition(cplx c0, cplx c1, const ProtocolConfig& config);

struct ShiftError {
    double position = 0.0;
    double momentum = 0.0;
};

/// Position shift first, then momentum kick.
GaussianComb apply_shift_error(const GaussianComb& state, ShiftError error);
GridState apply_shift_error(const GridState& state, ShiftError error);

/// Where the syndrome ancilla comes from.
struct AncillaSource {
    enum class Kind { ideal_comb, prepared };
    Kind kind = Kind::ideal_comb;
    std::vector<int> bits;      ///< outcome sequence for a prepared ancilla
    double ideal_width = 0.05;  ///< peak width of the ideal comb

    static AncillaSource ideal(double width = 0.05);
    static AncillaSource prepared_from(std::vector<int> bits);
    /// "ideal" or "bits:<pattern>", e.g. "bits:101".
    static AncillaSource parse(const std::string& text);
};

struct RecoveryConfig {
    double alpha = 1.2533141373155001;
    double delta = 0.15;  ///< width of prepared ancillas
    Quadrature quadrature = Quadrature::position;
    int cells_per_alpha = 32;      ///< grid spacing alpha / cells_per_alpha
    std::size_t encoded_size = 0;  ///< 0: smallest power of two that fits
    std::size_t ancilla_size = 512;
};

struct RecoveryResult {
    GridState corrected;  ///< position representation
    GridState reference;  ///< pre-error state, position representation
    Syndrome syndrome;
    double fidelity;        ///< |<pre-error|corrected>|^2
    double true_shift;      ///< shift error along the corrected quadrature
    double residual_shift;  ///< true_shift - estimate
    bool logical_failure;   ///< residual rounds to an odd multiple of the modulus
};

/// Core of a recovery round, entirely in the frame of the given grids:
/// product with the ancilla, SUM, ancilla measurement, syndrome, correction.
/// `pre_error` and `shifted` share a spec; the ancilla shares the spacing.
struct GridRecovery {
    GridState corrected;
    Syndrome syndrome;
    double fidelity;
};
GridRecovery correct_shift(const GridState& pre_error, const GridState& shifted, const GridState& ancilla,
                           bool ancilla_periodic, double modulus, SumDirection direction,
                           std::mt19937_64& rng, std::optional<double> outcome = std::nullopt);

/// Ancilla state on `spec` for the given source and lattice modulus
/// (alpha for position recovery, pi/alpha for momentum recovery).
GridState build_ancilla(const AncillaSource& source, double modulus, double delta, const GridSpec& spec);

/// Full round: error, joint state, SUM, measurement, correction, fidelity.
/// Position recovery measures the ancilla position; momentum recovery runs in
/// the Fourier frame and measures the ancilla momentum.
RecoveryResult recover(const GaussianComb& encoded, ShiftError error, const AncillaSource& source,
                       const RecoveryConfig& config, std::mt19937_64& rng,
                       std::optional<double> outcome = std::nullopt);

}  // namespace gkp

#endif  // GKP_RECOVERY_HPP
