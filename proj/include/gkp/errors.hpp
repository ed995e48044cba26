#ifndef GKP_ERRORS_HPP
#define GKP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gkp {

/// Argument outside the mathematical domain of an operation (non-positive
/// width, mismatched quadratures, unnormalized input, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A grid displacement that is not an integer number of cells.
class AlignmentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A state does not fit its grid window. Carries the probability mass that
/// would have been lost.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& what, double lost_mass)
        : std::runtime_error(what + " (lost mass " + std::to_string(lost_mass) + ")"),
          lost_mass_(lost_mass) {}

    double lost_mass() const noexcept { return lost_mass_; }

private:
    double lost_mass_;
};

/// Projection onto a branch or outcome with zero probability.
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed serialized input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace gkp

#endif  // GKP_ERRORS_HPP
