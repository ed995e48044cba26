#include "gkp/comb.hpp"

#include <algorithm>
#include <cmath>

#include "gkp/errors.hpp"

namespace gkp {

namespace {

constexpr double kPruneMagnitude = 1e-300;
constexpr double kMergeRelative = 1e-9;
// exp(-x) underflows to zero in double precision beyond this.
constexpr double kUnderflowExponent = 746.0;

double axis_sign(Quadrature axis) { return axis == Quadrature::position ? 1.0 : -1.0; }

std::vector<Peak> canonicalize(std::vector<Peak> peaks, double width) {
    std::stable_sort(peaks.begin(), peaks.end(),
                     [](const Peak& a, const Peak& b) { return a.center < b.center; });
    std::vector<Peak> out;
    out.reserve(peaks.size());
    const double tol = kMergeRelative * width;
    for (const Peak& p : peaks) {
        if (!std::isfinite(p.center) || !std::isfinite(p.coeff.real()) || !std::isfinite(p.coeff.imag())) {
            throw DomainError("comb peak is not finite");
        }
        if (!out.empty() && p.center - out.back().center <= tol) {
            out.back().coeff += p.coeff;
        } else {
            out.push_back(p);
        }
    }
    std::erase_if(out, [](const Peak& p) { return std::abs(p.coeff) < kPruneMagnitude; });
    return out;
}

// Sum over peak pairs of conj(a_j) b_k <g_j| e^{i kappa x} |g_k>. Pairs whose
// Gaussian factor underflows are skipped, which leaves the double result
// unchanged.
cplx raw_overlap(const std::vector<Peak>& a, const std::vector<Peak>& b, double width, double kappa) {
    const double four_w2 = 4.0 * width * width;
    const double cutoff = std::sqrt(kUnderflowExponent * four_w2);
    const double envelope = std::exp(-kappa * kappa * width * width / 4.0);
    cplx total = 0.0;
    std::size_t start = 0;
    for (const Peak& pa : a) {
        while (start < b.size() && b[start].center < pa.center - cutoff) ++start;
        cplx row = 0.0;
        for (std::size_t k = start; k < b.size() && b[k].center <= pa.center + cutoff; ++k) {
            const double d = pa.center - b[k].center;
            double factor = std::exp(-d * d / four_w2);
            if (kappa == 0.0) {
                row += factor * b[k].coeff;
            } else {
                const double mid = 0.5 * (pa.center + b[k].center);
                row += factor * std::polar(1.0, kappa * mid) * b[k].coeff;
            }
        }
        total += std::conj(pa.coeff) * row;
    }
    return total * envelope;
}

void require_compatible(const GaussianComb& a, const GaussianComb& b) {
    if (a.axis() != b.axis()) throw DomainError("combs live on different quadratures");
    if (a.width() != b.width()) throw DomainError("combs have different peak widths");
}

// Strict weak order on comb contents, used to make overlap() symmetric.
bool content_less(const GaussianComb& a, const GaussianComb& b) {
    if (a.dual_shift() != b.dual_shift()) return a.dual_shift() < b.dual_shift();
    const auto& pa = a.peaks();
    const auto& pb = b.peaks();
    if (pa.size() != pb.size()) return pa.size() < pb.size();
    for (std::size_t i = 0; i < pa.size(); ++i) {
        if (pa[i].center != pb[i].center) return pa[i].center < pb[i].center;
        if (pa[i].coeff.real() != pb[i].coeff.real()) return pa[i].coeff.real() < pb[i].coeff.real();
        if (pa[i].coeff.imag() != pb[i].coeff.imag()) return pa[i].coeff.imag() < pb[i].coeff.imag();
    }
    return false;
}

}  // namespace

GaussianComb::GaussianComb(double width, Quadrature axis, std::vector<Peak> peaks, double dual_shift)
    : width_(width), axis_(axis), dual_shift_(dual_shift) {
    if (!(width > 0.0) || !std::isfinite(width)) throw DomainError("comb width must be positive");
    if (!std::isfinite(dual_shift)) throw DomainError("comb dual shift must be finite");
    peaks_ = canonicalize(std::move(peaks), width);
    if (peaks_.empty()) throw DomainError("comb has no peaks");
    norm_squared_ = raw_overlap(peaks_, peaks_, width_, 0.0).real();
}

double gaussian(double x, double width) {
    return std::exp(-x * x / (2.0 * width * width)) / std::sqrt(width * std::sqrt(kPi));
}

GaussianComb squeezed_vacuum(double width, Quadrature axis) {
    if (!(width > 0.0)) throw DomainError("squeezing width must be positive");
    return GaussianComb(width, axis, {{0.0, 1.0}});
}

GaussianComb displace(const GaussianComb& comb, double amount, Quadrature axis) {
    if (amount == 0.0) return comb;
    if (axis != comb.axis()) {
        return GaussianComb(comb.width(), comb.axis(), comb.peaks(), comb.dual_shift() + amount);
    }
    // psi(x - a) picks up exp(-i s D a) from the dual-shift phase.
    const cplx phase = std::polar(1.0, -axis_sign(comb.axis()) * comb.dual_shift() * amount);
    std::vector<Peak> moved = comb.peaks();
    for (Peak& p : moved) {
        p.center += amount;
        p.coeff *= phase;
    }
    return GaussianComb(comb.width(), comb.axis(), std::move(moved), comb.dual_shift());
}

cplx overlap(const GaussianComb& a, const GaussianComb& b) {
    require_compatible(a, b);
    if (content_less(b, a)) return std::conj(overlap(b, a));
    const double kappa = axis_sign(a.axis()) * (b.dual_shift() - a.dual_shift());
    cplx result = raw_overlap(a.peaks(), b.peaks(), a.width(), kappa);
    if (!content_less(a, b)) result = {result.real(), 0.0};  // identical contents
    return result;
}

GaussianComb scale(const GaussianComb& comb, cplx factor) {
    std::vector<Peak> peaks = comb.peaks();
    for (Peak& p : peaks) p.coeff *= factor;
    return GaussianComb(comb.width(), comb.axis(), std::move(peaks), comb.dual_shift());
}

GaussianComb normalize(const GaussianComb& comb) {
    const double n2 = comb.norm_squared();
    if (!(n2 > 0.0)) throw DegenerateError("cannot normalize a zero-norm comb");
    return scale(comb, 1.0 / std::sqrt(n2));
}

std::optional<GaussianComb> superpose(cplx wa, const GaussianComb& a, cplx wb, const GaussianComb& b) {
    require_compatible(a, b);
    if (a.dual_shift() != b.dual_shift()) {
        throw DomainError("cannot superpose combs with different dual shifts");
    }
    std::vector<Peak> peaks;
    peaks.reserve(a.peaks().size() + b.peaks().size());
    for (const Peak& p : a.peaks()) peaks.push_back({p.center, wa * p.coeff});
    for (const Peak& p : b.peaks()) peaks.push_back({p.center, wb * p.coeff});
    peaks = canonicalize(std::move(peaks), a.width());
    if (peaks.empty()) return std::nullopt;
    return GaussianComb(a.width(), a.axis(), std::move(peaks), a.dual_shift());
}

double distance(const GaussianComb& a, const GaussianComb& b) {
    require_compatible(a, b);
    std::vector<Peak> diff;
    diff.reserve(a.peaks().size() + b.peaks().size());
    for (const Peak& p : a.peaks()) diff.push_back(p);
    for (const Peak& p : b.peaks()) diff.push_back({p.center, -p.coeff});
    diff = canonicalize(std::move(diff), a.width());
    double d2 = diff.empty() ? 0.0 : raw_overlap(diff, diff, a.width(), 0.0).real();
    if (a.dual_shift() != b.dual_shift()) {
        // ||A - e^{i kappa x} B||^2 = ||A - B||^2 + 2 Re <A| (1 - e^{i kappa x}) |B>, with the
        // second term from expm1 so nearly equal shifts do not cancel catastrophically.
        const double kappa = axis_sign(a.axis()) * (b.dual_shift() - a.dual_shift());
        const double w = a.width();
        const double damp = -kappa * kappa * w * w / 4.0;
        cplx cross = 0.0;
        for (const Peak& pa : a.peaks()) {
            for (const Peak& pb : b.peaks()) {
                const double d = pa.center - pb.center;
                const double y = kappa * 0.5 * (pa.center + pb.center);
                const double half = std::sin(0.5 * y);
                const cplx em1(std::expm1(damp) * std::cos(y) - 2.0 * half * half, std::exp(damp) * std::sin(y));
                cross += std::conj(pa.coeff) * pb.coeff * std::exp(-d * d / (4.0 * w * w)) * (-em1);
            }
        }
        d2 += 2.0 * cross.real();
    }
    return std::sqrt(std::max(0.0, d2));
}

GaussianComb with_canonical_phase(const GaussianComb& comb) {
    const cplx lead = comb.peaks().front().coeff;
    return scale(comb, std::conj(lead) / std::abs(lead));
}

cplx eval(const GaussianComb& comb, double x, Quadrature axis) {
    const double w = comb.width();
    const double shift = comb.dual_shift();
    const double s = axis_sign(comb.axis());
    if (axis == comb.axis()) {
        const double cutoff = w * std::sqrt(2.0 * kUnderflowExponent);
        const auto& peaks = comb.peaks();
        auto it = std::lower_bound(peaks.begin(), peaks.end(), x - cutoff,
                                   [](const Peak& p, double v) { return p.center < v; });
        cplx sum = 0.0;
        for (; it != peaks.end() && it->center <= x + cutoff; ++it) {
            sum += it->coeff * gaussian(x - it->center, w);
        }
        return shift == 0.0 ? sum : std::polar(1.0, s * shift * x) * sum;
    }
    // Dual axis: each peak transforms to a plane wave under a Gaussian of
    // width 1/w centred on the dual shift.
    const double y = x - shift;
    const double envelope = std::sqrt(w / std::sqrt(kPi)) * std::exp(-y * y * w * w / 2.0);
    if (envelope == 0.0) return 0.0;
    cplx sum = 0.0;
    for (const Peak& p : comb.peaks()) sum += p.coeff * std::polar(1.0, -s * y * p.center);
    return envelope * sum;
}

}  // namespace gkp
