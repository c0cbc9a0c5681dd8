#include "sac/secular.hpp"

#include "sac/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sac {

double WitnessMatrix3::b_norm() const { return std::hypot(b_minus, b_plus); }

double WitnessMatrix3::dist() const {
    return std::min(gamma_plus - lambda, lambda - gamma_minus);
}

double WitnessMatrix3::gap_len() const { return gamma_plus - gamma_minus; }

void WitnessMatrix3::validate() const {
    if (!std::isfinite(lambda) || !std::isfinite(gamma_minus) ||
        !std::isfinite(gamma_plus) || !std::isfinite(b_minus) ||
        !std::isfinite(b_plus))
        throw DomainError("witness matrix: entries must be finite");
    if (!(gamma_plus > gamma_minus))
        throw DomainError("witness matrix: gamma_plus must exceed gamma_minus");
    if (!(lambda > gamma_minus) || !(lambda < gamma_plus))
        throw DomainError("witness matrix: lambda must lie strictly inside the gap");
    if (!(b_minus >= 0.0) || !(b_plus >= 0.0))
        throw DomainError("witness matrix: couplings must be nonnegative");
    const double b2 = b_minus * b_minus + b_plus * b_plus;
    if (!(b2 < dist() * gap_len()))
        throw DomainError("witness matrix: need |B| < sqrt(d * gap length)");
}

ZBracket z_bracket(const WitnessMatrix3& w) {
    w.validate();
    const double bn = w.b_norm();
    if (bn == 0.0) return {w.lambda, w.lambda};
    const double lo =
        w.lambda - bn * std::tan(0.5 * std::atan(2.0 * bn / (w.gamma_plus - w.lambda)));
    const double hi =
        w.lambda + bn * std::tan(0.5 * std::atan(2.0 * bn / (w.lambda - w.gamma_minus)));
    return {lo, hi};
}

namespace {

// centered secular function and its derivative; poles at z = -gamma, +gamma
double secular_g(double gamma, double lambda, double bm, double bp, double z) {
    return z - lambda - bm * bm / (gamma + z) - bp * bp / (z - gamma);
}

double secular_dg(double gamma, double bm, double bp, double z) {
    const double u = bm / (gamma + z);
    const double v = bp / (z - gamma);
    return 1.0 + u * u + v * v;
}

// root of the centered secular equation, lambda >= 0, both couplings > 0
double secular_root(double gamma, double lambda, double bm, double bp) {
    const double bn = std::hypot(bm, bp);
    // closed-form enclosure, equivalent to the tangent expressions
    double lo = 0.5 * (gamma + lambda) - std::hypot(0.5 * (gamma - lambda), bn);
    double hi = -0.5 * (gamma - lambda) + std::hypot(0.5 * (gamma + lambda), bn);
    lo = std::max(lo, std::nextafter(-gamma, gamma));
    hi = std::min(hi, std::nextafter(gamma, -gamma));

    double glo = secular_g(gamma, lambda, bm, bp, lo);
    double ghi = secular_g(gamma, lambda, bm, bp, hi);
    // the root sits within rounding of an endpoint when one coupling is tiny
    if (glo >= 0.0) return lo;
    if (ghi <= 0.0) return hi;

    const double width_goal = 1e-14 * (2.0 * gamma);
    while (hi - lo > width_goal) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (secular_g(gamma, lambda, bm, bp, mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double z = 0.5 * (lo + hi);
    for (int i = 0; i < 5; ++i) {
        const double g = secular_g(gamma, lambda, bm, bp, z);
        const double dg = secular_dg(gamma, bm, bp, z);
        const double step = g / dg;
        const double next = std::clamp(z - step, lo, hi);
        if (next == z) break;
        z = next;
    }
    return z;
}

} // namespace

SecularSolution solve_secular(const WitnessMatrix3& w) {
    w.validate();
    const double shift = 0.5 * (w.gamma_plus + w.gamma_minus);
    const double gamma = 0.5 * (w.gamma_plus - w.gamma_minus);
    double lambda = w.lambda - shift;
    double bm = w.b_minus;
    double bp = w.b_plus;

    if (bm == 0.0 && bp == 0.0) return {w.lambda, 0.0, 0.0, 0.0, 0.0};

    // negate the matrix for lambda < 0; this swaps the roles of the couplings
    const bool mirrored = lambda < 0.0;
    if (mirrored) {
        lambda = -lambda;
        std::swap(bm, bp);
    }

    double z;
    if (bm == 0.0) {
        // root of (z - lambda)(z - gamma) = bp^2, the lower branch
        z = 0.5 * (gamma + lambda) - std::hypot(0.5 * (gamma - lambda), bp);
    } else if (bp == 0.0) {
        z = -0.5 * (gamma - lambda) + std::hypot(0.5 * (gamma + lambda), bm);
    } else {
        z = secular_root(gamma, lambda, bm, bp);
    }

    double xm = bm == 0.0 ? 0.0 : bm / (gamma + z);
    double xp = bp == 0.0 ? 0.0 : bp / (z - gamma);
    const double residual = std::abs(secular_g(gamma, lambda, bm, bp, z));

    if (mirrored) {
        z = -z;
        const double t = xm;
        xm = -xp;
        xp = -t;
    }
    return {z + shift, xm, xp, std::hypot(xm, xp), residual};
}

double phi(double gamma, double lambda, double b, double z) {
    if (!(gamma > 0.0))
        throw DomainError("phi: gamma must be positive");
    if (!(std::abs(z) < gamma))
        throw DomainError("phi: z must lie strictly inside (-gamma, gamma)");
    return (b * b + 2.0 * (lambda - z) * z) / ((gamma - z) * (gamma + z));
}

CriticalPoint z0_and_beta(double gamma, double lambda, double b) {
    if (!(gamma > 0.0) || !(lambda >= 0.0) || !(lambda < gamma))
        throw DomainError("z0_and_beta: need 0 <= lambda < gamma");
    const double d = gamma - lambda;
    if (!(b > 0.0) || !(b * b < 2.0 * d * gamma))
        throw DomainError("z0_and_beta: need 0 < b < sqrt(2*d*gamma)");

    // beta^2 = d*sqrt(gamma)*(sqrt(gamma)-sqrt(d)), rewritten so beta is
    // exactly 0 at lambda = 0
    const double sg = std::sqrt(gamma);
    const double sd = std::sqrt(d);
    const double beta = std::sqrt(d * sg * lambda / (sg + sd));

    double z0 = 0.0;
    if (lambda > 0.0) {
        const double x = (2.0 * gamma * gamma - b * b) / (2.0 * lambda);
        double disc = x * x - gamma * gamma; // >= 0 in-domain
        if (disc < 0.0) disc = 0.0;
        z0 = gamma * gamma / (x + std::sqrt(disc)); // = x - sqrt(disc), stable
    }
    return {z0, beta};
}

double max_phi(double gamma, double lambda, double b) {
    const CriticalPoint cp = z0_and_beta(gamma, lambda, b);
    const double z_star =
        b <= cp.beta ? 0.5 * (gamma + lambda) - std::hypot(0.5 * (gamma - lambda), b)
                     : cp.z0;
    return phi(gamma, lambda, b, z_star);
}

SplitValue split_from_eigenvalue(double gamma, double lambda, double b, double z) {
    if (!(gamma > 0.0))
        throw DomainError("split_from_eigenvalue: gamma must be positive");
    if (!(b > 0.0))
        throw DomainError("split_from_eigenvalue: b must be positive");
    if (!(std::abs(z) < gamma))
        throw DomainError("split_from_eigenvalue: z must lie inside (-gamma, gamma)");
    const double b2 = b * b;
    double t = ((z - lambda) * (z * z - gamma * gamma) - b2 * (z - gamma)) /
               (2.0 * gamma * b2);
    bool clamped = false;
    if (t < 0.0) {
        if (t < -1e-12)
            throw DomainError("split_from_eigenvalue: t below 0 beyond tolerance");
        t = 0.0;
        clamped = true;
    } else if (t > 1.0) {
        if (t > 1.0 + 1e-12)
            throw DomainError("split_from_eigenvalue: t above 1 beyond tolerance");
        t = 1.0;
        clamped = true;
    }
    return {t, clamped};
}

} // namespace sac
