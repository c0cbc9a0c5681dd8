#include "sac/bounds.hpp"

#include "sac/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sac {

namespace {

void check_omega(double D, double d, double b) {
    if (!std::isfinite(D) || !std::isfinite(d) || !std::isfinite(b))
        throw DomainError("xi: inputs must be finite");
    if (!(D > 0.0))
        throw DomainError("xi: D must be positive");
    if (!(d > 0.0) || !(d <= D / 2.0))
        throw DomainError("xi: need 0 < d <= D/2");
    if (!(b >= 0.0) || !(b * b < d * D))
        throw DomainError("xi: need 0 <= b < sqrt(d*D)");
}

} // namespace

double xi_branch_threshold(double D, double d) {
    // d*sqrt(D)*(sqrt(D)-sqrt(2d))/2, rewritten so it is exactly 0 at D = 2d
    return d * std::sqrt(D) * (D - 2.0 * d) /
           (2.0 * (std::sqrt(D) + std::sqrt(2.0 * d)));
}

double xi_first_branch(double d, double b) {
    const double t = std::tan(0.5 * std::atan(2.0 * b / d));
    return t * t;
}

double xi_second_branch(double D, double d, double b) {
    // 1 + 2b^2/D^2 - (2/D^2)sqrt(u*v) with u = dD - b^2, v = (D-d)D - b^2,
    // rewritten via u + v - 2 sqrt(uv) = (sqrt(v) - sqrt(u))^2 so small b does
    // not cancel: Xi = ((sqrt(v)-sqrt(u))^2 + 4b^2) / D^2, and
    // sqrt(v) - sqrt(u) = D(D - 2d)/(sqrt(u) + sqrt(v)).
    const double b2 = b * b;
    double u = d * D - b2;
    double v = (D - d) * D - b2;
    if (u < 0.0) {
        // negative only from rounding at the b^2 -> dD edge of Omega
        if (u < -1e-12)
            throw DomainError("xi: square-root argument negative beyond tolerance");
        u = 0.0;
    }
    if (v < 0.0) v = 0.0; // v >= u in-domain
    const double root_sum = std::sqrt(u) + std::sqrt(v);
    const double diff = root_sum > 0.0 ? D * (D - 2.0 * d) / root_sum : 0.0;
    return (diff * diff + 4.0 * b2) / (D * D);
}

XiBranch xi_branch(double D, double d, double b) {
    check_omega(D, d, b);
    return b * b <= xi_branch_threshold(D, d) ? XiBranch::First : XiBranch::Second;
}

double xi(double D, double d, double b) {
    check_omega(D, d, b);
    return b * b <= xi_branch_threshold(D, d) ? xi_first_branch(d, b)
                                              : xi_second_branch(D, d, b);
}

double apriori_tan_theta(double d, double b) {
    if (!(d > 0.0))
        throw DomainError("apriori_tan_theta: d must be positive");
    if (!(b >= 0.0) || !(b * b < 2.0 * (d * d)))
        throw DomainError("apriori_tan_theta: need 0 <= b < sqrt(2)*d");
    return b / d;
}

double tan_2theta_bound(double d, double b) {
    if (!(d > 0.0))
        throw DomainError("tan_2theta_bound: d must be positive");
    if (!(b >= 0.0))
        throw DomainError("tan_2theta_bound: b must be nonnegative");
    return 0.5 * std::atan(2.0 * b / d);
}

double aposteriori_tan_theta(double b, double delta) {
    if (!(b >= 0.0))
        throw DomainError("aposteriori_tan_theta: b must be nonnegative");
    if (!(delta > 0.0))
        throw DomainError("aposteriori_tan_theta: delta must be positive");
    return b / delta;
}

double kappa_split(double D, double d) {
    return std::sqrt(0.5 * d * (0.5 * D - d));
}

double kappa(double D, double d, double b) {
    if (!(D > 0.0) || !(d > 0.0) || !(d <= D / 2.0))
        throw DomainError("kappa: need 0 < d <= D/2");
    if (!(b >= 0.0) || !(b * b < d * (D - d)))
        throw DomainError("kappa: need 0 <= b < sqrt(d*(D-d))");
    if (b <= kappa_split(D, d))
        return 2.0 * b / d;
    const double half = 0.5 * D;
    const double q = half - d;
    return (b * half + std::sqrt(d * (D - d) * (q * q + b * b))) /
           (d * (D - d) - b * b);
}

std::vector<BoundValue> best_bound(const GapGeometry& g, double b) {
    const double D = g.delta_len;
    const double d = g.d;
    std::vector<BoundValue> out;

    BoundValue bxi{BoundKind::XiBound, validity(BoundKind::XiBound, g, b), 0.0, {}};
    if (bxi.valid) {
        bxi.value = std::sqrt(xi(D, d, b));
        bxi.branch = xi_branch(D, d, b);
    }
    out.push_back(bxi);

    BoundValue bap{BoundKind::AprioriTanTheta,
                   validity(BoundKind::AprioriTanTheta, g, b), 0.0, {}};
    if (bap.valid) bap.value = apriori_tan_theta(d, b);
    out.push_back(bap);

    BoundValue bka{BoundKind::Kappa, validity(BoundKind::Kappa, g, b), 0.0, {}};
    if (bka.valid) bka.value = std::tan(0.5 * std::atan(kappa(D, d, b)));
    out.push_back(bka);

    std::stable_sort(out.begin(), out.end(),
                     [](const BoundValue& a, const BoundValue& c) {
                         if (a.valid != c.valid) return a.valid;
                         if (!a.valid) return false;
                         return a.value < c.value;
                     });
    return out;
}

} // namespace sac
