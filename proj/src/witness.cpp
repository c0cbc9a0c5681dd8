#include "sac/witness.hpp"

#include "sac/errors.hpp"

#include <cmath>

namespace sac {

WitnessReport build_xi_witness(double D, double d, double b) {
    if (!(b > 0.0))
        throw DomainError("build_xi_witness: b must be positive (b = 0 is trivially tight)");
    const double bound2 = xi(D, d, b); // validates Omega membership

    const double gamma = 0.5 * D;
    const double lambda = gamma - d;
    const CriticalPoint cp = z0_and_beta(gamma, lambda, b);

    double bm;
    double bp;
    double t;
    bool clamped = false;
    XiBranch regime;
    if (b <= cp.beta) {
        bm = 0.0;
        bp = b;
        t = 1.0;
        regime = XiBranch::First;
    } else {
        const SplitValue sv = split_from_eigenvalue(gamma, lambda, b, cp.z0);
        t = sv.t;
        clamped = sv.clamped;
        bp = std::sqrt(t) * b;
        bm = std::sqrt(1.0 - t) * b;
        regime = XiBranch::Second;
    }

    WitnessMatrix3 w{lambda, -gamma, gamma, bm, bp};
    const SecularSolution sol = solve_secular(w);
    const double bound = std::sqrt(bound2);
    const double ratio = sol.tan_theta / bound;
    if (!(std::abs(ratio - 1.0) <= 1e-8))
        throw TightnessError("build_xi_witness: achieved angle misses the bound beyond 1e-8");
    return {w, sol.z, sol.tan_theta, bound, ratio, regime, t, clamped};
}

RemdelReport build_remdel_example(double d, double b) {
    if (!(d > 0.0))
        throw DomainError("build_remdel_example: d must be positive");
    if (!(b >= 0.0) || !(b * b < 2.0 * (d * d)))
        throw DomainError("build_remdel_example: need 0 <= b < sqrt(2)*d");
    const double z = -0.5 * d + std::hypot(0.5 * d, b);
    WitnessMatrix3 w{0.0, -d, d, b, 0.0};
    return {w, z, b == 0.0 ? 0.0 : b / (d + z), d - z};
}

} // namespace sac
