#pragma once

#include "sac/bounds.hpp"
#include "sac/secular.hpp"

namespace sac {

// An extremal 3x3 matrix achieving the in-gap bound with equality, together
// with the achieved angle and its ratio to the bound (within 1e-8 of 1).
struct WitnessReport {
    WitnessMatrix3 matrix;
    double z;
    double tan_theta;
    double bound;     // sqrt(xi(D, d, b))
    double gap_ratio; // tan_theta / bound
    XiBranch regime;
    double t;         // coupling split b_plus^2 / b^2 actually used
    bool t_clamped;
};

// Places the gap at (-D/2, D/2) with lambda = D/2 - d and picks the coupling
// split that maximizes the rotation:
//   b <= beta : (b_minus, b_plus) = (0, b), eigenvalue at z_min
//   b >  beta : split chosen so the eigenvalue sits at the stationary point z0
// Requires (D, d, b) in Omega with b > 0 (b = 0 is trivially tight);
// throws TightnessError if the achieved angle misses the bound beyond 1e-8.
WitnessReport build_xi_witness(double D, double d, double b);

// The symmetric-gap example with one-sided coupling: gap (-d, d), lambda = 0,
// (b_minus, b_plus) = (b, 0). Its eigenvalue z = -d/2 + sqrt(d^2/4 + b^2)
// approaches the gap edge as b -> sqrt(2)*d, so delta = d - z can be made
// arbitrarily small while the a priori bound stays <= sqrt(2).
struct RemdelReport {
    WitnessMatrix3 matrix;
    double z;
    double tan_theta;
    double delta; // dist(z, {-d, d}) = d - z
};

// Requires 0 <= b < sqrt(2)*d.
RemdelReport build_remdel_example(double d, double b);

} // namespace sac
