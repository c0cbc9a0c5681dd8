#pragma once

#include "sac/geometry.hpp"

#include <optional>
#include <vector>

namespace sac {

enum class XiBranch { First, Second };

// One evaluated bound on tan(theta). `value` is always on the tangent scale;
// angle-form bounds (tan2Theta, kappa) are converted via tan of the angle.
// `value` is meaningful only when `valid` is true.
struct BoundValue {
    BoundKind kind;
    bool valid = false;
    double value = 0.0;
    std::optional<XiBranch> branch; // set for XiBound when valid
};

// Xi(D, d, b): sharp upper bound on tan^2(theta) for the in-gap disposition,
// defined on Omega = { D > 0, 0 < d <= D/2, 0 <= b < sqrt(d*D) }:
//
//   tan^2( arctan(2b/d) / 2 )                       if b^2 <= d*sqrt(D)*(sqrt(D)-sqrt(2d))/2
//   1 + 2b^2/D^2 - (2/D^2)*sqrt((dD-b^2)((D-d)D-b^2))   otherwise
//
// Throws DomainError outside Omega.
double xi(double D, double d, double b);

// The two branch expressions and their switch point, exposed separately so
// continuity across the branch boundary can be checked directly.
double xi_first_branch(double d, double b);
double xi_second_branch(double D, double d, double b);
double xi_branch_threshold(double D, double d); // compared against b^2
XiBranch xi_branch(double D, double d, double b);

// b/d, requires 0 <= b < sqrt(2)*d.
double apriori_tan_theta(double d, double b);

// arctan(2b/d)/2, in radians; always < pi/4. Subordinated disposition.
double tan_2theta_bound(double d, double b);

// b/delta where delta = dist(perturbed sigma0', unperturbed sigma1).
double aposteriori_tan_theta(double b, double delta);

// kappa(b) for 0 <= b < sqrt(d*(D-d)):
//   2b/d                                                  if b <= sqrt((d/2)(D/2-d))
//   (b*D/2 + sqrt(d(D-d)[(D/2-d)^2+b^2])) / (d(D-d)-b^2)  otherwise
double kappa(double D, double d, double b);
double kappa_split(double D, double d); // compared against b

// Evaluates every bound kind applicable to the in-gap disposition
// (XiBound, AprioriTanTheta, Kappa), all on the tangent scale. Valid entries
// come first, sorted ascending by value; invalid kinds follow with no value.
std::vector<BoundValue> best_bound(const GapGeometry& g, double b);

} // namespace sac
