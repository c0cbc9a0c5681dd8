#pragma once

#include <optional>
#include <string_view>

namespace sac {

// Mutual arrangement of the two spectral components.
//   InGap:        sigma0 lies inside a finite gap of sigma1
//   Subordinated: sup sigma0 < inf sigma1
enum class Disposition { InGap, Subordinated, General };

// The rotation bounds handled by this library, each with its own validity
// condition on (D, d, b) where D is the gap length, d the spectral distance
// and b the coupling norm:
//   AprioriTanTheta : b < sqrt(2)*d
//   XiBound         : b < sqrt(d*D)
//   Tan2Theta       : unconditional (subordinated disposition)
//   Kappa           : b < sqrt(d*(D-d))
//   Aposteriori     : condition lives on the perturbed spectrum, not (D,d,b)
enum class BoundKind { AprioriTanTheta, XiBound, Tan2Theta, Kappa, Aposteriori };

// A finite spectral gap (gap_lo, gap_hi) of sigma1 together with the distance
// d = dist(sigma0, sigma1). Valid iff delta_len > 0 and 0 < d <= delta_len/2.
struct GapGeometry {
    double gap_lo;
    double gap_hi;
    double d;
    double delta_len; // gap_hi - gap_lo
};

GapGeometry make_geometry(double gap_lo, double gap_hi, double d);

// Strict validity predicate for a bound kind at coupling norm b. Exact
// comparisons, no tolerance: the hypotheses are strict inequalities.
bool validity(BoundKind kind, const GapGeometry& g, double b);

const char* kind_name(BoundKind kind);
std::optional<BoundKind> parse_kind(std::string_view name);

const char* disposition_name(Disposition d);

} // namespace sac
