#include "sac/geometry.hpp"

#include "sac/errors.hpp"

#include <cmath>

namespace sac {

GapGeometry make_geometry(double gap_lo, double gap_hi, double d) {
    if (!std::isfinite(gap_lo) || !std::isfinite(gap_hi) || !std::isfinite(d))
        throw DomainError("make_geometry: inputs must be finite");
    if (!(gap_hi > gap_lo))
        throw DomainError("make_geometry: degenerate gap (gap_hi <= gap_lo)");
    const double len = gap_hi - gap_lo;
    if (!(d > 0.0))
        throw DomainError("make_geometry: d must be positive");
    if (!(d <= len / 2.0))
        throw DomainError("make_geometry: d exceeds half the gap length");
    return GapGeometry{gap_lo, gap_hi, d, len};
}

bool validity(BoundKind kind, const GapGeometry& g, double b) {
    if (!(b >= 0.0) || !std::isfinite(b))
        throw DomainError("validity: b must be a nonnegative real");
    const double d = g.d;
    const double D = g.delta_len;
    switch (kind) {
        case BoundKind::AprioriTanTheta: return b * b < 2.0 * (d * d);
        case BoundKind::XiBound:         return b * b < d * D;
        case BoundKind::Tan2Theta:       return true;
        case BoundKind::Kappa:           return b * b < d * (D - d);
        case BoundKind::Aposteriori:     return true;
    }
    throw DomainError("validity: unknown bound kind");
}

const char* kind_name(BoundKind kind) {
    switch (kind) {
        case BoundKind::AprioriTanTheta: return "apriori";
        case BoundKind::XiBound:         return "xi";
        case BoundKind::Tan2Theta:       return "tan2theta";
        case BoundKind::Kappa:           return "kappa";
        case BoundKind::Aposteriori:     return "aposteriori";
    }
    return "unknown";
}

std::optional<BoundKind> parse_kind(std::string_view name) {
    if (name == "apriori") return BoundKind::AprioriTanTheta;
    if (name == "xi") return BoundKind::XiBound;
    if (name == "tan2theta") return BoundKind::Tan2Theta;
    if (name == "kappa") return BoundKind::Kappa;
    if (name == "aposteriori") return BoundKind::Aposteriori;
    return std::nullopt;
}

const char* disposition_name(Disposition d) {
    switch (d) {
        case Disposition::InGap:        return "in_gap";
        case Disposition::Subordinated: return "subordinated";
        case Disposition::General:      return "general";
    }
    return "unknown";
}

} // namespace sac
