#pragma once

#include "sac/bounds.hpp"
#include "sac/geometry.hpp"
#include "sac/linalg.hpp"
#include "sac/secular.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace sac {

// A 2x2 block self-adjoint matrix [[A0, B], [B^T, A1]] with its intended
// spectra and disposition bookkeeping. `geometry` is present exactly for the
// InGap disposition (a subordinated pair has no finite gap of sigma1 around
// sigma0).
struct BlockMatrix {
    SymMatrix a0;               // n0 x n0
    SymMatrix a1;               // n1 x n1
    Matrix b;                   // n0 x n1
    std::vector<double> sigma0; // intended spectrum of a0, ascending
    std::vector<double> sigma1; // intended spectrum of a1, ascending
    Disposition disposition = Disposition::InGap;
    std::optional<GapGeometry> geometry;

    int n0() const { return a0.size(); }
    int n1() const { return a1.size(); }
};

// Checks the bookkeeping against the actual spectra (eigensolves a0 and a1):
// intended vs actual within 1e-8, gap membership, endpoint attainment and
// dist(sigma0, sigma1) = d within 1e-10 for InGap; strict subordination for
// Subordinated. Throws DomainError on violation.
void validate_block(const BlockMatrix& m);

// The (n0+n1)-dimensional symmetric matrix [[A0, B], [B^T, A1]].
SymMatrix assemble(const BlockMatrix& m);

// Embeds the 3x3 model as an n0 = 1, n1 = 2 block matrix.
BlockMatrix from_witness(const WitnessMatrix3& w);

// Random in-gap instance, deterministic per seed:
//   - eigenvalues of A0 drawn in [gap_lo + d, gap_hi - d], one forced onto a
//     randomly chosen end so dist(sigma0, sigma1) attains exactly d
//   - eigenvalues of A1 contain both gap endpoints; the rest drawn outside
//   - A0, A1 conjugated by independent random orthogonal matrices
//   - B has independent normal entries rescaled so spectral_norm(B) = vnorm
// Requires n0 >= 1, n1 >= 2, 0 <= vnorm < sqrt(d * |gap|).
BlockMatrix random_instance(int n0, int n1, const GapGeometry& g, double vnorm,
                            std::uint64_t seed);

// Random subordinated instance: sigma0 in [-2d, 0] with max pinned to 0,
// sigma1 in [d, 3d] with min pinned to d, so dist = d. Any vnorm >= 0.
BlockMatrix random_subordinated_instance(int n0, int n1, double d, double vnorm,
                                         std::uint64_t seed);

// Per-eigenpair certification record. For the in-gap harness, one report per
// perturbed eigenvalue strictly inside the gap; `in_window` marks membership
// in (inf sigma0 - d, sup sigma0 + d).
struct AngleReport {
    double eigenvalue;
    bool in_window;
    double tan_theta; // may be +inf
    std::vector<BoundValue> bounds;
    bool all_satisfied;    // tan_theta <= value + 1e-8 for every valid bound
    double tightest_ratio; // tan_theta / smallest valid bound value
};

// Classification of the whole perturbed spectrum: it should split into the
// window interior and the gap exterior with positive separation; eigenvalues
// within 1e-9 of a window edge are counted as boundary and not classified.
struct GapReport {
    bool split_ok;      // no eigenvalue strictly inside the gap but off-window
    int window_count;
    int exterior_count;
    int stray_count;
    int boundary_count;
    double separation;  // min distance between the in-gap and exterior sets
};

struct CertifyResult {
    std::vector<AngleReport> reports; // ascending by eigenvalue
    GapReport gap;
    double vnorm; // spectral_norm(b)
    double delta; // dist(in-gap perturbed eigenvalues, sigma1); +inf if none
};

// Eigensolves assemble(m) and checks every applicable bound (XiBound,
// AprioriTanTheta, Aposteriori) against the measured rotation of each in-gap
// eigenvector out of the leading n0 coordinates. InGap disposition only.
CertifyResult certify(const BlockMatrix& m);

struct SubordinatedResult {
    std::vector<AngleReport> reports; // eigenpairs at or below sup sigma0
    bool interval_clear;              // no eigenvalue in (sup sigma0, inf sigma1)
    int stray_count;
    double vnorm;
};

// Checks that the interval between the components stays spectrum-free and
// that every lower eigenvector obeys theta <= arctan(2*vnorm/d)/2 + 1e-8.
SubordinatedResult certify_subordinated(const BlockMatrix& m);

// delta(b), a priori b/d and a posteriori b/delta for b on a grid from 0 to
// 0.999*sqrt(2)*d, tabulating how the a posteriori bound degrades while the
// a priori one stays bounded.
struct AposterioriRow {
    double b;
    double delta;
    double apriori;     // b/d
    double aposteriori; // b/delta
};

std::vector<AposterioriRow> sweep_aposteriori(double d, int steps);

} // namespace sac
