#include "sac/blockmodel.hpp"

#include "sac/errors.hpp"
#include "sac/rng.hpp"
#include "sac/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sac {

namespace {

constexpr double kEdgeTol = 1e-9; // window / gap edge classification slack

double dist_to(const std::vector<double>& s, double z) {
    double best = std::numeric_limits<double>::infinity();
    for (double v : s) best = std::min(best, std::abs(z - v));
    return best;
}

double set_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double best = std::numeric_limits<double>::infinity();
    for (double v : a) best = std::min(best, dist_to(b, v));
    return best;
}

void check_spectrum_match(const std::vector<double>& intended,
                          const std::vector<double>& actual, const char* which) {
    if (intended.size() != actual.size())
        throw DomainError(std::string("validate_block: ") + which +
                          " spectrum size does not match the block dimension");
    double scale = 1.0;
    for (double v : intended) scale = std::max(scale, std::abs(v));
    std::vector<double> s = intended;
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < s.size(); ++i)
        if (std::abs(s[i] - actual[i]) > 1e-8 * scale)
            throw DomainError(std::string("validate_block: ") + which +
                              " block spectrum deviates from the intended one");
}

Matrix random_gaussian(int rows, int cols, SplitMix64& rng) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.next_normal();
    return m;
}

// modified Gram-Schmidt with one re-orthogonalization pass; redraws a column
// in the (practically impossible) rank-deficient case
Matrix random_orthogonal(int n, SplitMix64& rng) {
    Matrix q(n, n);
    for (int j = 0; j < n; ++j) {
        std::vector<double> v(n);
        for (;;) {
            for (int i = 0; i < n; ++i) v[i] = rng.next_normal();
            for (int pass = 0; pass < 2; ++pass)
                for (int k = 0; k < j; ++k) {
                    double dot = 0.0;
                    for (int i = 0; i < n; ++i) dot += q(i, k) * v[i];
                    for (int i = 0; i < n; ++i) v[i] -= dot * q(i, k);
                }
            double nrm = 0.0;
            for (double x : v) nrm += x * x;
            nrm = std::sqrt(nrm);
            if (nrm > 1e-8) {
                for (int i = 0; i < n; ++i) q(i, j) = v[i] / nrm;
                break;
            }
        }
    }
    return q;
}

// Q diag(evals) Q^T, filled symmetrically
SymMatrix orthogonal_conjugate(const Matrix& q, const std::vector<double>& evals) {
    const int n = q.rows();
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += q(i, k) * evals[k] * q(j, k);
            a(i, j) = s;
            a(j, i) = s;
        }
    return symmetric_unchecked(std::move(a));
}

double lerp(double lo, double hi, double u) { return lo + (hi - lo) * u; }

struct Classified {
    std::vector<int> window;
    std::vector<int> stray;    // inside the gap but off-window
    std::vector<int> exterior;
    int boundary = 0;
};

Classified classify_spectrum(const std::vector<double>& eigs, double gap_lo,
                             double gap_hi, double wlo, double whi) {
    Classified c;
    for (int i = 0; i < static_cast<int>(eigs.size()); ++i) {
        const double z = eigs[i];
        if (z <= gap_lo + kEdgeTol || z >= gap_hi - kEdgeTol) {
            c.exterior.push_back(i);
        } else if (std::abs(z - wlo) <= kEdgeTol || std::abs(z - whi) <= kEdgeTol) {
            ++c.boundary;
        } else if (z > wlo && z < whi) {
            c.window.push_back(i);
        } else {
            c.stray.push_back(i);
        }
    }
    return c;
}

Matrix leading_basis(int n, int n0) {
    Matrix basis(n, n0);
    for (int i = 0; i < n0; ++i) basis(i, i) = 1.0;
    return basis;
}

double ratio_to_tightest(double tan_theta, const std::vector<BoundValue>& bounds) {
    double tightest = std::numeric_limits<double>::infinity();
    for (const BoundValue& b : bounds)
        if (b.valid) tightest = std::min(tightest, b.value);
    if (!std::isfinite(tightest)) return 0.0;
    if (tightest <= 0.0)
        return tan_theta <= 1e-8 ? 0.0 : std::numeric_limits<double>::infinity();
    return tan_theta / tightest;
}

} // namespace

void validate_block(const BlockMatrix& m) {
    const int n0 = m.n0();
    const int n1 = m.n1();
    if (n0 < 1 || n1 < 1)
        throw DimensionError("validate_block: empty diagonal block");
    if (m.b.rows() != n0 || m.b.cols() != n1)
        throw DimensionError("validate_block: coupling block shape mismatch");

    const EigenDecomposition e0 = eigensolve(m.a0);
    const EigenDecomposition e1 = eigensolve(m.a1);
    check_spectrum_match(m.sigma0, e0.eigenvalues, "sigma0");
    check_spectrum_match(m.sigma1, e1.eigenvalues, "sigma1");

    if (m.disposition == Disposition::InGap) {
        if (!m.geometry)
            throw DomainError("validate_block: in-gap instance without gap geometry");
        const GapGeometry& g = *m.geometry;
        for (double v : e0.eigenvalues)
            if (!(v > g.gap_lo && v < g.gap_hi))
                throw DomainError("validate_block: sigma0 leaves the gap interior");
        double lo_hit = std::numeric_limits<double>::infinity();
        double hi_hit = std::numeric_limits<double>::infinity();
        for (double v : e1.eigenvalues) {
            if (v > g.gap_lo + 1e-10 && v < g.gap_hi - 1e-10)
                throw DomainError("validate_block: sigma1 intersects the open gap");
            lo_hit = std::min(lo_hit, std::abs(v - g.gap_lo));
            hi_hit = std::min(hi_hit, std::abs(v - g.gap_hi));
        }
        if (lo_hit > 1e-10 || hi_hit > 1e-10)
            throw DomainError("validate_block: gap endpoints not attained by sigma1");
        const double dist = set_dist(e0.eigenvalues, e1.eigenvalues);
        if (std::abs(dist - g.d) > 1e-10)
            throw DomainError("validate_block: dist(sigma0, sigma1) differs from geometry.d");
    } else if (m.disposition == Disposition::Subordinated) {
        if (!(e0.eigenvalues.back() < e1.eigenvalues.front()))
            throw DomainError("validate_block: components are not subordinated");
    }
}

SymMatrix assemble(const BlockMatrix& m) {
    const int n0 = m.n0();
    const int n1 = m.n1();
    if (m.b.rows() != n0 || m.b.cols() != n1)
        throw DimensionError("assemble: coupling block shape mismatch");
    Matrix full(n0 + n1, n0 + n1);
    for (int i = 0; i < n0; ++i)
        for (int j = 0; j < n0; ++j) full(i, j) = m.a0(i, j);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j) full(n0 + i, n0 + j) = m.a1(i, j);
    for (int i = 0; i < n0; ++i)
        for (int j = 0; j < n1; ++j) {
            full(i, n0 + j) = m.b(i, j);
            full(n0 + j, i) = m.b(i, j);
        }
    return symmetric_unchecked(std::move(full));
}

BlockMatrix from_witness(const WitnessMatrix3& w) {
    w.validate();
    Matrix a0(1, 1);
    a0(0, 0) = w.lambda;
    Matrix b(1, 2);
    b(0, 0) = w.b_minus;
    b(0, 1) = w.b_plus;
    BlockMatrix m;
    m.a0 = symmetric_unchecked(std::move(a0));
    const double diag[2] = {w.gamma_minus, w.gamma_plus};
    m.a1 = SymMatrix::diagonal(diag);
    m.b = std::move(b);
    m.sigma0 = {w.lambda};
    m.sigma1 = {w.gamma_minus, w.gamma_plus};
    m.disposition = Disposition::InGap;
    m.geometry = make_geometry(w.gamma_minus, w.gamma_plus, w.dist());
    return m;
}

BlockMatrix random_instance(int n0, int n1, const GapGeometry& g, double vnorm,
                            std::uint64_t seed) {
    if (n0 < 1)
        throw DomainError("random_instance: need n0 >= 1");
    if (n1 < 2)
        throw DomainError("random_instance: need n1 >= 2 (both gap endpoints)");
    if (!(vnorm >= 0.0) || !(vnorm * vnorm < g.d * g.delta_len))
        throw DomainError("random_instance: need 0 <= vnorm < sqrt(d * |gap|)");

    SplitMix64 rng(seed);
    const double inner_lo = g.gap_lo + g.d;
    const double inner_hi = g.gap_hi - g.d;

    std::vector<double> sigma0(n0);
    for (double& v : sigma0) v = lerp(inner_lo, inner_hi, rng.next_uniform());
    std::sort(sigma0.begin(), sigma0.end());
    if (rng.next_u64() & 1)
        sigma0.back() = inner_hi; // attain d at the upper endpoint
    else
        sigma0.front() = inner_lo;
    std::sort(sigma0.begin(), sigma0.end());

    std::vector<double> sigma1(n1);
    sigma1[0] = g.gap_lo;
    sigma1[1] = g.gap_hi;
    for (int k = 2; k < n1; ++k)
        sigma1[k] = (rng.next_u64() & 1)
                        ? g.gap_hi + g.delta_len * rng.next_uniform()
                        : g.gap_lo - g.delta_len * rng.next_uniform();
    std::sort(sigma1.begin(), sigma1.end());

    BlockMatrix m;
    {
        const Matrix q0 = random_orthogonal(n0, rng);
        m.a0 = orthogonal_conjugate(q0, sigma0);
        const Matrix q1 = random_orthogonal(n1, rng);
        m.a1 = orthogonal_conjugate(q1, sigma1);
    }
    Matrix b = random_gaussian(n0, n1, rng);
    if (vnorm == 0.0) {
        b = Matrix(n0, n1);
    } else {
        const double s = spectral_norm(b);
        if (!(s > 0.0))
            throw ConvergenceError("random_instance: degenerate coupling draw");
        const double c = vnorm / s;
        for (int i = 0; i < n0; ++i)
            for (int j = 0; j < n1; ++j) b(i, j) *= c;
    }
    m.b = std::move(b);
    m.sigma0 = std::move(sigma0);
    m.sigma1 = std::move(sigma1);
    m.disposition = Disposition::InGap;
    m.geometry = g;
    return m;
}

BlockMatrix random_subordinated_instance(int n0, int n1, double d, double vnorm,
                                         std::uint64_t seed) {
    if (n0 < 1 || n1 < 1)
        throw DomainError("random_subordinated_instance: need n0 >= 1 and n1 >= 1");
    if (!(d > 0.0))
        throw DomainError("random_subordinated_instance: d must be positive");
    if (!(vnorm >= 0.0) || !std::isfinite(vnorm))
        throw DomainError("random_subordinated_instance: vnorm must be a nonnegative real");

    SplitMix64 rng(seed);
    std::vector<double> sigma0(n0);
    for (double& v : sigma0) v = lerp(-2.0 * d, 0.0, rng.next_uniform());
    std::sort(sigma0.begin(), sigma0.end());
    sigma0.back() = 0.0;

    std::vector<double> sigma1(n1);
    for (double& v : sigma1) v = lerp(d, 3.0 * d, rng.next_uniform());
    std::sort(sigma1.begin(), sigma1.end());
    sigma1.front() = d;

    BlockMatrix m;
    {
        const Matrix q0 = random_orthogonal(n0, rng);
        m.a0 = orthogonal_conjugate(q0, sigma0);
        const Matrix q1 = random_orthogonal(n1, rng);
        m.a1 = orthogonal_conjugate(q1, sigma1);
    }
    Matrix b = random_gaussian(n0, n1, rng);
    if (vnorm == 0.0) {
        b = Matrix(n0, n1);
    } else {
        const double s = spectral_norm(b);
        if (!(s > 0.0))
            throw ConvergenceError("random_subordinated_instance: degenerate coupling draw");
        const double c = vnorm / s;
        for (int i = 0; i < n0; ++i)
            for (int j = 0; j < n1; ++j) b(i, j) *= c;
    }
    m.b = std::move(b);
    m.sigma0 = std::move(sigma0);
    m.sigma1 = std::move(sigma1);
    m.disposition = Disposition::Subordinated;
    m.geometry = std::nullopt;
    return m;
}

CertifyResult certify(const BlockMatrix& m) {
    if (m.disposition != Disposition::InGap)
        throw DispositionError("certify: instance is not an in-gap disposition");
    validate_block(m);
    const GapGeometry& g = *m.geometry;
    const double d = g.d;
    const double D = g.delta_len;

    const EigenDecomposition eig = eigensolve(assemble(m));
    const double vnorm = spectral_norm(m.b);

    const double s0_lo = *std::min_element(m.sigma0.begin(), m.sigma0.end());
    const double s0_hi = *std::max_element(m.sigma0.begin(), m.sigma0.end());
    const double wlo = s0_lo - d;
    const double whi = s0_hi + d;

    const Classified cls =
        classify_spectrum(eig.eigenvalues, g.gap_lo, g.gap_hi, wlo, whi);

    std::vector<int> in_gap = cls.window;
    in_gap.insert(in_gap.end(), cls.stray.begin(), cls.stray.end());
    std::sort(in_gap.begin(), in_gap.end());

    // delta for the a posteriori bound: perturbed in-gap set against the
    // unperturbed sigma1
    double delta = std::numeric_limits<double>::infinity();
    for (int idx : in_gap)
        delta = std::min(delta, dist_to(m.sigma1, eig.eigenvalues[idx]));

    const Matrix basis = leading_basis(m.n0() + m.n1(), m.n0());

    CertifyResult out;
    out.vnorm = vnorm;
    out.delta = delta;
    for (int idx : in_gap) {
        AngleReport r;
        r.eigenvalue = eig.eigenvalues[idx];
        r.in_window =
            std::find(cls.window.begin(), cls.window.end(), idx) != cls.window.end();
        const std::vector<double> f = eig.eigenvectors.column(idx);
        r.tan_theta = angle_to_subspace(f, basis).tan_theta;

        BoundValue bxi{BoundKind::XiBound, validity(BoundKind::XiBound, g, vnorm), 0.0, {}};
        if (bxi.valid) {
            bxi.value = std::sqrt(xi(D, d, vnorm));
            bxi.branch = xi_branch(D, d, vnorm);
        }
        BoundValue bap{BoundKind::AprioriTanTheta,
                       validity(BoundKind::AprioriTanTheta, g, vnorm), 0.0, {}};
        if (bap.valid) bap.value = vnorm / d;
        BoundValue bpo{BoundKind::Aposteriori, delta > 0.0 && std::isfinite(delta), 0.0, {}};
        if (bpo.valid) bpo.value = vnorm / delta;
        r.bounds = {bxi, bap, bpo};

        r.all_satisfied = true;
        for (const BoundValue& bv : r.bounds)
            if (bv.valid && !(r.tan_theta <= bv.value + 1e-8)) r.all_satisfied = false;
        r.tightest_ratio = ratio_to_tightest(r.tan_theta, r.bounds);
        out.reports.push_back(std::move(r));
    }

    double separation = std::numeric_limits<double>::infinity();
    for (int i : in_gap)
        for (int j : cls.exterior)
            separation = std::min(
                separation, std::abs(eig.eigenvalues[i] - eig.eigenvalues[j]));

    out.gap = GapReport{cls.stray.empty(),
                        static_cast<int>(cls.window.size()),
                        static_cast<int>(cls.exterior.size()),
                        static_cast<int>(cls.stray.size()),
                        cls.boundary,
                        separation};
    return out;
}

SubordinatedResult certify_subordinated(const BlockMatrix& m) {
    if (m.disposition != Disposition::Subordinated)
        throw DispositionError("certify_subordinated: instance is not subordinated");
    validate_block(m);
    const double s0_hi = *std::max_element(m.sigma0.begin(), m.sigma0.end());
    const double s1_lo = *std::min_element(m.sigma1.begin(), m.sigma1.end());
    if (!(s0_hi < s1_lo))
        throw DispositionError("certify_subordinated: sup sigma0 must be below inf sigma1");
    const double d = s1_lo - s0_hi;

    const EigenDecomposition eig = eigensolve(assemble(m));
    const double vnorm = spectral_norm(m.b);
    const double bound_angle = tan_2theta_bound(d, vnorm);
    const double bound_tan = std::tan(bound_angle);
    const Matrix basis = leading_basis(m.n0() + m.n1(), m.n0());

    SubordinatedResult out;
    out.vnorm = vnorm;
    out.stray_count = 0;
    for (int i = 0; i < static_cast<int>(eig.eigenvalues.size()); ++i) {
        const double z = eig.eigenvalues[i];
        if (z > s0_hi + kEdgeTol && z < s1_lo - kEdgeTol) ++out.stray_count;
        if (z > s0_hi + kEdgeTol) continue;
        AngleReport r;
        r.eigenvalue = z;
        r.in_window = true;
        const SubspaceAngle ang = angle_to_subspace(eig.eigenvectors.column(i), basis);
        r.tan_theta = ang.tan_theta;
        r.bounds = {BoundValue{BoundKind::Tan2Theta, true, bound_tan, {}}};
        r.all_satisfied = ang.theta <= bound_angle + 1e-8;
        r.tightest_ratio = ratio_to_tightest(r.tan_theta, r.bounds);
        out.reports.push_back(std::move(r));
    }
    out.interval_clear = out.stray_count == 0;
    return out;
}

std::vector<AposterioriRow> sweep_aposteriori(double d, int steps) {
    if (!(d > 0.0))
        throw DomainError("sweep_aposteriori: d must be positive");
    if (steps < 2)
        throw DomainError("sweep_aposteriori: need at least 2 steps");
    const double bmax = 0.999 * std::sqrt(2.0) * d;
    std::vector<AposterioriRow> rows;
    rows.reserve(steps);
    for (int k = 0; k < steps; ++k) {
        const double b = bmax * k / (steps - 1);
        const RemdelReport r = build_remdel_example(d, b);
        rows.push_back({b, r.delta, b / d, b == 0.0 ? 0.0 : b / r.delta});
    }
    return rows;
}

} // namespace sac
