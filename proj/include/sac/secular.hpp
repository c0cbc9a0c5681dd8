#pragma once

namespace sac {

// The 3x3 model: sigma0 = {lambda} inside the gap (gamma_minus, gamma_plus)
// of sigma1 = {gamma_minus, gamma_plus}, coupled through the row
// (b_minus, b_plus). Valid iff lambda lies strictly inside the gap and
// b_norm() < sqrt(dist() * gap_len()).
struct WitnessMatrix3 {
    double lambda;
    double gamma_minus;
    double gamma_plus;
    double b_minus; // nonneg; couples lambda to gamma_minus
    double b_plus;  // nonneg; couples lambda to gamma_plus

    double b_norm() const;  // sqrt(b_minus^2 + b_plus^2)
    double dist() const;    // min(gamma_plus - lambda, lambda - gamma_minus)
    double gap_len() const; // gamma_plus - gamma_minus
    void validate() const;  // throws DomainError
};

// The unique eigenvalue z in the gap with its eigenvector written as
// (1, x_minus, x_plus) in the eigenbasis ordering (lambda, gamma-, gamma+);
// tan_theta = sqrt(x_minus^2 + x_plus^2).
struct SecularSolution {
    double z;
    double x_minus;
    double x_plus;
    double tan_theta;
    double residual; // |secular function| at z, centered frame
};

struct ZBracket {
    double z_min;
    double z_max;
};

// Enclosure of the in-gap eigenvalue:
//   z_min = lambda - |B| tan( arctan(2|B| / (gamma_plus - lambda)) / 2 )
//   z_max = lambda + |B| tan( arctan(2|B| / (lambda - gamma_minus)) / 2 )
ZBracket z_bracket(const WitnessMatrix3& w);

// Root of z = lambda + b_minus^2/(gamma + z) + b_plus^2/(z - gamma) in the
// centered frame (the gap is shifted to (-gamma, gamma) internally, and a
// negative centered lambda is handled by negating the matrix). Bracketed
// bisection down to 1e-14 * gap_len, then a few Newton steps.
SecularSolution solve_secular(const WitnessMatrix3& w);

// ---- centered-frame scalar analysis (gap = (-gamma, gamma)) ----

// phi(z) = (b^2 + 2(lambda - z)z) / (gamma^2 - z^2): squared eigenvector
// tail norm as a function of the in-gap eigenvalue position z.
double phi(double gamma, double lambda, double b, double z);

struct CriticalPoint {
    double z0;   // the single stationary point of phi in (-gamma, gamma)
    double beta; // coupling threshold: z0 <= z_min iff b <= beta
};

// Requires 0 <= lambda < gamma and 0 < b < sqrt(2*(gamma-lambda)*gamma).
CriticalPoint z0_and_beta(double gamma, double lambda, double b);

// max of phi over [z_min, z_max]: phi(z_min) when b <= beta, else phi(z0).
// Computed by evaluating phi at the maximizer, not from the closed form.
double max_phi(double gamma, double lambda, double b);

// The coupling split t = b_plus^2 / b^2 that places the in-gap eigenvalue
// exactly at z:  t = [(z-lambda)(z^2-gamma^2) - b^2 (z-gamma)] / (2 gamma b^2).
// Rounding outside [0,1] by at most 1e-12 is clamped and flagged.
struct SplitValue {
    double t;
    bool clamped;
};

SplitValue split_from_eigenvalue(double gamma, double lambda, double b, double z);

} // namespace sac
