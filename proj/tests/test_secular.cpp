#include "sac/secular.hpp"

#include "sac/bounds.hpp"
#include "sac/errors.hpp"
#include "sac/linalg.hpp"
#include "sac/rng.hpp"
#include "test_util.hpp"

#include "doctest.h"

#include <cmath>
#include <limits>

using namespace sac;
using namespace sac::test;

namespace {
// (sqrt(5)-1)/2: the in-gap root for the one-sided unit coupling at d = 1
const double kGolden = 0.5 * (std::sqrt(5.0) - 1.0);
}

TEST_CASE("witness matrix validation") {
    CHECK_THROWS_AS((WitnessMatrix3{1.5, -1.0, 1.0, 0.1, 0.1}.validate()), DomainError);
    CHECK_THROWS_AS((WitnessMatrix3{0.0, 1.0, -1.0, 0.1, 0.1}.validate()), DomainError);
    CHECK_THROWS_AS((WitnessMatrix3{0.0, -1.0, 1.0, -0.1, 0.1}.validate()), DomainError);
    // |B| = sqrt(2) = sqrt(d*|gap|) exactly: rejected (strict)
    CHECK_THROWS_AS((WitnessMatrix3{0.0, -1.0, 1.0, 1.0, 1.0}.validate()), DomainError);
    WitnessMatrix3 ok{0.0, -1.0, 1.0, 0.9, 0.9};
    CHECK_NOTHROW(ok.validate());
}

TEST_CASE("z_bracket: pinned values") {
    const ZBracket z0 = z_bracket({0.3, -1.0, 1.0, 0.0, 0.0});
    CHECK(z0.z_min == 0.3);
    CHECK(z0.z_max == 0.3);

    const double c = 1.0 / std::sqrt(2.0);
    const ZBracket z1 = z_bracket({0.0, -1.0, 1.0, c, c});
    CHECK(close(z1.z_min, -kGolden, 1e-14));
    CHECK(close(z1.z_max, kGolden, 1e-14));

    // one-sided coupling: the eigenvalue equals z_max = -1/2 + sqrt(5)/2
    const WitnessMatrix3 one_sided{0.0, -1.0, 1.0, 1.0, 0.0};
    const ZBracket z2 = z_bracket(one_sided);
    CHECK(close(z2.z_max, -0.5 + std::sqrt(1.25), 1e-14));
    CHECK(close(solve_secular(one_sided).z, z2.z_max, 1e-12));
}

TEST_CASE("solve_secular: pinned values") {
    SUBCASE("balanced coupling at the gap center") {
        const double c = 1.0 / std::sqrt(2.0);
        const SecularSolution s = solve_secular({0.0, -1.0, 1.0, c, c});
        CHECK(close(s.z, 0.0, 1e-14));
        CHECK(close(std::abs(s.x_minus), c, 1e-13));
        CHECK(close(std::abs(s.x_plus), c, 1e-13));
        CHECK(close(s.tan_theta, 1.0, 1e-13));
    }
    SUBCASE("zero coupling") {
        const SecularSolution s = solve_secular({0.4, -1.0, 1.0, 0.0, 0.0});
        CHECK(s.z == 0.4);
        CHECK(s.x_minus == 0.0);
        CHECK(s.x_plus == 0.0);
        CHECK(s.tan_theta == 0.0);
    }
    SUBCASE("one-sided coupling") {
        const SecularSolution s = solve_secular({0.0, -1.0, 1.0, 1.0, 0.0});
        CHECK(close(s.z, kGolden, 1e-13));
        CHECK(close(s.tan_theta, kGolden, 1e-13));
        // cross-check against the dense solver
        const EigenDecomposition e =
            eigensolve(dense_from_witness({0.0, -1.0, 1.0, 1.0, 0.0}));
        CHECK(close(e.eigenvalues[1], s.z, 1e-12));
    }
}

TEST_CASE("solve_secular: eigenvalue stays inside the bracket") {
    SplitMix64 rng(21);
    for (int i = 0; i < 1000; ++i) {
        const WitnessMatrix3 w = random_witness(rng);
        const ZBracket zb = z_bracket(w);
        const SecularSolution s = solve_secular(w);
        CHECK(s.z >= zb.z_min - 1e-12);
        CHECK(s.z <= zb.z_max + 1e-12);
        CHECK(s.z > w.gamma_minus);
        CHECK(s.z < w.gamma_plus);
        CHECK(s.residual <= 1e-12 * w.gap_len());
        CHECK(close(s.tan_theta, std::hypot(s.x_minus, s.x_plus), 1e-15));
    }
}

TEST_CASE("solve_secular agrees with the dense eigensolver") {
    SplitMix64 rng(22);
    for (int i = 0; i < 500; ++i) {
        const WitnessMatrix3 w = random_witness(rng);
        const SecularSolution s = solve_secular(w);
        const EigenDecomposition e = eigensolve(dense_from_witness(w));
        // the unique eigenvalue inside the gap
        int hits = 0;
        for (int k = 0; k < 3; ++k) {
            const double z = e.eigenvalues[k];
            if (z > w.gamma_minus && z < w.gamma_plus) {
                ++hits;
                CHECK(close_rel(z, s.z, 1e-9));
                const double v0 = e.eigenvectors(0, k);
                const double tan_dense =
                    std::hypot(e.eigenvectors(1, k), e.eigenvectors(2, k)) / std::abs(v0);
                CHECK(close_rel(tan_dense, s.tan_theta, 1e-9));
            }
        }
        CHECK(hits == 1);
    }
}

TEST_CASE("secular function is monotone on the gap") {
    SplitMix64 rng(23);
    for (int i = 0; i < 100; ++i) {
        const WitnessMatrix3 w = random_witness(rng);
        const double shift = 0.5 * (w.gamma_plus + w.gamma_minus);
        const double gamma = 0.5 * (w.gamma_plus - w.gamma_minus);
        const double lambda = w.lambda - shift;
        double prev = -std::numeric_limits<double>::infinity();
        for (int k = 1; k < 60; ++k) {
            const double z = -gamma + 2.0 * gamma * k / 60.0;
            const double g = z - lambda - w.b_minus * w.b_minus / (gamma + z) -
                             w.b_plus * w.b_plus / (z - gamma);
            CHECK(g > prev);
            prev = g;
        }
    }
}

TEST_CASE("z increases monotonically as the split moves toward the lower edge") {
    // with t = b_plus^2 / b^2 decreasing from 1 to 0, z climbs from z_min to z_max
    const double gamma = 1.0;
    const double lambda = 0.35;
    const double b = 0.9 * std::sqrt(2.0 * (gamma - lambda) * gamma);
    double prev = -2.0;
    for (int k = 40; k >= 0; --k) {
        const double t = static_cast<double>(k) / 40.0;
        const WitnessMatrix3 w{lambda, -gamma, gamma, std::sqrt(1.0 - t) * b,
                               std::sqrt(t) * b};
        const double z = solve_secular(w).z;
        CHECK(z > prev);
        prev = z;
    }
    const WitnessMatrix3 top{lambda, -gamma, gamma, 0.0, b};
    const WitnessMatrix3 bot{lambda, -gamma, gamma, b, 0.0};
    const ZBracket zb = z_bracket(top);
    CHECK(close(solve_secular(top).z, zb.z_min, 1e-12));
    CHECK(close(solve_secular(bot).z, zb.z_max, 1e-12));
}

TEST_CASE("split round-trips through the eigenvalue") {
    SplitMix64 rng(24);
    int tested = 0;
    while (tested < 400) {
        WitnessMatrix3 w = random_witness(rng);
        // centered symmetric frame with lambda >= 0 for the closed forms
        const double shift = 0.5 * (w.gamma_plus + w.gamma_minus);
        const double gamma = 0.5 * (w.gamma_plus - w.gamma_minus);
        const double lambda = std::abs(w.lambda - shift);
        const double b = w.b_norm();
        if (!(b > 1e-8)) continue;
        const double t_in = (w.b_plus * w.b_plus) / (b * b);
        WitnessMatrix3 wc{lambda, -gamma, gamma, std::sqrt(1.0 - t_in) * b,
                          std::sqrt(t_in) * b};
        const SecularSolution s = solve_secular(wc);
        const SplitValue sv = split_from_eigenvalue(gamma, lambda, b, s.z);
        CHECK(close(sv.t, t_in, 1e-10));
        ++tested;
    }
}

TEST_CASE("phi: pinned values and consistency with the solver") {
    // at the center with lambda = 0: phi(0) = b^2 / gamma^2
    CHECK(phi(2.0, 0.0, 1.0, 0.0) == doctest::Approx(0.25).epsilon(1e-15));

    // one-sided unit coupling point: phi(z) = (1 - 2 z^2)/(1 - z^2) = (3-sqrt(5))/2
    const double z = kGolden;
    CHECK(phi(1.0, 0.0, 1.0, z) ==
          doctest::Approx(0.5 * (3.0 - std::sqrt(5.0))).epsilon(1e-13));

    CHECK_THROWS_AS(phi(1.0, 0.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(phi(1.0, 0.0, 1.0, -1.2), DomainError);

    SplitMix64 rng(25);
    for (int i = 0; i < 400; ++i) {
        const WitnessMatrix3 w = random_witness(rng);
        const double shift = 0.5 * (w.gamma_plus + w.gamma_minus);
        const double gamma = 0.5 * (w.gamma_plus - w.gamma_minus);
        const SecularSolution s = solve_secular(w);
        CHECK(close(phi(gamma, w.lambda - shift, w.b_norm(), s.z - shift),
                    s.tan_theta * s.tan_theta, 1e-10));
    }
}

TEST_CASE("z0_and_beta") {
    SUBCASE("pinned values") {
        // lambda = 0: stationary point at the origin, beta = 0
        const CriticalPoint c0 = z0_and_beta(1.0, 0.0, 1.0);
        CHECK(c0.z0 == 0.0);
        CHECK(c0.beta == 0.0);

        // gamma = 2, lambda = 1 (D = 4, d = 1): beta = sqrt(2 - sqrt(2))
        const CriticalPoint c1 = z0_and_beta(2.0, 1.0, 1.0);
        CHECK(c1.beta == doctest::Approx(std::sqrt(2.0 - std::sqrt(2.0))).epsilon(1e-14));
        // and beta^2 equals the xi branch threshold computed the other way
        CHECK(close_rel(c1.beta * c1.beta, xi_branch_threshold(4.0, 1.0), 1e-13));
    }
    SUBCASE("domain") {
        CHECK_THROWS_AS(z0_and_beta(1.0, -0.1, 0.5), DomainError);
        CHECK_THROWS_AS(z0_and_beta(1.0, 1.0, 0.5), DomainError);
        CHECK_THROWS_AS(z0_and_beta(1.0, 0.0, 0.0), DomainError);
        CHECK_THROWS_AS(z0_and_beta(1.0, 0.5, 1.0), DomainError); // b = sqrt(2 d gamma)
    }
    SUBCASE("z0 < z_max always; z0 <= z_min exactly when b <= beta") {
        SplitMix64 rng(26);
        for (int i = 0; i < 2000; ++i) {
            const double gamma = 0.3 + 3.0 * rng.next_uniform();
            const double lambda = gamma * rng.next_uniform() * 0.999;
            const double d = gamma - lambda;
            const double b = 0.999 * std::sqrt(2.0 * d * gamma) * rng.next_uniform();
            if (!(b > 1e-12)) continue;
            const CriticalPoint cp = z0_and_beta(gamma, lambda, b);
            const double z_min = 0.5 * (gamma + lambda) - std::hypot(0.5 * d, b);
            const double z_max =
                -0.5 * d + std::hypot(0.5 * (gamma + lambda), b);
            CHECK(cp.z0 < z_max);
            if (b <= cp.beta)
                CHECK(cp.z0 <= z_min + 1e-12);
            else
                CHECK(cp.z0 > z_min - 1e-12);
        }
    }
}

TEST_CASE("max_phi equals xi on a grid over the domain") {
    // two routes to the same function: closed-form branches vs evaluating phi
    // at the maximizer
    for (int i = 1; i <= 50; ++i) {
        const double D = 0.4 + 9.6 * i / 50.0;
        const double gamma = 0.5 * D;
        for (int j = 1; j <= 50; ++j) {
            const double d = gamma * (j / 50.0); // exactly gamma at j = 50
            const double lambda = gamma - d;
            for (double frac : {0.15, 0.5, 0.9}) {
                const double b = frac * std::sqrt(d * D);
                const double via_phi = max_phi(gamma, lambda, b);
                const double via_xi = xi(D, d, b);
                CHECK(std::abs(via_phi - via_xi) <= 1e-12 * std::max(1.0, via_xi));
            }
        }
    }
}

TEST_CASE("max_phi: pinned values") {
    CHECK(max_phi(1.0, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(max_phi(2.0, 1.0, 0.5) ==
          doctest::Approx(3.0 - 2.0 * std::sqrt(2.0)).epsilon(1e-13));
}
