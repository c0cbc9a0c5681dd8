#pragma once

#include "sac/geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sac {

// Command payload builders. Each returns the exact text the CLI writes; the
// CLI itself only parses flags, dispatches and picks exit codes, so library
// results and command outputs cannot drift apart.

// JSON array of evaluated bounds, valid ones first ascending by value.
std::string cmd_bound(double D, double d, double b,
                      const std::vector<BoundKind>& kinds);

// JSON witness report with the full 3x3 matrix entries.
std::string cmd_witness(double D, double d, double b);

struct VerifyOutcome {
    std::string payload; // JSON: per-instance reports plus a summary
    int violations;      // bound violations across all instances
};

VerifyOutcome cmd_verify_file(const std::string& path);
VerifyOutcome cmd_verify_random(int n0, int n1, double D, double d, double vnorm,
                                std::uint64_t seed, int trials);

// CSV over a b-grid: b, sqrt_xi, apriori, kappa_tan, max_achieved_tan,
// delta_remdel, aposteriori. Invalid bounds leave their cell empty.
std::string cmd_sweep(double D, double d, double bmax, int steps, int trials,
                      std::uint64_t seed);

// Exit codes: 0 ok, 1 bound violation, 2 domain error, 3 IO/schema error.
int run_cli(int argc, char** argv);

} // namespace sac
