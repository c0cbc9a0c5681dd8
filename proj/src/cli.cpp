#include "sac/cli.hpp"

#include "sac/blockmodel.hpp"
#include "sac/bounds.hpp"
#include "sac/errors.hpp"
#include "sac/io.hpp"
#include "sac/rng.hpp"
#include "sac/witness.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace sac {

namespace {

// dims used for the randomized trials inside `sweep`
constexpr int kSweepN0 = 2;
constexpr int kSweepN1 = 6;

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

BoundValue evaluate_kind(BoundKind kind, const GapGeometry& g, double b) {
    BoundValue bv{kind, false, 0.0, {}};
    switch (kind) {
        case BoundKind::XiBound:
            bv.valid = validity(kind, g, b);
            if (bv.valid) {
                bv.value = std::sqrt(xi(g.delta_len, g.d, b));
                bv.branch = xi_branch(g.delta_len, g.d, b);
            }
            break;
        case BoundKind::AprioriTanTheta:
            bv.valid = validity(kind, g, b);
            if (bv.valid) bv.value = apriori_tan_theta(g.d, b);
            break;
        case BoundKind::Kappa:
            bv.valid = validity(kind, g, b);
            if (bv.valid) bv.value = std::tan(0.5 * std::atan(kappa(g.delta_len, g.d, b)));
            break;
        case BoundKind::Tan2Theta:
            bv.valid = true;
            bv.value = std::tan(tan_2theta_bound(g.d, b));
            break;
        case BoundKind::Aposteriori:
            // needs the perturbed spectrum; cannot be evaluated from (D, d, b)
            bv.valid = false;
            break;
    }
    return bv;
}

Json instance_report_json(const CertifyResult& res) {
    Json j = to_json(res);
    int violations = 0;
    for (const AngleReport& r : res.reports)
        if (!r.all_satisfied) ++violations;
    j["violations"] = violations;
    return j;
}

} // namespace

std::string cmd_bound(double D, double d, double b,
                      const std::vector<BoundKind>& kinds) {
    const GapGeometry g = make_geometry(-0.5 * D, 0.5 * D, d);
    std::vector<BoundValue> values;
    if (kinds.empty()) {
        values = best_bound(g, b);
    } else {
        for (BoundKind k : kinds) values.push_back(evaluate_kind(k, g, b));
        std::stable_sort(values.begin(), values.end(),
                         [](const BoundValue& a, const BoundValue& c) {
                             if (a.valid != c.valid) return a.valid;
                             if (!a.valid) return false;
                             return a.value < c.value;
                         });
    }
    Json arr = Json::array();
    for (const BoundValue& bv : values) arr.push_back(to_json(bv));
    return dump(arr);
}

std::string cmd_witness(double D, double d, double b) {
    return dump(to_json(build_xi_witness(D, d, b)));
}

namespace {

VerifyOutcome finish_verify(Json instances, int violations, double max_ratio,
                            int boundary, bool all_split_ok) {
    Json root;
    root["instances"] = std::move(instances);
    Json summary;
    summary["instances"] = root["instances"].size();
    summary["violations"] = violations;
    summary["max_tightest_ratio"] = json_number(max_ratio);
    summary["boundary_skipped"] = boundary;
    summary["all_split_ok"] = all_split_ok;
    root["summary"] = std::move(summary);
    return {dump(root), violations};
}

} // namespace

VerifyOutcome cmd_verify_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw SchemaError("verify: cannot open input file '" + path + "'");
    Json parsed;
    try {
        in >> parsed;
    } catch (const Json::exception& e) {
        throw SchemaError(std::string("verify: malformed JSON: ") + e.what());
    }
    const BlockMatrix m = block_matrix_from_json(parsed);
    const CertifyResult res = certify(m);

    Json instances = Json::array();
    Json rep = instance_report_json(res);
    const int violations = rep["violations"].get<int>();
    instances.push_back(std::move(rep));

    double max_ratio = 0.0;
    for (const AngleReport& r : res.reports)
        max_ratio = std::max(max_ratio, r.tightest_ratio);
    return finish_verify(std::move(instances), violations, max_ratio,
                         res.gap.boundary_count, res.gap.split_ok);
}

VerifyOutcome cmd_verify_random(int n0, int n1, double D, double d, double vnorm,
                                std::uint64_t seed, int trials) {
    if (trials < 1)
        throw DomainError("verify: need at least one trial");
    const GapGeometry g = make_geometry(-0.5 * D, 0.5 * D, d);
    Json instances = Json::array();
    int violations = 0;
    int boundary = 0;
    bool all_split_ok = true;
    double max_ratio = 0.0;
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t inst_seed = derive_seed(seed, static_cast<std::uint64_t>(t));
        const BlockMatrix m = random_instance(n0, n1, g, vnorm, inst_seed);
        const CertifyResult res = certify(m);
        Json rep = instance_report_json(res);
        rep["seed"] = inst_seed;
        violations += rep["violations"].get<int>();
        boundary += res.gap.boundary_count;
        all_split_ok = all_split_ok && res.gap.split_ok;
        for (const AngleReport& r : res.reports)
            max_ratio = std::max(max_ratio, r.tightest_ratio);
        instances.push_back(std::move(rep));
    }
    return finish_verify(std::move(instances), violations, max_ratio, boundary,
                         all_split_ok);
}

std::string cmd_sweep(double D, double d, double bmax, int steps, int trials,
                      std::uint64_t seed) {
    const GapGeometry g = make_geometry(-0.5 * D, 0.5 * D, d);
    if (!(bmax >= 0.0) || !(bmax * bmax < d * D))
        throw DomainError("sweep: need 0 <= bmax < sqrt(d*D)");
    if (steps < 2)
        throw DomainError("sweep: need at least 2 steps");
    if (trials < 0)
        throw DomainError("sweep: trials must be nonnegative");

    std::ostringstream csv;
    csv << "b,sqrt_xi,apriori,kappa_tan,max_achieved_tan,delta_remdel,aposteriori\n";
    for (int k = 0; k < steps; ++k) {
        const double b = bmax * k / (steps - 1);
        const double sqrt_xi = std::sqrt(xi(D, d, b));

        std::string apriori;
        if (validity(BoundKind::AprioriTanTheta, g, b))
            apriori = format_double(apriori_tan_theta(d, b));
        std::string kappa_tan;
        if (validity(BoundKind::Kappa, g, b))
            kappa_tan = format_double(std::tan(0.5 * std::atan(kappa(D, d, b))));

        double achieved = 0.0;
        for (int t = 0; t < trials; ++t) {
            const std::uint64_t inst_seed =
                derive_seed(derive_seed(seed, static_cast<std::uint64_t>(k)),
                            static_cast<std::uint64_t>(t));
            const BlockMatrix m = random_instance(kSweepN0, kSweepN1, g, b, inst_seed);
            const CertifyResult res = certify(m);
            for (const AngleReport& r : res.reports)
                achieved = std::max(achieved, r.tan_theta);
        }
        if (b > 0.0)
            achieved = std::max(achieved, build_xi_witness(D, d, b).tan_theta);

        std::string delta_remdel;
        std::string aposteriori;
        if (b * b < 2.0 * (d * d)) {
            const RemdelReport r = build_remdel_example(d, b);
            delta_remdel = format_double(r.delta);
            aposteriori = format_double(b == 0.0 ? 0.0 : b / r.delta);
        }

        csv << format_double(b) << ',' << format_double(sqrt_xi) << ',' << apriori
            << ',' << kappa_tan << ',' << format_double(achieved) << ','
            << delta_remdel << ',' << aposteriori << '\n';
    }
    return csv.str();
}

namespace {

void write_output(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw SchemaError("cannot open output file '" + out_path + "'");
    out << payload;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("SAC_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw DomainError("SAC_SEED is not a valid unsigned integer");
        }
    }
    return 1;
}

} // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"rotation-angle bounds for gapped self-adjoint perturbations"};
    app.require_subcommand(1);

    double D = 0.0, d = 0.0, b = 0.0, vnorm = 0.0, bmax = 0.0;
    int n0 = 1, n1 = 2, steps = 2, trials = 1;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out_path;
    std::string input_path;
    std::vector<std::string> kind_names;
    bool use_random = false;

    CLI::App* cb = app.add_subcommand("bound", "evaluate the closed-form bounds");
    cb->add_option("--D", D, "gap length")->required();
    cb->add_option("--d", d, "spectral distance")->required();
    cb->add_option("--b", b, "coupling norm")->required();
    cb->add_option("--kinds", kind_names,
                   "bound kinds to evaluate (xi, apriori, kappa, tan2theta, aposteriori)");
    cb->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* cw = app.add_subcommand("witness", "construct the extremal 3x3 matrix");
    cw->add_option("--D", D, "gap length")->required();
    cw->add_option("--d", d, "spectral distance")->required();
    cw->add_option("--b", b, "coupling norm")->required();
    cw->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* cv = app.add_subcommand("verify", "certify instances against the bounds");
    cv->add_option("input", input_path, "instance JSON file");
    cv->add_flag("--random", use_random, "generate random instances instead");
    cv->add_option("--n0", n0, "dimension of the in-gap block");
    cv->add_option("--n1", n1, "dimension of the outer block");
    cv->add_option("--D", D, "gap length");
    cv->add_option("--d", d, "spectral distance");
    cv->add_option("--vnorm", vnorm, "coupling norm");
    cv->add_option("--seed", seed, "base seed (default: SAC_SEED or 1)");
    cv->add_option("--trials", trials, "number of random instances");
    cv->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* cs = app.add_subcommand("sweep", "bound curves over a coupling grid (CSV)");
    cs->add_option("--D", D, "gap length")->required();
    cs->add_option("--d", d, "spectral distance")->required();
    cs->add_option("--bmax", bmax, "largest coupling norm")->required();
    cs->add_option("--steps", steps, "grid rows")->required();
    cs->add_option("--trials", trials, "random instances per row");
    cs->add_option("--seed", seed, "base seed (default: SAC_SEED or 1)");
    cs->add_option("--out", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
        seed_given = cv->count("--seed") > 0 || cs->count("--seed") > 0;
        if (!seed_given) seed = default_seed();

        if (cb->parsed()) {
            std::vector<BoundKind> kinds;
            for (const std::string& name : kind_names) {
                const auto k = parse_kind(name);
                if (!k) throw DomainError("bound: unknown kind '" + name + "'");
                kinds.push_back(*k);
            }
            write_output(cmd_bound(D, d, b, kinds), out_path);
            return 0;
        }
        if (cw->parsed()) {
            write_output(cmd_witness(D, d, b), out_path);
            return 0;
        }
        if (cv->parsed()) {
            VerifyOutcome outcome;
            if (use_random) {
                outcome = cmd_verify_random(n0, n1, D, d, vnorm, seed, trials);
            } else {
                if (input_path.empty())
                    throw DomainError("verify: provide an instance file or --random");
                outcome = cmd_verify_file(input_path);
            }
            write_output(outcome.payload, out_path);
            return outcome.violations > 0 ? 1 : 0;
        }
        if (cs->parsed()) {
            write_output(cmd_sweep(D, d, bmax, steps, trials, seed), out_path);
            return 0;
        }
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DispositionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}

} // namespace sac
