// fraclab command line: simulate self-similar fields, estimate fractal
// dimensions and packing-dimension profiles of their images, and run the
// built-in theorem verification suite.
//
// exit codes: 0 = all passes, 1 = a verification failed, 2 = usage/config error

#include "fraclab/harness.hpp"
#include "fraclab/probes.hpp"
#include "fraclab/profiles.hpp"
#include "fraclab/serialize.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

namespace {

namespace fs = std::filesystem;
using namespace fraclab;

ExperimentConfig load_config(const std::string& path) {
    return parse_config(read_file(path));
}

int cmd_simulate(const std::string& config_path, std::uint64_t seed, const std::string& out,
                 const std::string& format) {
    ExperimentConfig cfg = load_config(config_path);
    if (seed) cfg.master_seed = seed;
    fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
    fs::create_directories(dir);
    for (std::size_t rep = 0; rep < cfg.replication; ++rep) {
        Seed s{cfg.master_seed, rep};
        SamplePath path = simulate_field(cfg.field, s);
        char name[64];
        std::snprintf(name, sizeof(name), "path_%03zu.csv", rep);
        write_file((dir / name).string(), path_csv(path));
        if (format == "json") {
            json meta;
            meta["spec"] = to_json(path.spec);
            meta["seed"] = to_json(s);
            std::snprintf(name, sizeof(name), "path_%03zu.json", rep);
            write_file((dir / name).string(), meta.dump(2) + "\n");
        }
    }
    std::cout << "wrote " << cfg.replication << " path(s) to " << dir.string() << "\n";
    return 0;
}

int cmd_dims(const std::string& config_path, std::uint64_t seed, const std::string& out) {
    ExperimentConfig cfg = load_config(config_path);
    if (seed) cfg.master_seed = seed;
    cfg.out_dir = out;
    CaseOutcome res = run_experiment(cfg);
    std::cout << res.report["aggregates"].dump(2) << "\n";
    return 0;
}

int cmd_profile(const std::string& config_path, std::uint64_t seed, const std::string& out) {
    ExperimentConfig cfg = load_config(config_path);
    if (seed) cfg.master_seed = seed;
    // profile of the parameter set E itself
    DiscreteMeasure mu;
    switch (cfg.set.kind) {
        case SetKind::interval: mu = interval_set(4096).measure; break;
        case SetKind::cantor:
            mu = cantor_set(CantorSpec::homogeneous(cfg.set.m, cfg.set.r, cfg.set.depth, 1)).measure;
            break;
        case SetKind::two_phase: {
            auto tp = two_phase_cantor(CantorSpec::homogeneous(cfg.set.m, cfg.set.r, cfg.set.depth, 1),
                                       CantorSpec::homogeneous(cfg.set.m_b, cfg.set.r_b, cfg.set.depth, 1),
                                       cfg.set.growth);
            mu = tp.measure;
            break;
        }
        case SetKind::point: {
            mu.support.dim = 1;
            mu.support.coords = {cfg.set.at};
            mu.masses = {1.0};
            mu.total_mass = 1.0;
            break;
        }
    }
    ProfileOptions opt;
    opt.n_probe = cfg.est.n_probe;
    if (!cfg.est.radii.empty()) opt.radii = cfg.est.radii;
    ProfileCurve curve = profile_curve(mu, default_s_grid(1, 32), opt, Seed{cfg.master_seed, 11});
    // an inhomogeneous set's natural measure only bounds the profile from below
    if (cfg.set.kind == SetKind::two_phase) curve.kind = "set (profile lower bound)";
    std::string csv = profile_csv(curve);
    if (!out.empty()) {
        fs::create_directories(out);
        write_file((fs::path(out) / "profile.csv").string(), csv);
        std::cout << "wrote " << (fs::path(out) / "profile.csv").string() << "\n";
    } else {
        std::cout << csv;
    }
    return 0;
}

int cmd_probe(const std::string& config_path, std::uint64_t seed, const std::string& out) {
    ExperimentConfig cfg = load_config(config_path);
    if (seed) cfg.master_seed = seed;
    ProbeReport rep;
    Seed s{cfg.master_seed, 77};
    if (cfg.probe.condition == "c1")
        rep = probe_c1(cfg.field, cfg.probe.exponent, {}, {}, cfg.probe.reps, s);
    else if (cfg.probe.condition == "c2")
        rep = probe_c2(cfg.field, cfg.probe.exponent, {}, cfg.probe.pair_count, cfg.probe.reps, s);
    else if (cfg.probe.condition == "fourier")
        rep = fourier_c2_criterion(cfg.field, cfg.probe.exponent, {}, {}, cfg.probe.mc_reps, {}, s);
    else
        throw std::invalid_argument("probe: condition must be c1, c2 or fourier");
    std::cout << to_json(rep).dump(2) << "\n";
    if (!out.empty()) {
        fs::create_directories(out);
        write_file((fs::path(out) / "probe.json").string(), to_json(rep).dump(2) + "\n");
        write_file((fs::path(out) / "probe_curves.csv").string(), probe_curves_csv(rep));
    }
    return rep.violated() ? 1 : 0;
}

void print_case(const CaseOutcome& res) {
    std::printf("%s %-26s estimate=%.4f predicted=%.4f tol=%.2f (%s) [%.1fs]%s\n",
                res.pass ? "PASS" : "FAIL", res.case_id.c_str(), res.estimate, res.predicted,
                res.tolerance, res.formula.c_str(), res.runtime_seconds,
                res.incomplete ? " INCOMPLETE" : "");
}

int cmd_verify(const std::string& case_id, double budget, std::uint64_t seed,
               const std::string& out) {
    CaseOutcome res = verify_theorem(case_id, budget, seed, out);
    print_case(res);
    return res.pass ? 0 : 1;
}

int cmd_suite(const std::string& only_case, double budget, std::uint64_t seed,
              const std::string& out) {
    bool all_pass = true;
    if (!only_case.empty()) return cmd_verify(only_case, budget, seed, out);
    for (const auto& id : registry_case_ids()) {
        CaseOutcome res = verify_theorem(id, budget, seed, out);
        print_case(res);
        all_pass = all_pass && res.pass;
    }
    std::uint64_t ms = seed ? seed : 20260801ULL;
    for (auto fn : {profile_identity_suite, tail_exponent_suite, fourier_equivalence_suite,
                    property_suite}) {
        SuiteResult r = fn(ms, out);
        std::printf("%s %-26s %s [%.1fs]\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str(), r.runtime_seconds);
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fraclab: dimension laboratory for self-similar random field images"};
    app.require_subcommand(1);

    std::string config_path, out_dir, case_id, format = "csv";
    std::uint64_t seed = 0;
    double budget = 0;

    auto* sim = app.add_subcommand("simulate", "simulate sample paths from a config");
    sim->add_option("--config", config_path, "config file")->required();
    sim->add_option("--seed", seed, "master seed override");
    sim->add_option("--out", out_dir, "output directory");
    sim->add_option("--format", format, "csv or json metadata")->check(CLI::IsMember({"csv", "json"}));

    auto* dims = app.add_subcommand("dims", "image dimension estimates for a config");
    dims->add_option("--config", config_path, "config file")->required();
    dims->add_option("--seed", seed, "master seed override");
    dims->add_option("--out", out_dir, "output directory");

    auto* prof = app.add_subcommand("profile", "packing dimension profile of the config's set");
    prof->add_option("--config", config_path, "config file")->required();
    prof->add_option("--seed", seed, "master seed override");
    prof->add_option("--out", out_dir, "output directory");

    auto* prb = app.add_subcommand("probe", "run a condition probe from a config");
    prb->add_option("--config", config_path, "config file")->required();
    prb->add_option("--seed", seed, "master seed override");
    prb->add_option("--out", out_dir, "output directory");

    auto* ver = app.add_subcommand("verify", "verify one registered theorem case");
    ver->add_option("--case", case_id, "registered case id")->required();
    ver->add_option("--budget", budget, "budget seconds (0 = none)");
    ver->add_option("--seed", seed, "master seed override");
    ver->add_option("--out", out_dir, "output directory");

    auto* ste = app.add_subcommand("suite", "run the full verification suite");
    ste->add_option("--case", case_id, "restrict to one registered case");
    ste->add_option("--budget", budget, "per-case budget seconds");
    ste->add_option("--seed", seed, "master seed override");
    ste->add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sim->parsed()) return cmd_simulate(config_path, seed, out_dir, format);
        if (dims->parsed()) return cmd_dims(config_path, seed, out_dir);
        if (prof->parsed()) return cmd_profile(config_path, seed, out_dir);
        if (prb->parsed()) return cmd_probe(config_path, seed, out_dir);
        if (ver->parsed()) return cmd_verify(case_id, budget, seed, out_dir);
        if (ste->parsed()) return cmd_suite(case_id, budget, seed, out_dir);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
