#include "fraclab/harness.hpp"

#include "fraclab/probes.hpp"
#include "fraclab/profiles.hpp"
#include "fraclab/stats.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <stdexcept>

namespace fraclab {

namespace {

double timer_seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

double SetSpec::dim_hausdorff() const {
    switch (kind) {
        case SetKind::interval: return 1.0;
        case SetKind::point: return 0.0;
        case SetKind::cantor: return std::log(static_cast<double>(m)) / std::log(1.0 / r);
        case SetKind::two_phase: {
            double a = std::log(static_cast<double>(m)) / std::log(1.0 / r);
            double b = std::log(static_cast<double>(m_b)) / std::log(1.0 / r_b);
            return std::min(a, b);
        }
    }
    return 0.0;
}

double SetSpec::dim_packing() const {
    if (kind == SetKind::two_phase) {
        double a = std::log(static_cast<double>(m)) / std::log(1.0 / r);
        double b = std::log(static_cast<double>(m_b)) / std::log(1.0 / r_b);
        return std::max(a, b);
    }
    return dim_hausdorff();
}

namespace {

std::string set_kind_name(SetKind k) {
    switch (k) {
        case SetKind::interval: return "interval";
        case SetKind::cantor: return "cantor";
        case SetKind::two_phase: return "two_phase";
        case SetKind::point: return "point";
    }
    return "?";
}

SetKind set_kind_from(const std::string& s) {
    if (s == "interval") return SetKind::interval;
    if (s == "cantor") return SetKind::cantor;
    if (s == "two_phase") return SetKind::two_phase;
    if (s == "point") return SetKind::point;
    throw std::invalid_argument("config: unknown set kind " + s);
}

// parameter set E with its natural measure, snapped onto the path grid
DiscreteMeasure build_set_measure(const SetSpec& set, std::size_t grid_n) {
    switch (set.kind) {
        case SetKind::interval:
            return interval_set(grid_n).measure;
        case SetKind::point: {
            DiscreteMeasure mu;
            mu.support.dim = 1;
            mu.support.coords = {set.at};
            mu.masses = {1.0};
            mu.total_mass = 1.0;
            return snap_to_grid(mu, grid_n);
        }
        case SetKind::cantor: {
            auto cs = cantor_set(CantorSpec::homogeneous(set.m, set.r, set.depth, 1));
            return snap_to_grid(cs.measure, grid_n);
        }
        case SetKind::two_phase: {
            auto a = CantorSpec::homogeneous(set.m, set.r, set.depth, 1);
            auto b = CantorSpec::homogeneous(set.m_b, set.r_b, set.depth, 1);
            auto tp = two_phase_cantor(a, b, set.growth);
            return snap_to_grid(tp.measure, grid_n);
        }
    }
    throw std::logic_error("build_set_measure: unreachable");
}

}  // namespace

// ----------------------------------------------------------------- config

namespace {

struct IniEntry {
    std::string section, key, value;
};

std::vector<IniEntry> parse_ini(const std::string& text) {
    std::vector<IniEntry> out;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto notspace = [](unsigned char c) { return !std::isspace(c); };
        line.erase(line.begin(), std::find_if(line.begin(), line.end(), notspace));
        line.erase(std::find_if(line.rbegin(), line.rend(), notspace).base(), line.end());
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config: bad section header at line " + std::to_string(lineno));
            section = line.substr(1, line.size() - 2);
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key = value at line " + std::to_string(lineno));
        std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        key.erase(std::find_if(key.rbegin(), key.rend(), notspace).base(), key.end());
        value.erase(value.begin(), std::find_if(value.begin(), value.end(), notspace));
        out.push_back({section, key, value});
    }
    return out;
}

std::vector<double> parse_list(const std::string& v) {
    std::vector<double> out;
    std::istringstream ss(v);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
    return out;
}

std::vector<std::string> parse_names(const std::string& v) {
    std::vector<std::string> out;
    std::istringstream ss(v);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cell.erase(std::remove_if(cell.begin(), cell.end(), ::isspace), cell.end());
        if (!cell.empty()) out.push_back(cell);
    }
    return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    for (const auto& e : parse_ini(text)) {
        const std::string where = e.section + "." + e.key;
        if (e.section == "case") {
            if (e.key == "id") cfg.case_id = e.value;
            else if (e.key == "theorem") cfg.theorem = e.value;
            else if (e.key == "tolerance") cfg.tolerance = std::stod(e.value);
            else if (e.key == "checks") cfg.checks = parse_names(e.value);
            else throw std::invalid_argument("config: unknown key " + where);
        } else if (e.section == "field") {
            if (e.key == "law") cfg.field.law = law_from_name(e.value);
            else if (e.key == "H") cfg.field.H = std::stod(e.value);
            else if (e.key == "alpha") cfg.field.alpha = std::stod(e.value);
            else if (e.key == "kappa") {
                cfg.field.kappa = std::stod(e.value);
                cfg.field.H = 2.0 * cfg.field.kappa;
            } else if (e.key == "d") cfg.field.d = std::stoi(e.value);
            else if (e.key == "grid_n") cfg.field.grid_n = std::stoul(e.value);
            else if (e.key == "burnin") {
                cfg.field.lfsm_burnin = std::stod(e.value);
                cfg.field.rosenblatt_burnin = std::stod(e.value);
            } else if (e.key == "lepage_terms") cfg.field.hfsm_terms = std::stoul(e.value);
            else if (e.key == "mark_total_mass") cfg.field.rhflm_mark_mass = std::stod(e.value);
            else throw std::invalid_argument("config: unknown key " + where);
        } else if (e.section == "set") {
            if (e.key == "kind") cfg.set.kind = set_kind_from(e.value);
            else if (e.key == "m") cfg.set.m = std::stoi(e.value);
            else if (e.key == "r") cfg.set.r = std::stod(e.value);
            else if (e.key == "depth") cfg.set.depth = std::stoi(e.value);
            else if (e.key == "m_b") cfg.set.m_b = std::stoi(e.value);
            else if (e.key == "r_b") cfg.set.r_b = std::stod(e.value);
            else if (e.key == "growth") cfg.set.growth = std::stoi(e.value);
            else if (e.key == "at") cfg.set.at = std::stod(e.value);
            else throw std::invalid_argument("config: unknown key " + where);
        } else if (e.section == "estimators") {
            if (e.key == "n_probe") cfg.est.n_probe = std::stoul(e.value);
            else if (e.key == "quantile") cfg.est.quantile = std::stod(e.value);
            else if (e.key == "log_correction") cfg.est.log_correction = e.value == "true" || e.value == "1";
            else if (e.key == "radii") cfg.est.radii = parse_list(e.value);
            else if (e.key == "scales") cfg.est.scales = parse_list(e.value);
            else throw std::invalid_argument("config: unknown key " + where);
        } else if (e.section == "probe") {
            if (e.key == "condition") cfg.probe.condition = e.value;
            else if (e.key == "exponent") cfg.probe.exponent = std::stod(e.value);
            else if (e.key == "reps") cfg.probe.reps = std::stoul(e.value);
            else if (e.key == "pair_count") cfg.probe.pair_count = std::stoul(e.value);
            else if (e.key == "mc_reps") cfg.probe.mc_reps = std::stoul(e.value);
            else throw std::invalid_argument("config: unknown key " + where);
        } else if (e.section == "run") {
            if (e.key == "replication") cfg.replication = std::stoul(e.value);
            else if (e.key == "master_seed") cfg.master_seed = std::stoull(e.value);
            else if (e.key == "out_dir") cfg.out_dir = e.value;
            else throw std::invalid_argument("config: unknown key " + where);
        } else {
            throw std::invalid_argument("config: unknown section [" + e.section + "]");
        }
    }
    return cfg;
}

std::string config_to_text(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "[case]\n";
    out << "id = " << cfg.case_id << "\n";
    out << "theorem = " << cfg.theorem << "\n";
    out << "tolerance = " << cfg.tolerance << "\n";
    out << "checks = ";
    for (std::size_t i = 0; i < cfg.checks.size(); ++i)
        out << (i ? "," : "") << cfg.checks[i];
    out << "\n\n[field]\n";
    out << "law = " << law_name(cfg.field.law) << "\n";
    if (cfg.field.law == Law::rosenblatt) out << "kappa = " << cfg.field.kappa << "\n";
    else out << "H = " << cfg.field.H << "\n";
    if (cfg.field.law == Law::lfsm || cfg.field.law == Law::hfsm)
        out << "alpha = " << cfg.field.alpha << "\n";
    out << "d = " << cfg.field.d << "\n";
    out << "grid_n = " << cfg.field.grid_n << "\n";
    out << "\n[set]\n";
    out << "kind = " << set_kind_name(cfg.set.kind) << "\n";
    if (cfg.set.kind == SetKind::cantor || cfg.set.kind == SetKind::two_phase) {
        out << "m = " << cfg.set.m << "\n";
        out << "r = " << cfg.set.r << "\n";
        out << "depth = " << cfg.set.depth << "\n";
    }
    if (cfg.set.kind == SetKind::two_phase) {
        out << "m_b = " << cfg.set.m_b << "\n";
        out << "r_b = " << cfg.set.r_b << "\n";
        out << "growth = " << cfg.set.growth << "\n";
    }
    out << "\n[estimators]\n";
    out << "n_probe = " << cfg.est.n_probe << "\n";
    out << "quantile = " << cfg.est.quantile << "\n";
    out << "log_correction = " << (cfg.est.log_correction ? "true" : "false") << "\n";
    if (!cfg.est.radii.empty()) {
        out << "radii = ";
        for (std::size_t i = 0; i < cfg.est.radii.size(); ++i)
            out << (i ? "," : "") << cfg.est.radii[i];
        out << "\n";
    }
    out << "\n[run]\n";
    out << "replication = " << cfg.replication << "\n";
    out << "master_seed = " << cfg.master_seed << "\n";
    return out.str();
}

// ----------------------------------------------------------------- predict

Prediction predict(const PredictInput& in) {
    Prediction p;
    const double H = in.H;
    if (!(H > 0)) throw std::invalid_argument("predict: H must be > 0");
    auto profile_hd = [&]() -> double {
        // Dim_{Hd} E: closed form min{Hd, dim_P} when dim_H = dim_P,
        // otherwise a measured profile value is required
        if (in.hausdorff_equals_packing)
            return std::min(H * in.d, in.dim_p);
        if (in.profile_hd) return *in.profile_hd;
        throw std::invalid_argument(
            "predict: packing prediction needs dim_H = dim_P or a measured Dim_{Hd} value");
    };

    if (in.theorem == "hausdorff-image" || in.theorem == "stable-image" ||
        in.theorem == "rosenblatt-image" || in.theorem == "hausdorff-image-measure") {
        p.value = std::min(static_cast<double>(in.d), in.dim_h / H);
        p.formula = "dim_H image = min{d, dim_H/H}";
        return p;
    }
    if (in.theorem == "packing-image" || in.theorem == "packing-image-measure") {
        p.value = profile_hd() / H;
        p.formula = "dim_P image = Dim_{Hd}/H";
        return p;
    }
    if (in.theorem == "corollary-ne-hd") {
        if (!(in.N <= H * in.d) && !in.hausdorff_equals_packing)
            throw std::invalid_argument("predict: corollary needs N <= Hd or dim_H = dim_P");
        p.value = std::min(static_cast<double>(in.d), in.dim_p / H);
        p.formula = "dim_P image = min{d, dim_P/H} (N <= Hd or dim_H = dim_P)";
        return p;
    }
    throw std::invalid_argument("predict: unknown theorem tag " + in.theorem);
}

// ----------------------------------------------------------------- runner

CaseOutcome run_experiment(const ExperimentConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    cfg.field.validate();
    if (cfg.replication < 1) throw std::invalid_argument("run_experiment: replication must be >= 1");
    if (cfg.case_id.empty()) throw std::invalid_argument("run_experiment: case id required");

    const DiscreteMeasure base_mu = build_set_measure(cfg.set, cfg.field.grid_n);

    PredictInput pin;
    pin.theorem = cfg.theorem;
    pin.H = cfg.field.hurst();
    pin.d = cfg.field.d;
    pin.N = 1;
    pin.dim_h = cfg.set.dim_hausdorff();
    pin.dim_p = cfg.set.dim_packing();
    pin.hausdorff_equals_packing = cfg.set.hausdorff_equals_packing();
    const Prediction pred = predict(pin);

    LocalDimOptions ldopt;
    ldopt.n_probe = cfg.est.n_probe;
    ldopt.lower_quantile = cfg.est.quantile;
    ldopt.upper_quantile = 1.0 - cfg.est.quantile;
    ldopt.log_correction = cfg.est.log_correction;
    ldopt.radii = cfg.est.radii;

    BoxOptions bopt;
    bopt.scales = cfg.est.scales;
    bopt.log_correction = cfg.est.log_correction;

    const Seed case_seed{cfg.master_seed, fnv1a(cfg.case_id)};

    json replicas = json::array();
    std::vector<double> box_vals, haus_vals, upper_vals, lower_vals;
    json last_counts;
    for (std::size_t rep = 0; rep < cfg.replication; ++rep) {
        const Seed seed = case_seed.sub(rep);
        SamplePath path = simulate_field(cfg.field, seed);
        DiscreteMeasure img = image_measure(path, base_mu);
        const PointCloud& img_cloud = img.support;

        DimEstimate box = box_dimension(img_cloud, bopt);
        LowerUpperBox lu = lower_upper_box(img_cloud, bopt);
        DimEstimate haus = hausdorff_dim_cloud(img_cloud, img, ldopt, seed.sub(9001));

        box_vals.push_back(box.value);
        haus_vals.push_back(haus.value);
        upper_vals.push_back(lu.upper.value);
        lower_vals.push_back(lu.lower.value);

        json row;
        row["seed"] = to_json(seed);
        row["box"] = to_json(box);
        row["hausdorff"] = to_json(haus);
        row["upper_box"] = to_json(lu.upper);
        row["lower_box"] = to_json(lu.lower);
        replicas.push_back(row);

        if (rep + 1 == cfg.replication) {
            // keep one count curve for plotting
            std::vector<double> scales;
            if (bopt.scales.empty())
                for (int k = 1; k <= 16; ++k) scales.push_back(std::pow(2.0, -k));
            else
                scales = bopt.scales;
            // drop scales finer than the cloud can support
            auto counts = box_counts(img_cloud, scales);
            json curve = json::array();
            for (std::size_t i = 0; i < scales.size(); ++i)
                curve.push_back({scales[i], counts[i]});
            last_counts = curve;
        }
    }

    auto agg = [&](const std::vector<double>& v) {
        json j;
        j["mean"] = mean(v);
        j["se"] = std::sqrt(variance(v) / static_cast<double>(v.size()));
        return j;
    };

    json report;
    report["case"] = cfg.case_id;
    report["theorem"] = cfg.theorem;
    report["formula"] = pred.formula;
    report["predicted"] = pred.value;
    report["tolerance"] = cfg.tolerance;
    report["field"] = to_json(cfg.field);
    report["set"] = {{"kind", set_kind_name(cfg.set.kind)},
                     {"depth", cfg.set.depth},
                     {"dim_hausdorff", pin.dim_h},
                     {"dim_packing", pin.dim_p}};
    report["estimator_params"] = {{"n_probe", cfg.est.n_probe},
                                  {"quantile", cfg.est.quantile},
                                  {"log_correction", cfg.est.log_correction},
                                  {"radii", cfg.est.radii},
                                  {"scales", cfg.est.scales}};
    report["master_seed"] = cfg.master_seed;
    report["replication"] = cfg.replication;
    report["replicas"] = replicas;
    report["aggregates"] = {{"box", agg(box_vals)},
                            {"hausdorff", agg(haus_vals)},
                            {"upper_box", agg(upper_vals)},
                            {"lower_box", agg(lower_vals)}};
    report["curves"] = {{"box_counts", last_counts}};

    bool pass = true;
    double headline = mean(box_vals);
    json checks = json::array();
    for (const std::string& c : cfg.checks) {
        double v;
        if (c == "box") v = mean(box_vals);
        else if (c == "hausdorff") v = mean(haus_vals);
        else if (c == "upper_box") v = mean(upper_vals);
        else if (c == "lower_box") v = mean(lower_vals);
        else throw std::invalid_argument("run_experiment: unknown check " + c);
        bool ok = std::fabs(v - pred.value) <= cfg.tolerance;
        if (!ok && pass) headline = v;
        if (ok && pass) headline = v;
        checks.push_back({{"name", c}, {"estimate", v}, {"pass", ok}});
        pass = pass && ok;
    }
    report["checks"] = checks;
    report["pass"] = pass;

    CaseOutcome out;
    out.case_id = cfg.case_id;
    out.theorem = cfg.theorem;
    out.formula = pred.formula;
    out.predicted = pred.value;
    out.estimate = headline;
    out.tolerance = cfg.tolerance;
    out.pass = pass;
    out.report = report;
    out.runtime_seconds = timer_seconds(t0);

    if (!cfg.out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::path dir = fs::path(cfg.out_dir) / cfg.case_id;
        fs::create_directories(dir);
        write_file((dir / "config.ini").string(), config_to_text(cfg));
        write_file((dir / "report.json").string(), report.dump(2) + "\n");
        emit_plot_data(report, dir.string());
    }
    return out;
}

// ----------------------------------------------------------------- registry

namespace {

ExperimentConfig make_case(const std::string& id) {
    ExperimentConfig c;
    c.case_id = id;
    c.replication = 8;
    if (id == "fbm-image-saturated") {
        c.theorem = "hausdorff-image";
        c.tolerance = 0.15;
        c.checks = {"box", "hausdorff"};
        c.field.law = Law::fbm;
        c.field.H = 0.5;
        c.field.d = 2;
        c.field.grid_n = 1u << 17;
        c.est.n_probe = 96;
        c.est.quantile = 0.5;
        c.est.radii = {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128, 1.0 / 256};
        return c;
    }
    if (id == "fbm-image-unsaturated") {
        c.theorem = "hausdorff-image";
        c.tolerance = 0.15;
        c.checks = {"box", "hausdorff"};
        c.field.law = Law::fbm;
        c.field.H = 0.8;
        c.field.d = 2;
        c.field.grid_n = 1u << 16;
        c.est.n_probe = 96;
        c.est.quantile = 0.5;
        c.est.radii = {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128, 1.0 / 256};
        return c;
    }
    if (id == "fbm-cantor-image") {
        c.theorem = "hausdorff-image";
        c.tolerance = 0.20;
        c.checks = {"box", "hausdorff"};
        c.field.law = Law::fbm;
        c.field.H = 0.5;
        c.field.d = 2;
        c.field.grid_n = 1u << 17;
        c.set.kind = SetKind::cantor;
        c.set.m = 2;
        c.set.r = 1.0 / 3.0;
        c.set.depth = 12;
        c.est.n_probe = 96;
        c.est.quantile = 0.5;
        return c;
    }
    if (id == "cantor-packing-profile") {
        c.theorem = "packing-image";
        c.tolerance = 0.10;
        c.checks = {"upper_box"};
        c.field.law = Law::fbm;
        c.field.H = 0.5;
        c.field.d = 1;
        c.field.grid_n = 1u << 17;
        c.set.kind = SetKind::cantor;
        c.set.m = 2;
        c.set.r = 1.0 / 3.0;
        c.set.depth = 12;
        return c;
    }
    if (id == "cantor-packing-corollary") {
        c.theorem = "corollary-ne-hd";
        c.tolerance = 0.20;
        c.checks = {"upper_box"};
        c.field.law = Law::fbm;
        c.field.H = 0.5;
        c.field.d = 2;
        c.field.grid_n = 1u << 17;
        c.set.kind = SetKind::cantor;
        c.set.m = 2;
        c.set.r = 1.0 / 3.0;
        c.set.depth = 12;
        return c;
    }
    if (id == "lfsm-image-d1") {
        c.theorem = "stable-image";
        c.tolerance = 0.10;
        c.checks = {"box", "hausdorff"};
        c.field.law = Law::lfsm;
        c.field.alpha = 1.5;
        c.field.H = 0.8;
        c.field.d = 1;
        c.field.grid_n = 1u << 15;
        c.est.quantile = 0.5;
        return c;
    }
    if (id == "lfsm-image-d2") {
        c.theorem = "stable-image";
        c.tolerance = 0.20;
        c.checks = {"box", "hausdorff"};
        c.field.law = Law::lfsm;
        c.field.alpha = 1.5;
        c.field.H = 0.8;
        c.field.d = 2;
        c.field.grid_n = 1u << 15;
        c.est.n_probe = 96;
        c.est.quantile = 0.5;
        return c;
    }
    if (id == "rosenblatt-image") {
        c.theorem = "rosenblatt-image";
        c.tolerance = 0.10;
        c.checks = {"box", "hausdorff", "upper_box"};
        c.field.law = Law::rosenblatt;
        c.field.kappa = 0.35;
        c.field.H = 0.7;
        c.field.d = 1;
        c.field.grid_n = 1u << 11;
        c.est.quantile = 0.5;
        return c;
    }
    throw std::invalid_argument("registry: unknown case " + id);
}

}  // namespace

std::vector<std::string> registry_case_ids() {
    return {"fbm-image-saturated",   "fbm-image-unsaturated",    "fbm-cantor-image",
            "cantor-packing-profile", "cantor-packing-corollary", "lfsm-image-d1",
            "lfsm-image-d2",          "rosenblatt-image"};
}

ExperimentConfig registry_case(const std::string& id) { return make_case(id); }

CaseOutcome verify_theorem(const std::string& case_id, double budget_seconds,
                           std::uint64_t master_seed, const std::string& out_dir) {
    ExperimentConfig cfg = registry_case(case_id);
    if (master_seed) cfg.master_seed = master_seed;
    cfg.out_dir = out_dir;
    CaseOutcome out = run_experiment(cfg);
    if (budget_seconds > 0 && out.runtime_seconds > budget_seconds) {
        out.incomplete = true;
        out.report["incomplete"] = true;
    }
    return out;
}

void emit_plot_data(const json& report, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    if (report.contains("curves")) {
        const json& curves = report["curves"];
        if (curves.contains("box_counts")) {
            std::ostringstream out;
            out << "log2_inv_eps,log2_count\n";
            for (const auto& row : curves["box_counts"]) {
                double eps = row[0].get<double>();
                double n = row[1].get<double>();
                out << std::log2(1.0 / eps) << ',' << std::log2(n) << '\n';
            }
            write_file((fs::path(out_dir) / "box_counts.csv").string(), out.str());
        }
        if (curves.contains("profile")) {
            std::ostringstream out;
            out << "s,dim_s\n";
            for (const auto& row : curves["profile"])
                out << row[0].get<double>() << ',' << row[1].get<double>() << '\n';
            write_file((fs::path(out_dir) / "profile.csv").string(), out.str());
        }
        if (curves.contains("tails")) {
            std::ostringstream out;
            out << "scale,log_u,log_tail\n";
            for (const auto& row : curves["tails"]) {
                double u = row[1].get<double>(), p = row[2].get<double>();
                if (u > 0 && p > 0)
                    out << row[0].get<double>() << ',' << std::log(u) << ',' << std::log(p) << '\n';
            }
            write_file((fs::path(out_dir) / "tails.csv").string(), out.str());
        }
    }
}

// ----------------------------------------------------------------- suites

SuiteResult profile_identity_suite(std::uint64_t master_seed, const std::string& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult res;
    res.name = "profile-identities";

    IntervalSet iv = interval_set(8192);
    ProfileOptions opt;
    opt.n_probe = 48;
    opt.radii = {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128, 1.0 / 256, 1.0 / 512};
    std::vector<double> s_grid = default_s_grid(1, 32);
    ProfileCurve curve = profile_curve(iv.measure, s_grid, opt, Seed{master_seed, 11});

    double max_err = 0;
    for (std::size_t i = 0; i < s_grid.size(); ++i)
        max_err = std::max(max_err, std::fabs(curve.values[i] - std::min(s_grid[i], 1.0)));

    bool monotone = true;
    for (std::size_t i = 1; i < s_grid.size(); ++i)
        if (curve.values[i] + 1.5 * (curve.std_errors[i] + curve.std_errors[i - 1]) <
            curve.values[i - 1])
            monotone = false;

    DimEstimate dim_p = lower_upper_box(iv.cloud).upper;
    double plateau_err = 0;
    for (std::size_t i = 0; i < s_grid.size(); ++i)
        if (s_grid[i] >= 1.0)
            plateau_err = std::max(plateau_err, std::fabs(curve.values[i] - dim_p.value));

    res.pass = max_err <= 0.08 && monotone && plateau_err <= 0.10;
    std::ostringstream d;
    d << "max |Dim_s - min(s,1)| = " << max_err << " (<= 0.08), monotone = " << monotone
      << ", plateau error = " << plateau_err << " (<= 0.10)";
    res.detail = d.str();
    res.report["curve_s"] = curve.s_grid;
    res.report["curve_values"] = curve.values;
    res.report["max_error"] = max_err;
    res.report["monotone"] = monotone;
    res.report["plateau_error"] = plateau_err;
    res.report["dim_p_estimate"] = dim_p.value;
    res.runtime_seconds = timer_seconds(t0);
    if (!out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(fs::path(out_dir) / res.name);
        write_file((fs::path(out_dir) / res.name / "profile.csv").string(), profile_csv(curve));
        write_file((fs::path(out_dir) / res.name / "report.json").string(),
                   res.report.dump(2) + "\n");
    }
    return res;
}

SuiteResult tail_exponent_suite(std::uint64_t master_seed, const std::string& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult res;
    res.name = "lfsm-tail-exponent";
    res.pass = true;
    std::ostringstream d;
    json rows = json::array();
    const struct { double alpha, H; } cases[] = {{1.3, 0.85}, {1.7, 0.8}};
    for (const auto& cs : cases) {
        FieldSpec spec;
        spec.law = Law::lfsm;
        spec.alpha = cs.alpha;
        spec.H = cs.H;
        spec.d = 1;
        spec.grid_n = 256;
        ProbeReport pr = probe_c1(spec, cs.H, {1.0}, {}, 10000, Seed{master_seed, 21});
        bool ok = std::fabs(pr.beta_hat - cs.alpha) <= 0.2;
        res.pass = res.pass && ok;
        d << "alpha=" << cs.alpha << ": beta_hat=" << pr.beta_hat << (ok ? " ok; " : " FAIL; ");
        json row = to_json(pr);
        row["alpha"] = cs.alpha;
        rows.push_back(row);
        if (!out_dir.empty()) {
            namespace fs = std::filesystem;
            fs::create_directories(fs::path(out_dir) / res.name);
            std::ostringstream fname;
            fname << "tails_alpha_" << cs.alpha << ".csv";
            write_file((fs::path(out_dir) / res.name / fname.str()).string(),
                       probe_curves_csv(pr));
        }
    }
    res.detail = d.str();
    res.report["cases"] = rows;
    res.runtime_seconds = timer_seconds(t0);
    if (!out_dir.empty()) {
        namespace fs = std::filesystem;
        write_file((fs::path(out_dir) / res.name / "report.json").string(),
                   res.report.dump(2) + "\n");
    }
    return res;
}

SuiteResult fourier_equivalence_suite(std::uint64_t master_seed, const std::string& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult res;
    res.name = "smallball-fourier-equivalence";
    res.pass = true;
    std::ostringstream d;
    json rows = json::array();

    struct Panel {
        const char* name;
        Law law;
        double H, kappa, h2;
        bool expect_violated;
    };
    const Panel panel[] = {
        {"fbm-matched", Law::fbm, 0.5, 0.0, 0.5, false},
        {"rosenblatt-matched", Law::rosenblatt, 0.7, 0.35, 0.7, false},
        {"fbm-mismatched", Law::fbm, 0.7, 0.0, 0.5, true},
        {"rosenblatt-mismatched", Law::rosenblatt, 0.7, 0.35, 0.5, true},
    };
    int idx = 0;
    for (const auto& pc : panel) {
        FieldSpec spec;
        spec.law = pc.law;
        spec.H = pc.H;
        spec.kappa = pc.kappa;
        spec.d = 1;
        spec.grid_n = pc.law == Law::rosenblatt ? 256 : 512;
        ProbeReport c2 = probe_c2(spec, pc.h2, {}, 5, 2000, Seed{master_seed, 31u + idx});
        QuadSpec quad;
        ProbeReport fr = fourier_c2_criterion(spec, pc.h2, {}, {1.0, 0.25, 0.0625}, 1500, quad,
                                              Seed{master_seed, 41u + idx});
        bool agree = c2.violated() == fr.violated();
        bool expected = c2.violated() == pc.expect_violated;
        res.pass = res.pass && agree && expected;
        d << pc.name << ": c2=" << c2.verdict << " fourier=" << fr.verdict
          << (agree && expected ? " ok; " : " FAIL; ");
        json row;
        row["name"] = pc.name;
        row["probe_c2"] = to_json(c2);
        row["fourier"] = to_json(fr);
        rows.push_back(row);
        ++idx;
    }

    // pointwise kernel sandwich on a 10^4-point lattice (exact)
    bool sandwich = true;
    {
        const double r = 0.75;
        const int d2 = 2;
        const int side = 100;
        for (int i = 0; i < side && sandwich; ++i)
            for (int j = 0; j < side; ++j) {
                double z[2] = {-3.0 * r + 6.0 * r * i / (side - 1),
                               -3.0 * r + 6.0 * r * j / (side - 1)};
                double nrm = std::sqrt(z[0] * z[0] + z[1] * z[1]);
                double ph = phi_hat(std::span<const double>(z, 2), r);
                if (nrm <= r && 1.0 > std::pow(2.0, d2) * ph + 1e-12) { sandwich = false; break; }
                if (ph > (nrm <= 2.0 * std::sqrt(2.0) * r ? 1.0 : 0.0) + 1e-12) { sandwich = false; break; }
            }
    }
    res.pass = res.pass && sandwich;
    d << "kernel sandwich on lattice: " << (sandwich ? "exact" : "FAIL");

    res.detail = d.str();
    res.report["panel"] = rows;
    res.report["sandwich_exact"] = sandwich;
    res.runtime_seconds = timer_seconds(t0);
    if (!out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(fs::path(out_dir) / res.name);
        write_file((fs::path(out_dir) / res.name / "report.json").string(),
                   res.report.dump(2) + "\n");
    }
    return res;
}

namespace {

// SSSI check for one law: X(c)/c^H vs X(1) on independent path groups
bool sssi_ks(const FieldSpec& spec, double c, std::size_t reps, Seed seed, double* stat) {
    const double H = spec.hurst();
    std::vector<double> a(reps / 2), b(reps / 2);
    const std::vector<double> tc = {c}, t1 = {1.0};
    for (std::size_t i = 0; i < reps / 2; ++i) {
        a[i] = simulate_at_times(spec, tc, seed.sub(2 * i))[0] / std::pow(c, H);
        b[i] = simulate_at_times(spec, t1, seed.sub(2 * i + 1))[0];
    }
    auto ks = ks_two_sample(a, b, 0.01);
    if (stat) *stat = ks.statistic / ks.threshold;
    return ks.pass;
}

// stationary increments: X(t+h)-X(t) across anchors
bool stationarity_ks(const FieldSpec& spec, double h, std::size_t reps, Seed seed, double* stat) {
    const double anchors[3] = {0.0, 0.25, 0.5};
    std::vector<std::vector<double>> g(3);
    for (std::size_t i = 0; i < reps; ++i) {
        int a = static_cast<int>(i % 3);
        const std::vector<double> ts = {anchors[a], anchors[a] + h};
        auto v = simulate_at_times(spec, ts, seed.sub(i));
        g[a].push_back(v[1] - v[0]);
    }
    double worst = 0;
    bool ok = true;
    for (int a = 1; a < 3; ++a) {
        auto ks = ks_two_sample(g[0], g[a], 0.01);
        worst = std::max(worst, ks.statistic / ks.threshold);
        ok = ok && ks.pass;
    }
    if (stat) *stat = worst;
    return ok;
}

}  // namespace

SuiteResult property_suite(std::uint64_t master_seed, const std::string& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult res;
    res.name = "property-suite";
    res.pass = true;
    std::ostringstream d;

    // (a) ordering dim_H <= dim_P + 0.1 on the acceptance clouds
    {
        struct Named {
            std::string name;
            PointCloud cloud;
            DiscreteMeasure natural;
        };
        std::vector<Named> clouds;
        IntervalSet iv = interval_set(4096);
        clouds.push_back({"interval", iv.cloud, iv.measure});
        auto cs = cantor_set(CantorSpec::homogeneous(2, 1.0 / 3.0, 10, 1));
        clouds.push_back({"cantor", cs.cloud, cs.measure});
        auto tp = two_phase_cantor(CantorSpec::homogeneous(2, 1.0 / 3.0, 14, 1),
                                   CantorSpec::homogeneous(2, 0.5, 14, 1), 3);
        clouds.push_back({"two-phase", tp.cloud, tp.measure});
        FieldSpec fs_img;
        fs_img.law = Law::fbm;
        fs_img.H = 0.5;
        fs_img.d = 2;
        fs_img.grid_n = 1u << 14;
        SamplePath path = simulate_field(fs_img, Seed{master_seed, 51});
        DiscreteMeasure img = image_measure(path, interval_set(1u << 14).measure);
        clouds.push_back({"fbm-image", img.support, img});

        json rows = json::array();
        bool ok = true;
        for (const auto& nc : clouds) {
            LocalDimOptions opt;
            opt.lower_quantile = 0.5;
            opt.upper_quantile = 0.95;
            DimEstimate h = hausdorff_dim_cloud(nc.cloud, nc.natural, opt, Seed{master_seed, 52});
            DimEstimate ub = lower_upper_box(nc.cloud).upper;
            bool this_ok = h.value <= ub.value + 0.1;
            ok = ok && this_ok;
            rows.push_back({{"cloud", nc.name}, {"hausdorff", h.value}, {"upper_box", ub.value},
                            {"pass", this_ok}});
        }
        res.pass = res.pass && ok;
        d << "dim_H <= dim_P + 0.1 on " << clouds.size() << " clouds: " << (ok ? "ok" : "FAIL")
          << "; ";
        res.report["ordering"] = rows;
    }

    // (b) profile bound Dim_s <= s + 0.05
    {
        auto cs = cantor_set(CantorSpec::homogeneous(2, 1.0 / 3.0, 10, 1));
        ProfileOptions popt;
        popt.n_probe = 24;
        popt.radii = {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128, 1.0 / 256};
        std::vector<double> s_grid = default_s_grid(1, 16);
        ProfileCurve curve = profile_curve(cs.measure, s_grid, popt, Seed{master_seed, 53});
        bool ok = true;
        for (std::size_t i = 0; i < s_grid.size(); ++i)
            if (curve.values[i] > s_grid[i] + 0.05) ok = false;
        res.pass = res.pass && ok;
        d << "Dim_s <= s + 0.05: " << (ok ? "ok" : "FAIL") << "; ";
        res.report["profile_bound"] = ok;
    }

    // (c) F-potential monotonicity, mass bound, exact scale covariance
    {
        auto cs = cantor_set(CantorSpec::homogeneous(2, 1.0 / 3.0, 8, 1));
        DiscreteMeasure doubled = cs.measure;
        for (double& x : doubled.support.coords) x *= 2.0;
        RngStream rng(Seed{master_seed, 54});
        bool ok = true;
        for (int trial = 0; trial < 64 && ok; ++trial) {
            std::size_t i = rng.index(cs.measure.support.n_points());
            std::vector<double> x = {cs.measure.support.point(i)[0] + 0.01 * (rng.u01() - 0.5)};
            double r1 = std::pow(2.0, -1.0 - 6.0 * rng.u01());
            double r2 = r1 * (1.0 + rng.u01());
            double s1 = 0.2 + rng.u01(), s2 = s1 + rng.u01();
            double f11 = potential_F(cs.measure, s1, x, r1);
            double f12 = potential_F(cs.measure, s1, x, r2);
            double f21 = potential_F(cs.measure, s2, x, r1);
            if (f12 < f11 - 1e-12) ok = false;                       // non-decreasing in r
            if (f21 > f11 + 1e-12) ok = false;                       // non-increasing in s
            if (f11 > cs.measure.total_mass + 1e-12) ok = false;     // mass bound
            std::vector<double> x2 = {2.0 * x[0]};
            double g = potential_F(doubled, s1, x2, 2.0 * r1);       // exact scale covariance
            if (std::fabs(g - f11) > 1e-12 * std::max(1.0, f11)) ok = false;
        }
        res.pass = res.pass && ok;
        d << "potential monotonicity/covariance: " << (ok ? "ok" : "FAIL") << "; ";
        res.report["potential_properties"] = ok;
    }

    // (d) SSSI scaling KS at level 0.01 for all five laws, c in {1/2, 1/4}
    {
        json rows = json::array();
        bool ok = true;
        auto run = [&](const char* name, const FieldSpec& spec, std::size_t reps,
                       std::uint64_t stream) {
            for (double c : {0.5, 0.25}) {
                double stat = 0;
                bool pass = sssi_ks(spec, c, reps, Seed{master_seed, stream}, &stat);
                ok = ok && pass;
                rows.push_back({{"law", name}, {"c", c}, {"ks_over_threshold", stat},
                                {"pass", pass}});
            }
        };
        FieldSpec f1;
        f1.law = Law::fbm; f1.H = 0.5; f1.grid_n = 256;
        run("fbm", f1, 10000, 61);
        FieldSpec f2;
        f2.law = Law::lfsm; f2.alpha = 1.6; f2.H = 0.75; f2.grid_n = 512;
        run("lfsm", f2, 10000, 62);
        FieldSpec f3;
        f3.law = Law::hfsm; f3.alpha = 1.5; f3.H = 0.6; f3.grid_n = 512; f3.hfsm_terms = 2000;
        run("hfsm", f3, 10000, 63);
        FieldSpec f4;
        f4.law = Law::rhflm; f4.H = 0.55; f4.grid_n = 512;
        run("rhflm", f4, 10000, 64);
        FieldSpec f5;
        f5.law = Law::rosenblatt; f5.kappa = 0.35; f5.H = 0.7; f5.grid_n = 256;
        run("rosenblatt", f5, 10000, 65);
        res.pass = res.pass && ok;
        d << "SSSI scaling KS (5 laws): " << (ok ? "ok" : "FAIL") << "; ";
        res.report["sssi_ks"] = rows;
    }

    // (e) stationary increments KS across anchors
    {
        json rows = json::array();
        bool ok = true;
        auto run = [&](const char* name, const FieldSpec& spec, std::uint64_t stream) {
            double stat = 0;
            bool pass = stationarity_ks(spec, 0.125, 6000, Seed{master_seed, stream}, &stat);
            ok = ok && pass;
            rows.push_back({{"law", name}, {"ks_over_threshold", stat}, {"pass", pass}});
        };
        FieldSpec f1;
        f1.law = Law::fbm; f1.H = 0.6; f1.grid_n = 256;
        run("fbm", f1, 71);
        FieldSpec f2;
        f2.law = Law::lfsm; f2.alpha = 1.6; f2.H = 0.75; f2.grid_n = 256;
        run("lfsm", f2, 72);
        FieldSpec f3;
        f3.law = Law::hfsm; f3.alpha = 1.5; f3.H = 0.6; f3.grid_n = 256; f3.hfsm_terms = 1000;
        run("hfsm", f3, 73);
        FieldSpec f4;
        f4.law = Law::rhflm; f4.H = 0.55; f4.grid_n = 256;
        run("rhflm", f4, 74);
        FieldSpec f5;
        f5.law = Law::rosenblatt; f5.kappa = 0.35; f5.H = 0.7; f5.grid_n = 256;
        run("rosenblatt", f5, 75);
        res.pass = res.pass && ok;
        d << "stationary increments KS: " << (ok ? "ok" : "FAIL") << "; ";
        res.report["stationarity_ks"] = rows;
    }

    // (f) full determinism: identical config twice -> byte-identical reports
    {
        ExperimentConfig cfg;
        cfg.case_id = "determinism-check";
        cfg.theorem = "hausdorff-image";
        cfg.tolerance = 0.2;
        cfg.checks = {"box"};
        cfg.field.law = Law::fbm;
        cfg.field.H = 0.6;
        cfg.field.d = 1;
        cfg.field.grid_n = 1024;
        cfg.replication = 2;
        cfg.master_seed = master_seed;
        CaseOutcome a = run_experiment(cfg);
        CaseOutcome b = run_experiment(cfg);
        bool ok = a.report.dump() == b.report.dump();
        res.pass = res.pass && ok;
        d << "byte-identical reports: " << (ok ? "ok" : "FAIL") << "; ";
        res.report["determinism"] = ok;

        // (g) scale invariance: dimensions unchanged under x -> 3x
        SamplePath path = simulate_field(cfg.field, Seed{master_seed, 81});
        DiscreteMeasure img = image_measure(path, interval_set(1024).measure);
        PointCloud scaled = img.support;
        for (double& x : scaled.coords) x *= 3.0;
        DimEstimate b1 = box_dimension(img.support);
        DimEstimate b2 = box_dimension(scaled);
        bool scale_ok = std::fabs(b1.value - b2.value) <= 0.05;
        res.pass = res.pass && scale_ok;
        d << "scale invariance: " << (scale_ok ? "ok" : "FAIL");
        res.report["scale_invariance"] = scale_ok;
    }

    res.detail = d.str();
    res.runtime_seconds = timer_seconds(t0);
    if (!out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(fs::path(out_dir) / res.name);
        write_file((fs::path(out_dir) / res.name / "report.json").string(),
                   res.report.dump(2) + "\n");
    }
    return res;
}

}  // namespace fraclab
