#include "fraclab/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fraclab {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

json to_json(const Seed& s) {
    return json{{"seed", s.seed}, {"stream", s.stream}};
}

json to_json(const FieldSpec& spec) {
    json j;
    j["law"] = law_name(spec.law);
    j["H"] = spec.hurst();
    j["d"] = spec.d;
    j["grid_n"] = spec.grid_n;
    switch (spec.law) {
        case Law::lfsm:
            j["alpha"] = spec.alpha;
            j["burnin"] = spec.lfsm_burnin;
            break;
        case Law::hfsm:
            j["alpha"] = spec.alpha;
            j["lepage_terms"] = spec.hfsm_terms;
            j["window"] = {{"eps", spec.window.eps}, {"radius", spec.window.radius}};
            break;
        case Law::rhflm:
            j["mark_total_mass"] = spec.rhflm_mark_mass;
            j["window"] = {{"eps", spec.window.eps}, {"radius", spec.window.radius}};
            j["note"] = "compensator omitted: rotationally invariant mark law has zero mean";
            break;
        case Law::rosenblatt:
            j["kappa"] = spec.kappa;
            j["burnin"] = spec.rosenblatt_burnin;
            j["note"] = "unit-variance normalization at t=1 (exact discrete chaos variance)";
            break;
        default:
            break;
    }
    return j;
}

json to_json(const DimEstimate& e) {
    json j;
    j["value"] = e.value;
    j["std_error"] = e.std_error;
    j["scale_min"] = e.scale_min;
    j["scale_max"] = e.scale_max;
    j["n_scales"] = e.n_scales;
    j["resid_rms"] = e.resid_rms;
    j["window_warning"] = e.window_warning;
    j["log_corrected"] = e.log_corrected;
    return j;
}

json to_json(const ProbeReport& r) {
    json j;
    j["condition"] = r.condition;
    j["exponent"] = r.exponent;
    j["beta_hat"] = r.beta_hat;
    j["fitted_constant"] = r.fitted_constant;
    j["small_ball_slope"] = r.small_ball_slope;
    j["violations"] = r.violations;
    j["total_checks"] = r.total_checks;
    j["verdict"] = r.verdict;
    j["seed"] = to_json(r.seed);
    j["notes"] = r.notes;
    return j;
}

std::string cloud_csv(const PointCloud& cloud) {
    std::ostringstream out;
    for (std::size_t i = 0; i < cloud.n_points(); ++i) {
        const double* p = cloud.point(i);
        for (int k = 0; k < cloud.dim; ++k) out << fmt(p[k]) << ',';
        out << (cloud.weights.empty() ? "1" : fmt(cloud.weights[i])) << '\n';
    }
    return out.str();
}

std::string measure_csv(const DiscreteMeasure& mu) {
    std::ostringstream out;
    for (std::size_t i = 0; i < mu.support.n_points(); ++i) {
        const double* p = mu.support.point(i);
        for (int k = 0; k < mu.support.dim; ++k) out << fmt(p[k]) << ',';
        out << fmt(mu.masses[i]) << '\n';
    }
    return out.str();
}

PointCloud cloud_from_csv(const std::string& text, int dim) {
    PointCloud cloud;
    cloud.dim = dim;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
        if (static_cast<int>(vals.size()) < dim)
            throw std::invalid_argument("cloud_from_csv: short row");
        for (int k = 0; k < dim; ++k) cloud.coords.push_back(vals[k]);
        if (static_cast<int>(vals.size()) > dim) cloud.weights.push_back(vals[dim]);
    }
    return cloud;
}

std::string path_csv(const SamplePath& path) {
    json meta;
    meta["spec"] = to_json(path.spec);
    meta["seed"] = to_json(path.seed);
    std::ostringstream out;
    out << "# " << meta.dump() << '\n';
    out << "t";
    for (int k = 0; k < path.spec.d; ++k) out << ",x" << (k + 1);
    out << '\n';
    for (std::size_t j = 0; j < path.times.size(); ++j) {
        out << fmt(path.times[j]);
        for (int k = 0; k < path.spec.d; ++k) out << ',' << fmt(path.at(j)[k]);
        out << '\n';
    }
    return out.str();
}

std::string profile_csv(const ProfileCurve& curve) {
    std::ostringstream out;
    out << "s,value,std_error\n";
    for (std::size_t i = 0; i < curve.s_grid.size(); ++i)
        out << fmt(curve.s_grid[i]) << ',' << fmt(curve.values[i]) << ','
            << fmt(curve.std_errors[i]) << '\n';
    return out.str();
}

std::string probe_curves_csv(const ProbeReport& r) {
    std::ostringstream out;
    out << "scale,x,y\n";
    for (std::size_t i = 0; i < r.curve_x.size(); ++i)
        out << fmt(r.curve_scale[i]) << ',' << fmt(r.curve_x[i]) << ',' << fmt(r.curve_y[i]) << '\n';
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for write: " + path);
    f << content;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for read: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace fraclab
