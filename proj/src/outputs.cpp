#include "pilotwave/outputs.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pilotwave {

namespace {

using nlohmann::json;

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

json config_json(const ScenarioConfig& c) {
    json j;
    j["scenario"] = to_string(c.scenario);
    j["x_min"] = c.x_min;
    j["x_max"] = c.x_max;
    j["n"] = c.n;
    j["dt"] = c.dt;
    j["t_final"] = c.t_final;
    j["store_every"] = c.store_every;
    j["trajectories"] = c.trajectories;
    j["seed"] = c.seed;
    switch (c.scenario) {
        case ScenarioKind::double_slit:
            j["slit_separation"] = c.slit_separation;
            j["slit_width"] = c.slit_width;
            break;
        case ScenarioKind::spin_measurement:
            j["c1_re"] = c.c1.real();
            j["c1_im"] = c.c1.imag();
            j["c2_re"] = c.c2.real();
            j["c2_im"] = c.c2.imag();
            j["packet_width"] = c.packet_width;
            j["lambda"] = c.lambda;
            j["orientation"] = c.orientation;
            break;
        case ScenarioKind::momentum_measurement:
            break;
    }
    return j;
}

} // namespace

void write_outputs(const ScenarioResult& result, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + out_dir.string() +
                                     ": " + ec.message());

    {
        std::string csv = "traj_id,t,x\n";
        const auto& trajs = result.ensemble.trajectories;
        for (std::size_t id = 0; id < trajs.size(); ++id) {
            const auto& times = *trajs[id].times;
            for (std::size_t i = 0; i < times.size(); ++i) {
                csv += std::to_string(id);
                csv += ',';
                csv += fmt9(times[i]);
                csv += ',';
                csv += fmt9(trajs[id].positions[i]);
                csv += '\n';
            }
        }
        write_file(out_dir / "trajectories.csv", csv);
    }

    {
        std::string csv = "t,x,rho\n";
        for (const auto& [t, rho] : result.densities) {
            for (std::size_t k = 0; k < rho.grid.n; ++k) {
                csv += fmt9(t);
                csv += ',';
                csv += fmt9(rho.grid.node(k));
                csv += ',';
                csv += fmt9(rho.values[k]);
                csv += '\n';
            }
        }
        write_file(out_dir / "density.csv", csv);
    }

    {
        json j;
        j["schema_version"] = summary_schema_version;
        j["scenario"] = to_string(result.config.scenario);
        j["seed"] = result.config.seed;
        j["config"] = config_json(result.config);
        j["metrics"] = json::object();
        for (const auto& [name, value] : result.metrics) j["metrics"][name] = value;
        j["checks"] = json::array();
        for (const auto& c : result.checks) {
            json jc;
            jc["name"] = c.name;
            jc["value"] = c.value;
            jc["op"] = c.op;
            jc["threshold"] = c.threshold;
            jc["passed"] = c.passed;
            j["checks"].push_back(jc);
        }
        json eq;
        eq["check_times"] = result.equivariance.check_times;
        eq["ks_statistics"] = result.equivariance.ks_statistics;
        eq["sample_count"] = result.equivariance.sample_count;
        eq["threshold"] = result.equivariance.threshold;
        eq["passed"] = result.equivariance.passed;
        j["equivariance"] = eq;
        if (!result.outcome_labels.empty()) j["outcome_labels"] = result.outcome_labels;
        j["passed"] = result.passed;
        write_file(out_dir / "summary.json", j.dump(2) + "\n");
    }
}

VerifyOutcome verify_output_dir(const std::filesystem::path& dir) {
    const auto path = dir / "summary.json";
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("malformed summary " + path.string() + ": " + e.what());
    }

    VerifyOutcome out;
    out.ok = true;
    if (!j.contains("checks") || !j["checks"].is_array())
        throw std::runtime_error("summary has no checks array: " + path.string());
    for (const auto& jc : j["checks"]) {
        const std::string name = jc.at("name").get<std::string>();
        const double value = jc.at("value").get<double>();
        const double threshold = jc.at("threshold").get<double>();
        const std::string op = jc.at("op").get<std::string>();
        const bool recorded = jc.at("passed").get<bool>();
        const bool recomputed = (op == "<") ? (value < threshold) : (value > threshold);

        std::ostringstream line;
        if (recomputed != recorded) {
            out.ok = false;
            line << "[INCONSISTENT] " << name << ": recorded " << (recorded ? "pass" : "fail")
                 << " but " << value << " " << op << " " << threshold << " is "
                 << (recomputed ? "true" : "false");
        } else {
            if (!recomputed) out.ok = false;
            line << (recomputed ? "[PASS] " : "[FAIL] ") << name << ": " << value << " " << op
                 << " " << threshold;
        }
        out.lines.push_back(line.str());
    }
    if (!j.value("passed", false) && out.ok) {
        // summary-level flag must agree with the per-check conjunction
        out.ok = false;
        out.lines.push_back("[INCONSISTENT] summary.passed is false but all checks pass");
    }
    return out;
}

} // namespace pilotwave
