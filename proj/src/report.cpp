#include "wakeradon/report.hpp"

#include <json.hpp>
#include <sstream>

namespace wakeradon {
namespace {

using ordered_json = nlohmann::ordered_json;

const char* yes_no(bool v) { return v ? "yes" : "no"; }

ordered_json slot_json(const WakeSlot& slot) {
    ordered_json j;
    j["detected"] = slot.detected;
    if (slot.candidate) {
        const WakeCandidate& c = *slot.candidate;
        j["kind"] = wake_kind_name(c.kind);
        j["confirmed"] = c.confirmed;
        j["r"] = c.r;
        j["theta_deg"] = c.theta_deg;
        j["r_bin"] = c.r_bin;
        j["theta_bin"] = c.theta_bin;
        j["half_sign"] = c.half_sign;
        j["fi"] = c.fi;
        j["peak_value"] = c.peak_value;
    }
    return j;
}

std::string render_detect_json(const RunConfig& cfg, const WakeReport& report,
                               const std::string& input_label) {
    ordered_json j;
    j["tool"] = "wakeradon";
    j["kind"] = "detect_report";
    j["input"] = input_label;
    ordered_json conf;
    for (const auto& [k, v] : cfg.resolved().entries) conf[k] = v;
    j["config"] = conf;
    for (int s = 0; s < 5; ++s) j["slots"][slot_name(s)] = slot_json(report.slots[s]);
    j["turbulent_dependency_unconfirmed"] = report.turbulent_dependency_unconfirmed;

    const SolverDiagnostics& d = report.solver;
    ordered_json diag;
    diag["iterations_run"] = d.iterations_run;
    diag["converged"] = d.converged;
    diag["final_epsilon"] = d.final_epsilon;
    diag["lipschitz"] = d.resolved.lipschitz;
    diag["delta"] = d.resolved.delta;
    diag["omega"] = d.resolved.omega;
    diag["input_standardized"] = d.input_standardized;
    diag["input_mean"] = d.input_mean;
    diag["input_std"] = d.input_std;
    diag["multiple_root_events"] = d.multiple_root_events;
    diag["warnings"] = d.warnings;
    j["diagnostics"] = diag;
    return j.dump(2) + "\n";
}

std::string render_detect_text(const RunConfig& cfg, const WakeReport& report,
                               const std::string& input_label) {
    std::ostringstream out;
    out << "# wakeradon detect report\n";
    out << "input = " << input_label << "\n\n";
    out << "[config]\n" << cfg.resolved().to_text() << "\n";

    out << "[slots]\n";
    for (int s = 0; s < 5; ++s) {
        const WakeSlot& slot = report.slots[s];
        out << slot_name(s) << ": detected=" << yes_no(slot.detected);
        if (slot.candidate) {
            const WakeCandidate& c = *slot.candidate;
            out << " confirmed=" << yes_no(c.confirmed) << " r=" << format_double(c.r)
                << " theta_deg=" << format_double(c.theta_deg) << " half_sign=" << c.half_sign
                << " fi=" << format_double(c.fi)
                << " peak_value=" << format_double(c.peak_value);
        }
        out << "\n";
    }
    out << "turbulent_dependency_unconfirmed = "
        << yes_no(report.turbulent_dependency_unconfirmed) << "\n\n";

    const SolverDiagnostics& d = report.solver;
    out << "[diagnostics]\n";
    out << "iterations_run = " << d.iterations_run << "\n";
    out << "converged = " << yes_no(d.converged) << "\n";
    out << "final_epsilon = " << format_double(d.final_epsilon) << "\n";
    out << "lipschitz = " << format_double(d.resolved.lipschitz) << "\n";
    out << "delta = " << format_double(d.resolved.delta) << "\n";
    out << "omega = " << format_double(d.resolved.omega) << "\n";
    out << "input_standardized = " << yes_no(d.input_standardized) << "\n";
    out << "input_mean = " << format_double(d.input_mean) << "\n";
    out << "input_std = " << format_double(d.input_std) << "\n";
    out << "multiple_root_events = " << d.multiple_root_events << "\n";
    for (const std::string& w : d.warnings) out << "warning = " << w << "\n";
    return out.str();
}

}  // namespace

std::string render_detect_report(const RunConfig& cfg, const WakeReport& report,
                                 const std::string& input_label) {
    return cfg.format == "json" ? render_detect_json(cfg, report, input_label)
                                : render_detect_text(cfg, report, input_label);
}

std::string render_benchmark_report(const RunConfig& cfg, const BenchmarkResult& r) {
    if (cfg.format == "json") {
        ordered_json j;
        j["tool"] = "wakeradon";
        j["kind"] = "benchmark_report";
        ordered_json conf;
        for (const auto& [k, v] : cfg.resolved().entries) conf[k] = v;
        j["config"] = conf;
        j["scenes"] = ordered_json::array();
        for (const BenchmarkSceneRow& row : r.rows) {
            ordered_json s;
            s["index"] = row.index;
            s["seed"] = row.seed;
            s["truth"] = row.truth;
            s["detected"] = row.detected;
            if (!row.error.empty()) s["error"] = row.error;
            j["scenes"].push_back(s);
        }
        j["total_slots"] = r.total_slots;
        j["tp"] = r.tp;
        j["tn"] = r.tn;
        j["fp"] = r.fp;
        j["fn"] = r.fn;
        j["tp_pct"] = r.pct(r.tp);
        j["tn_pct"] = r.pct(r.tn);
        j["fp_pct"] = r.pct(r.fp);
        j["fn_pct"] = r.pct(r.fn);
        j["accuracy_pct"] = r.accuracy_pct();
        j["failed_scenes"] = r.failed_scenes;
        return j.dump(2) + "\n";
    }

    std::ostringstream out;
    out << "# wakeradon benchmark report\n\n";
    out << "[config]\n" << cfg.resolved().to_text() << "\n";
    out << "[scenes]\n";
    auto bits = [](const std::array<bool, 5>& v) {
        std::string s;
        for (int k = 0; k < 5; ++k) {
            if (k) s += ",";
            s += v[k] ? "1" : "0";
        }
        return s;
    };
    for (const BenchmarkSceneRow& row : r.rows) {
        out << "scene " << row.index << ": seed=" << row.seed << " truth=" << bits(row.truth)
            << " detected=" << bits(row.detected);
        if (!row.error.empty()) out << " error=" << row.error;
        out << "\n";
    }
    out << "\n[aggregate]\n";
    out << "total_slots = " << r.total_slots << "\n";
    out << "tp = " << r.tp << "\n";
    out << "tn = " << r.tn << "\n";
    out << "fp = " << r.fp << "\n";
    out << "fn = " << r.fn << "\n";
    out << "tp_pct = " << format_double(r.pct(r.tp)) << "\n";
    out << "tn_pct = " << format_double(r.pct(r.tn)) << "\n";
    out << "fp_pct = " << format_double(r.pct(r.fp)) << "\n";
    out << "fn_pct = " << format_double(r.pct(r.fn)) << "\n";
    out << "accuracy_pct = " << format_double(r.accuracy_pct()) << "\n";
    out << "failed_scenes = " << r.failed_scenes << "\n";
    return out.str();
}

}  // namespace wakeradon
