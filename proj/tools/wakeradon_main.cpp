#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "wakeradon/benchmark.hpp"
#include "wakeradon/config.hpp"
#include "wakeradon/image_io.hpp"
#include "wakeradon/report.hpp"
#include "wakeradon/selftest.hpp"

namespace {

using namespace wakeradon;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumerical = 3;

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << content;
    if (!out) throw IoError(path + ": write failed");
}

struct FlagSet {
    std::string config_path;
    std::uint64_t seed = 0;
    double gamma = 0.0;
    double delta_over_L = 0.0;
    int max_iter = 0;
    double tol = 0.0;
    std::string format;
};

void add_common_flags(CLI::App* cmd, FlagSet& flags) {
    cmd->add_option("--config", flags.config_path, "key = value configuration file");
    cmd->add_option("--seed", flags.seed, "seed for the solver noise stream and the simulator");
    cmd->add_option("--gamma", flags.gamma, "Cauchy prior scale (working range [0.0001, 0.1])");
    cmd->add_option("--delta-over-L", flags.delta_over_L,
                    "step size as a fraction of 1/L, in [1/25, 1/10]")
        ->check(CLI::Range(0.04, 0.1));
    cmd->add_option("--max-iter", flags.max_iter, "iteration budget (default 200)");
    cmd->add_option("--tol", flags.tol, "relative-change stopping tolerance (default 1e-3)");
    cmd->add_option("--format", flags.format, "report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
}

RunConfig build_config(const CLI::App* cmd, const FlagSet& flags) {
    RunConfig cfg;
    if (!flags.config_path.empty()) cfg.apply(KeyValues::from_file(flags.config_path));
    if (cmd->count("--seed")) {
        cfg.detection.solver.seed = flags.seed;
        cfg.scene.seed = flags.seed;
    }
    if (cmd->count("--gamma")) cfg.detection.solver.gamma = flags.gamma;
    if (cmd->count("--delta-over-L")) cfg.detection.solver.delta_over_L = flags.delta_over_L;
    if (cmd->count("--max-iter")) cfg.detection.solver.max_iter = flags.max_iter;
    if (cmd->count("--tol")) cfg.detection.solver.tol = flags.tol;
    if (cmd->count("--format")) cfg.format = flags.format;
    return cfg;
}

int cmd_detect(const std::string& input, const RunConfig& cfg, const std::string& out_path,
               const std::string& overlay_path) {
    const Image img = load_image(input);
    const WakeReport report = detect_wakes(img, cfg.detection);
    write_output(out_path, render_detect_report(cfg, report, input));
    if (!overlay_path.empty())
        save_overlay_png(overlay_path, img, report, resolve_mask(cfg.detection.mask, img.side()));
    return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, const std::string& out_dir) {
    std::vector<std::pair<Image, GroundTruth>> scenes;
    if (cfg.scene_mode == SceneMode::kTable1) {
        const std::uint64_t seeds[1] = {cfg.scene.seed};
        scenes = table1_suite(cfg.scene.noise.model == NoiseModel::kGaussian
                                  ? cfg.scene.noise.sigma_or_looks
                                  : 0.1,
                              seeds);
    } else {
        scenes.push_back(render_scene(cfg.scene));
    }

    std::string manifest;
    for (std::size_t k = 0; k < scenes.size(); ++k) {
        const std::string name = "scene_" + std::to_string(k + 1) + ".f32";
        save_image_raw(out_dir.empty() ? name : out_dir + "/" + name, scenes[k].first);
        const GroundTruth& truth = scenes[k].second;
        manifest += name + " visibility=";
        for (int s = 0; s < 5; ++s) {
            if (s) manifest += ",";
            manifest += truth.visibility[s] ? "1" : "0";
        }
        manifest += "\n";
        for (const TrueWake& wake : truth.wakes) {
            manifest += name;
            manifest += " wake=";
            manifest += wake_kind_name(wake.kind);
            manifest += " r=" + format_double(wake.r);
            manifest += " theta_deg=" + format_double(wake.theta_deg);
            manifest += " half_sign=" + std::to_string(wake.half_sign);
            manifest += "\n";
        }
    }
    const std::string manifest_path =
        out_dir.empty() ? "ground_truth.txt" : out_dir + "/ground_truth.txt";
    std::ofstream out(manifest_path, std::ios::binary);
    if (!out) throw IoError(manifest_path + ": cannot open for writing");
    out << manifest;
    return kExitOk;
}

int cmd_benchmark(const RunConfig& cfg, const std::string& out_path) {
    const BenchmarkResult result = run_benchmark(cfg);
    write_output(out_path, render_benchmark_report(cfg, result));
    return result.failed_scenes == 0 ? kExitOk : kExitNumerical;
}

int cmd_selftest(bool perturb) {
    const SelfTestResult result = run_selftest(perturb);
    std::cout << render_selftest_text(result);
    return result.all_passed ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wakeradon: ship wake detection in grayscale images by Radon-domain\n"
                 "inversion with a Cauchy prior (MYULA sampler), plus a scene simulator,\n"
                 "an accuracy benchmark, and a numerical self-test."};
    app.require_subcommand(1);
    argv = app.ensure_utf8(argv);

    FlagSet detect_flags, simulate_flags, benchmark_flags;
    std::string input_path, out_path, overlay_path, out_dir, bench_out;
    bool perturb_prox = false;

    CLI::App* detect = app.add_subcommand("detect", "detect wakes in an image file");
    detect->add_option("input", input_path, "input image (PNG, P5 PGM, or raw float)")
        ->required();
    add_common_flags(detect, detect_flags);
    detect->add_option("--out,-o", out_path, "report path (default: stdout)");
    detect->add_option("--overlay", overlay_path, "write an annotated RGB PNG here");

    CLI::App* simulate = app.add_subcommand("simulate", "render synthetic wake scenes");
    add_common_flags(simulate, simulate_flags);
    simulate->add_option("--out-dir", out_dir, "output directory (default: current)");

    CLI::App* benchmark =
        app.add_subcommand("benchmark", "run the visibility-suite accuracy benchmark");
    add_common_flags(benchmark, benchmark_flags);
    benchmark->add_option("--out,-o", bench_out, "report path (default: stdout)");

    CLI::App* selftest = app.add_subcommand("selftest", "run the numerical certification suite");
    selftest->add_flag("--perturb-prox", perturb_prox,
                       "negative control: bias the prox under test so the oracle check fails");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (detect->parsed())
            return cmd_detect(input_path, build_config(detect, detect_flags), out_path,
                              overlay_path);
        if (simulate->parsed())
            return cmd_simulate(build_config(simulate, simulate_flags), out_dir);
        if (benchmark->parsed())
            return cmd_benchmark(build_config(benchmark, benchmark_flags), bench_out);
        if (selftest->parsed()) return cmd_selftest(perturb_prox);
    } catch (const ConfigurationError& e) {
        std::cerr << "error (configuration): " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error (I/O): " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error (numerical): " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
