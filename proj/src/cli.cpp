#include "impulse/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "impulse/detectors.hpp"
#include "impulse/evaluation.hpp"
#include "impulse/image_io.hpp"
#include "impulse/noise.hpp"
#include "impulse/parallel.hpp"
#include "impulse/pipeline.hpp"

namespace impulse::cli {

namespace fs = std::filesystem;

namespace {

struct GlobalFlags {
    std::uint64_t seed = 0;
    int threads = 0;
    std::string report;  // empty = human-readable
};

struct NoiseFlags {
    std::string family = "ci";
    int variant = 1;
    double p = 0.1;

    NoiseSpec spec(std::uint64_t seed) const {
        NoiseSpec s{parse_noise_family(family), variant, p, seed};
        s.validate();
        return s;
    }
};

struct DetectorFlags {
    std::string detector = "dm5";
    std::optional<double> alpha_set;
    std::string weighting = "1/r";
    double d = 0.25;
    int k = 3;
    std::string schedule;
    int pset = Dm5Config{}.pset;
    int mset = Dm5Config{}.mset;
    int level = Dm5Config{}.level;
    std::string selem = "111/111/111";

    DetectorConfig config() const {
        DetectorConfig cfg = default_detector(detector);
        std::visit(
            [&](auto& c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, Dm1Config> || std::is_same_v<T, Dm2Config>) {
                    if (alpha_set) c.alpha = *alpha_set;
                    c.weighting = RankWeighting::parse(weighting);
                } else if constexpr (std::is_same_v<T, Dm3Config>) {
                    c.d = d;
                    c.k = k;
                } else if constexpr (std::is_same_v<T, Dm4Config>) {
                    if (!schedule.empty()) c.schedule = parse_schedule(schedule);
                } else {
                    c.pset = pset;
                    c.mset = mset;
                    c.level = level;
                    c.selem = StructuringElement::parse(selem);
                }
            },
            cfg);
        validate(cfg);
        return cfg;
    }

    static std::vector<PeerGroupStep> parse_schedule(const std::string& text) {
        std::vector<PeerGroupStep> steps;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos) throw ConfigError("schedule", "schedule entries must be d:k");
            try {
                std::size_t used_d = 0;
                std::size_t used_k = 0;
                const double d = std::stod(item.substr(0, colon), &used_d);
                const int k = std::stoi(item.substr(colon + 1), &used_k);
                if (used_d != colon || used_k != item.size() - colon - 1) throw std::invalid_argument(item);
                steps.push_back({d, k});
            } catch (const std::logic_error&) {
                throw ConfigError("schedule", "malformed schedule entry '" + item + "'");
            }
        }
        if (steps.empty()) throw ConfigError("schedule", "schedule must not be empty");
        return steps;
    }
};

void add_noise_flags(CLI::App* cmd, NoiseFlags& f) {
    cmd->add_option("--family", f.family, "Noise family: ci or ct")->capture_default_str();
    cmd->add_option("--variant", f.variant, "Impulse distribution 1, 2 or 3")->capture_default_str();
    cmd->add_option("--p", f.p, "Corruption probability in (0,1)")->capture_default_str();
}

void add_detector_flags(CLI::App* cmd, DetectorFlags& f) {
    cmd->add_option("--detector", f.detector, "dm1..dm5")->capture_default_str();
    cmd->add_option("--alpha", f.alpha_set, "DM1/DM2 threshold");
    cmd->add_option("--weighting", f.weighting, "DM1/DM2 rank weighting: uniform, 1/r, 1/r2")
        ->capture_default_str();
    cmd->add_option("--d", f.d, "DM3 normalized peer radius in [0,1]")->capture_default_str();
    cmd->add_option("--k", f.k, "DM3 peer count threshold in [0,8]")->capture_default_str();
    cmd->add_option("--schedule", f.schedule, "DM4 schedule, e.g. 0.25:3,0.25:2,0.15:2");
    cmd->add_option("--pset", f.pset, "DM5 pset")->capture_default_str();
    cmd->add_option("--mset", f.mset, "DM5 mset")->capture_default_str();
    cmd->add_option("--level", f.level, "DM5 threshold level")->capture_default_str();
    cmd->add_option("--selem", f.selem, "DM5 structuring element rows, e.g. 111/111/111")
        ->capture_default_str();
}

void require_input(const std::string& path) {
    if (!fs::exists(path)) throw IoError(IoError::Kind::Read, "input '" + path + "' does not exist");
}

/// Writes `text` to `path`, or to `out` when path is empty.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError(IoError::Kind::Write, "cannot write report '" + path + "'");
    f << text;
    if (!f) throw IoError(IoError::Kind::Write, "cannot write report '" + path + "'");
}

ReportFormat report_format(const GlobalFlags& g) {
    return g.report.empty() ? ReportFormat::Csv : parse_report_format(g.report);
}

std::string quality_text(const QualityReport& r, ReportFormat fmt) {
    std::ostringstream os;
    write_quality_reports(os, std::span<const QualityReport>(&r, 1), fmt);
    return os.str();
}

// ---------------------------------------------------------------- corrupt

struct CorruptArgs {
    std::string input, output, mask;
    NoiseFlags noise;
};

int cmd_corrupt(const CorruptArgs& a, const GlobalFlags& g, std::ostream& out, std::ostream& err) {
    const NoiseSpec spec = a.noise.spec(g.seed);
    if (!g.report.empty()) parse_report_format(g.report);
    require_input(a.input);
    const ColorImage clean = read_color_image(a.input);
    const CorruptionResult res = corrupt(clean, spec);
    write_color_image(a.output, res.noisy);
    if (!a.mask.empty()) write_mask(a.mask, res.pixel_mask);

    const double fraction =
        static_cast<double>(mask_count(res.pixel_mask)) / static_cast<double>(res.pixel_mask.size());
    if (g.report.empty()) {
        out << spec.describe() << '\n';
        err << "corrupted " << format_real(fraction) << " of pixels\n";
    } else if (report_format(g) == ReportFormat::Json) {
        out << nlohmann::json{{"family", to_string(spec.family)},
                              {"variant", spec.variant},
                              {"p", spec.p},
                              {"seed", spec.seed},
                              {"corrupted_fraction", fraction}}
                   .dump(2)
            << '\n';
    } else {
        out << "family,variant,p,seed,corrupted_fraction\n"
            << to_string(spec.family) << ',' << spec.variant << ',' << format_real(spec.p) << ',' << spec.seed
            << ',' << format_real(fraction) << '\n';
    }
    return kOk;
}

// ---------------------------------------------------------------- detect

struct DetectArgs {
    std::string input, mask_out, truth;
    DetectorFlags det;
};

int cmd_detect(const DetectArgs& a, const GlobalFlags& g, std::ostream& out, std::ostream& err) {
    const DetectorConfig cfg = a.det.config();
    const ReportFormat fmt = report_format(g);
    require_input(a.input);
    if (!a.truth.empty()) require_input(a.truth);
    const ColorImage img = read_color_image(a.input);
    const DetectionOutcome res = detect(img, cfg);
    write_mask(a.mask_out, res.mask);
    err << detector_name(cfg) << ' ' << describe_params(cfg) << ": flagged " << mask_count(res.mask) << " of "
        << res.mask.size() << " pixels\n";
    if (!a.truth.empty()) {
        const BinaryMask truth = read_mask(a.truth);
        if (!truth.same_shape(res.mask)) throw ShapeError("truth mask shape differs from image");
        const ErrorRates r = rates(confusion(truth, res.mask));
        QualityReport q;
        q.label = detector_name(cfg);
        q.fp_rate = r.fp_rate;
        q.fn_rate = r.fn_rate;
        out << quality_text(q, fmt);
    }
    return kOk;
}

// ---------------------------------------------------------------- denoise

struct DenoiseArgs {
    std::string input, output, mask_out, clean, truth, report_out;
    std::string replacement = "vmf";
    int passes = 1;
    DetectorFlags det;
};

int cmd_denoise(const DenoiseArgs& a, const GlobalFlags& g, std::ostream& out, std::ostream& err) {
    SwitchingConfig cfg{a.det.config(), parse_replacement(a.replacement), a.passes};
    if (cfg.passes < 1) throw ConfigError("passes", "passes must be at least 1");
    const ReportFormat fmt = report_format(g);
    require_input(a.input);
    if (!a.clean.empty()) require_input(a.clean);
    if (!a.truth.empty()) require_input(a.truth);

    const ColorImage noisy = read_color_image(a.input);
    const DenoiseResult res = denoise(noisy, cfg);
    write_color_image(a.output, res.restored);
    if (!a.mask_out.empty()) write_mask(a.mask_out, res.mask);
    err << detector_name(cfg.detector) << ' ' << describe_params(cfg.detector) << ": replaced "
        << mask_count(res.mask) << " pixels\n";

    if (!a.clean.empty()) {
        const ColorImage clean = read_color_image(a.clean);
        const MsePsnr m = mse_psnr(clean, res.restored);
        QualityReport q;
        q.label = detector_name(cfg.detector);
        q.mse = m.mse;
        q.psnr = m.psnr;
        if (!a.truth.empty()) {
            const BinaryMask truth = read_mask(a.truth);
            if (!truth.same_shape(res.mask)) throw ShapeError("truth mask shape differs from image");
            const ErrorRates r = rates(confusion(truth, res.mask));
            q.fp_rate = r.fp_rate;
            q.fn_rate = r.fn_rate;
        }
        emit(quality_text(q, fmt), a.report_out, out);
    }
    return kOk;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
    std::string clean, restored, truth, detected, report_out, label = "evaluation";
};

int cmd_evaluate(const EvaluateArgs& a, const GlobalFlags& g, std::ostream& out, std::ostream&) {
    const ReportFormat fmt = report_format(g);
    require_input(a.clean);
    require_input(a.restored);
    const MsePsnr m = mse_psnr(read_color_image(a.clean), read_color_image(a.restored));
    QualityReport q;
    q.label = a.label;
    q.mse = m.mse;
    q.psnr = m.psnr;
    if (!a.truth.empty() || !a.detected.empty()) {
        if (a.truth.empty() || a.detected.empty()) {
            throw ConfigError("truth", "--truth and --detected must be given together");
        }
        require_input(a.truth);
        require_input(a.detected);
        const ErrorRates r = rates(confusion(read_mask(a.truth), read_mask(a.detected)));
        q.fp_rate = r.fp_rate;
        q.fn_rate = r.fn_rate;
    }
    emit(quality_text(q, fmt), a.report_out, out);
    return kOk;
}

// ---------------------------------------------------------------- roc

struct RocArgs {
    std::string input, output, select = "euclidean";
    std::string alpha_grid, d_grid, k_grid, pset_grid, mset_grid, level_grid;
    NoiseFlags noise;
    DetectorFlags det;
};

int as_int(double v, const std::string& flag) {
    if (v != std::floor(v)) throw ConfigError(flag, flag + " grid values must be integers");
    return static_cast<int>(v);
}

std::vector<DetectorConfig> build_grid(const RocArgs& a) {
    const DetectorConfig base = a.det.config();
    auto grid_or = [](const std::string& text, const std::string& flag, double fallback) {
        return text.empty() ? std::vector<double>{fallback} : parse_grid(text, flag);
    };
    std::vector<DetectorConfig> grid;
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Dm1Config> || std::is_same_v<T, Dm2Config>) {
                for (double alpha : grid_or(a.alpha_grid, "alpha-grid", c.alpha)) {
                    T v = c;
                    v.alpha = alpha;
                    grid.push_back(v);
                }
            } else if constexpr (std::is_same_v<T, Dm3Config> || std::is_same_v<T, Dm4Config>) {
                const double d0 = [&] {
                    if constexpr (std::is_same_v<T, Dm3Config>) return c.d;
                    else return c.schedule.front().d;
                }();
                const int k0 = [&] {
                    if constexpr (std::is_same_v<T, Dm3Config>) return c.k;
                    else return c.schedule.front().k;
                }();
                for (double d : grid_or(a.d_grid, "d-grid", d0)) {
                    for (double k : grid_or(a.k_grid, "k-grid", k0)) {
                        T v = c;
                        if constexpr (std::is_same_v<T, Dm3Config>) {
                            v.d = d;
                            v.k = as_int(k, "k-grid");
                        } else {
                            v.schedule.front() = {d, as_int(k, "k-grid")};
                        }
                        grid.push_back(v);
                    }
                }
            } else {
                for (double pset : grid_or(a.pset_grid, "pset-grid", c.pset)) {
                    for (double mset : grid_or(a.mset_grid, "mset-grid", c.mset)) {
                        for (double level : grid_or(a.level_grid, "level-grid", c.level)) {
                            Dm5Config v = c;
                            v.pset = as_int(pset, "pset-grid");
                            v.mset = as_int(mset, "mset-grid");
                            v.level = as_int(level, "level-grid");
                            grid.push_back(v);
                        }
                    }
                }
            }
        },
        base);
    for (const auto& cfg : grid) validate(cfg);
    return grid;
}

int cmd_roc(const RocArgs& a, const GlobalFlags& g, std::ostream& out, std::ostream& err) {
    const NoiseSpec spec = a.noise.spec(g.seed);
    const auto grid = build_grid(a);
    const Selection rule = parse_selection(a.select);
    const ReportFormat fmt = report_format(g);
    require_input(a.input);
    const ColorImage clean = read_color_image(a.input);
    const RocResult roc = roc_sweep(clean, spec, grid, rule);
    std::ostringstream table;
    write_roc(table, roc, fmt);
    emit(table.str(), a.output, out);
    const RocPoint& best = roc.points[roc.best];
    err << "selected " << detector_name(best.params) << ' ' << describe_params(best.params)
        << " fp_rate=" << format_real(best.fp_rate) << " fn_rate=" << format_real(best.fn_rate) << '\n';
    return kOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
    std::string input, output;
    std::string detectors = "dm1,dm2,dm3,dm4,dm5";
    int repeat = 20;
    bool no_noise = false;
    NoiseFlags noise;
    DetectorFlags det;
};

int cmd_bench(const BenchArgs& a, const GlobalFlags& g, std::ostream& out, std::ostream& err) {
    if (a.repeat < 1) throw ConfigError("repeat", "repeat must be at least 1");
    const ReportFormat fmt = report_format(g);
    std::vector<DetectorConfig> configs;
    std::stringstream ss(a.detectors);
    std::string name;
    while (std::getline(ss, name, ',')) {
        DetectorFlags f = a.det;
        f.detector = name;
        try {
            configs.push_back(f.config());
        } catch (const ConfigError& e) {
            throw ConfigError(e.field() == "detector" ? "detectors" : e.field(), e.what());
        }
    }
    if (configs.empty()) throw ConfigError("detectors", "no detectors given");
    require_input(a.input);
    const ColorImage clean = read_color_image(a.input);
    std::optional<CorruptionResult> noisy;
    if (!a.no_noise) noisy = corrupt(clean, a.noise.spec(g.seed));
    const ColorImage& subject = noisy ? noisy->noisy : clean;

    struct Row {
        std::string detector;
        TimedDenoise timing;
        MsePsnr quality;
        ErrorRates err_rates;
    };
    std::vector<Row> rows;
    for (const auto& cfg : configs) {
        err << "timing " << detector_name(cfg) << " (" << a.repeat << " runs)\n";
        TimedDenoise t = timed_denoise(subject, SwitchingConfig{cfg}, a.repeat);
        const MsePsnr q = mse_psnr(clean, t.result.restored);
        const ErrorRates r = noisy ? rates(confusion(noisy->pixel_mask, t.result.mask)) : ErrorRates{};
        rows.push_back({detector_name(cfg), std::move(t), q, r});
    }

    std::ostringstream os;
    if (fmt == ReportFormat::Csv) {
        os << "detector,median_seconds,samples,mse,psnr,fp_rate,fn_rate\n";
        for (const auto& r : rows) {
            os << r.detector << ',' << format_real(r.timing.elapsed_seconds) << ',' << r.timing.samples.size()
               << ',' << format_real(r.quality.mse) << ',' << format_real(r.quality.psnr) << ','
               << format_real(r.err_rates.fp_rate) << ',' << format_real(r.err_rates.fn_rate) << '\n';
        }
    } else {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rows) {
            arr.push_back({{"detector", r.detector},
                           {"median_seconds", r.timing.elapsed_seconds},
                           {"samples", r.timing.samples},
                           {"mse", r.quality.mse},
                           {"psnr", std::isfinite(r.quality.psnr) ? nlohmann::json(r.quality.psnr)
                                                                  : nlohmann::json("inf")},
                           {"fp_rate", r.err_rates.fp_rate},
                           {"fn_rate", r.err_rates.fn_rate}});
        }
        os << nlohmann::json{{"rows", arr}}.dump(2) << '\n';
    }
    emit(os.str(), a.output, out);
    return kOk;
}

std::string flag_for(const std::string& field) { return "--" + field; }

}  // namespace

std::vector<double> parse_grid(const std::string& text, const std::string& flag) {
    std::vector<double> values;
    auto to_double = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
            return v;
        } catch (const std::logic_error&) {
            throw ConfigError(flag, "malformed grid value '" + s + "' in --" + flag);
        }
    };
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string part;
        while (std::getline(ss, part, ':')) parts.push_back(part);
        if (parts.size() != 3) throw ConfigError(flag, "--" + flag + " range must be start:stop:step");
        const double start = to_double(parts[0]);
        const double stop = to_double(parts[1]);
        const double step = to_double(parts[2]);
        if (!(step > 0.0)) throw ConfigError(flag, "--" + flag + " step must be positive");
        const double n = std::floor((stop - start) / step + 1e-9);
        if (n >= 1e6) throw ConfigError(flag, "--" + flag + " grid is too large");
        for (long i = 0; i <= static_cast<long>(n); ++i) values.push_back(start + static_cast<double>(i) * step);
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) values.push_back(to_double(item));
        }
    }
    if (values.empty()) throw ConfigError(flag, "--" + flag + " grid is empty");
    return values;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Impulse noise corruption, detection, switching vector-median denoising and evaluation"};
    app.name("impulse");
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags g;
    app.add_option("--seed", g.seed, "Seed for all randomness")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads for row-parallel loops (0 = all cores)")
        ->capture_default_str();
    app.add_option("--report", g.report, "Machine-readable report format: csv or json");

    CorruptArgs corrupt_args;
    auto* corrupt_cmd = app.add_subcommand("corrupt", "Corrupt an image with impulse noise");
    corrupt_cmd->add_option("-i,--input", corrupt_args.input, "Clean image (.png/.ppm)")->required();
    corrupt_cmd->add_option("-o,--output", corrupt_args.output, "Noisy image (.png/.ppm)")->required();
    corrupt_cmd->add_option("--mask", corrupt_args.mask, "Ground-truth pixel mask (.png/.pbm)");
    add_noise_flags(corrupt_cmd, corrupt_args.noise);

    DetectArgs detect_args;
    auto* detect_cmd = app.add_subcommand("detect", "Run a detector and write its mask");
    detect_cmd->add_option("-i,--input", detect_args.input, "Noisy image")->required();
    detect_cmd->add_option("--mask-out", detect_args.mask_out, "Detection mask (.png/.pbm)")->required();
    detect_cmd->add_option("--truth", detect_args.truth, "Ground-truth mask for FP/FN rates");
    add_detector_flags(detect_cmd, detect_args.det);

    DenoiseArgs denoise_args;
    auto* denoise_cmd = app.add_subcommand("denoise", "Switching filter: detect and replace");
    denoise_cmd->add_option("-i,--input", denoise_args.input, "Noisy image")->required();
    denoise_cmd->add_option("-o,--output", denoise_args.output, "Restored image")->required();
    denoise_cmd->add_option("--mask-out", denoise_args.mask_out, "Detection mask");
    denoise_cmd->add_option("--clean", denoise_args.clean, "Clean reference; enables the quality report");
    denoise_cmd->add_option("--truth", denoise_args.truth, "Ground-truth mask for FP/FN rates");
    denoise_cmd->add_option("--report-out", denoise_args.report_out, "Write the report here instead of stdout");
    denoise_cmd->add_option("--replacement", denoise_args.replacement, "vmf or amf")->capture_default_str();
    denoise_cmd->add_option("--passes", denoise_args.passes, "Detect-and-replace passes")->capture_default_str();
    add_detector_flags(denoise_cmd, denoise_args.det);

    EvaluateArgs eval_args;
    auto* eval_cmd = app.add_subcommand("evaluate", "MSE/PSNR and FP/FN rates from files");
    eval_cmd->add_option("--clean", eval_args.clean, "Clean image")->required();
    eval_cmd->add_option("--restored", eval_args.restored, "Restored image")->required();
    eval_cmd->add_option("--truth", eval_args.truth, "Ground-truth mask");
    eval_cmd->add_option("--detected", eval_args.detected, "Detection mask");
    eval_cmd->add_option("--label", eval_args.label, "Report label")->capture_default_str();
    eval_cmd->add_option("--report-out", eval_args.report_out, "Write the report here instead of stdout");

    RocArgs roc_args;
    auto* roc_cmd = app.add_subcommand("roc", "Sweep detector parameters and report FP/FN per grid point");
    roc_cmd->add_option("-i,--input", roc_args.input, "Clean image")->required();
    roc_cmd->add_option("-o,--output", roc_args.output, "Table output (default stdout)");
    roc_cmd->add_option("--select", roc_args.select, "Operating point rule: euclidean or sum")
        ->capture_default_str();
    roc_cmd->add_option("--alpha-grid", roc_args.alpha_grid, "DM1/DM2 alpha grid, start:stop:step or list");
    roc_cmd->add_option("--d-grid", roc_args.d_grid, "DM3/DM4 d grid");
    roc_cmd->add_option("--k-grid", roc_args.k_grid, "DM3/DM4 k grid");
    roc_cmd->add_option("--pset-grid", roc_args.pset_grid, "DM5 pset grid");
    roc_cmd->add_option("--mset-grid", roc_args.mset_grid, "DM5 mset grid");
    roc_cmd->add_option("--level-grid", roc_args.level_grid, "DM5 level grid");
    add_noise_flags(roc_cmd, roc_args.noise);
    add_detector_flags(roc_cmd, roc_args.det);

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "Median wall time of the switching filter per detector");
    bench_cmd->add_option("-i,--input", bench_args.input, "Clean image")->required();
    bench_cmd->add_option("-o,--output", bench_args.output, "Table output (default stdout)");
    bench_cmd->add_option("--detectors", bench_args.detectors, "Comma-separated detector list")
        ->capture_default_str();
    bench_cmd->add_option("--repeat", bench_args.repeat, "Timed runs per detector")->capture_default_str();
    bench_cmd->add_flag("--no-noise", bench_args.no_noise, "Time on the input as given");
    add_noise_flags(bench_cmd, bench_args.noise);
    add_detector_flags(bench_cmd, bench_args.det);

    std::vector<const char*> argv;
    argv.push_back("impulse");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidArgs;
    }

    try {
        if (g.threads < 0) throw ConfigError("threads", "threads must be non-negative");
        set_num_threads(g.threads);
        if (*corrupt_cmd) return cmd_corrupt(corrupt_args, g, out, err);
        if (*detect_cmd) return cmd_detect(detect_args, g, out, err);
        if (*denoise_cmd) return cmd_denoise(denoise_args, g, out, err);
        if (*eval_cmd) return cmd_evaluate(eval_args, g, out, err);
        if (*roc_cmd) return cmd_roc(roc_args, g, out, err);
        if (*bench_cmd) return cmd_bench(bench_args, g, out, err);
    } catch (const ConfigError& e) {
        err << "error: invalid value for " << flag_for(e.field()) << ": " << e.what() << '\n';
        return kInvalidArgs;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == IoError::Kind::Read ? kInputError : kOutputError;
    } catch (const ShapeError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInternalError;
    }
    return kInvalidArgs;
}

}  // namespace impulse::cli
