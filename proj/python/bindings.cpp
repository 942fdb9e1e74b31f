#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "impulse/detectors.hpp"
#include "impulse/error.hpp"
#include "impulse/evaluation.hpp"
#include "impulse/noise.hpp"
#include "impulse/parallel.hpp"
#include "impulse/pipeline.hpp"

namespace py = pybind11;
using namespace impulse;

namespace {

static_assert(sizeof(Pixel) == 3, "Pixel must be tightly packed");

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

ColorImage to_image(const U8Array& a) {
    if (a.ndim() != 3 || a.shape(2) != 3) throw ShapeError("expected an HxWx3 uint8 array");
    const int h = static_cast<int>(a.shape(0));
    const int w = static_cast<int>(a.shape(1));
    std::vector<Pixel> px(static_cast<std::size_t>(w) * h);
    std::memcpy(px.data(), a.data(), px.size() * 3);
    return ColorImage(w, h, std::move(px));
}

BinaryMask to_mask(const py::array_t<bool, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw ShapeError("expected an HxW mask");
    const int h = static_cast<int>(a.shape(0));
    const int w = static_cast<int>(a.shape(1));
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(w) * h);
    const bool* src = a.data();
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = src[i] ? 1 : 0;
    return BinaryMask(w, h, std::move(bits));
}

U8Array from_image(const ColorImage& img) {
    U8Array out({img.height(), img.width(), 3});
    std::memcpy(out.mutable_data(), img.values().data(), img.size() * 3);
    return out;
}

py::array_t<bool> from_mask(const BinaryMask& m) {
    py::array_t<bool> out({m.height(), m.width()});
    bool* dst = out.mutable_data();
    const auto bits = m.values();
    for (std::size_t i = 0; i < bits.size(); ++i) dst[i] = bits[i] != 0;
    return out;
}

py::array_t<double> from_stat(const StatMap& s) {
    py::array_t<double> out({s.height(), s.width()});
    std::memcpy(out.mutable_data(), s.values().data(), s.size() * sizeof(double));
    return out;
}

// Builds a detector config from a name plus keyword overrides; unknown keys
// and keys that do not belong to the chosen detector raise ConfigError.
DetectorConfig make_detector(const std::string& name, const py::dict& params) {
    DetectorConfig cfg = default_detector(name);
    for (const auto& item : params) {
        const std::string key = py::str(item.first);
        const py::handle value = item.second;
        bool used = false;
        std::visit(
            [&](auto& c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, Dm1Config> || std::is_same_v<T, Dm2Config>) {
                    if (key == "alpha") c.alpha = value.cast<double>(), used = true;
                    if (key == "weighting") c.weighting = RankWeighting::parse(value.cast<std::string>()), used = true;
                } else if constexpr (std::is_same_v<T, Dm3Config>) {
                    if (key == "d") c.d = value.cast<double>(), used = true;
                    if (key == "k") c.k = value.cast<int>(), used = true;
                } else if constexpr (std::is_same_v<T, Dm4Config>) {
                    if (key == "schedule") {
                        c.schedule.clear();
                        for (const auto& [d, k] : value.cast<std::vector<std::pair<double, int>>>())
                            c.schedule.push_back({d, k});
                        used = true;
                    }
                } else {
                    if (key == "pset") c.pset = value.cast<int>(), used = true;
                    if (key == "mset") c.mset = value.cast<int>(), used = true;
                    if (key == "level") c.level = value.cast<int>(), used = true;
                    if (key == "selem") c.selem = StructuringElement::parse(value.cast<std::string>()), used = true;
                    if (key == "levels") {
                        const auto lv = value.cast<std::vector<std::optional<int>>>();
                        if (lv.size() != 5) throw ConfigError("levels", "levels needs exactly 5 entries");
                        for (int i = 0; i < 5; ++i) c.level_override[i] = lv[i];
                        used = true;
                    }
                }
            },
            cfg);
        if (!used) throw ConfigError(key, "unknown parameter '" + key + "' for " + name);
    }
    validate(cfg);
    return cfg;
}

NoiseSpec make_spec(const std::string& family, int variant, double p, std::uint64_t seed) {
    NoiseSpec spec{parse_noise_family(family), variant, p, seed};
    spec.validate();
    return spec;
}

py::dict config_dict(const DetectorConfig& cfg) {
    py::dict d;
    d["detector"] = detector_name(cfg);
    d["params"] = describe_params(cfg);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Impulse noise simulation, detection and switching vector median filtering";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);

    m.def("set_num_threads", &set_num_threads, py::arg("n"));

    m.def(
        "corrupt",
        [](const U8Array& img, const std::string& family, int variant, double p, std::uint64_t seed) {
            const auto r = corrupt(to_image(img), make_spec(family, variant, p, seed));
            return py::make_tuple(from_image(r.noisy), from_mask(r.pixel_mask));
        },
        py::arg("image"), py::arg("family") = "ci", py::arg("variant") = 1, py::arg("p") = 0.1,
        py::arg("seed") = 0, "Returns (noisy, pixel_mask).");

    m.def(
        "detect",
        [](const U8Array& img, const std::string& detector, const py::kwargs& params) {
            const auto out = detect(to_image(img), make_detector(detector, params));
            py::object stat = py::none();
            if (out.per_pixel_stat) stat = from_stat(*out.per_pixel_stat);
            return py::make_tuple(from_mask(out.mask), stat);
        },
        py::arg("image"), py::arg("detector") = "dm5", "Returns (mask, per_pixel_stat or None).");

    m.def(
        "denoise",
        [](const U8Array& img, const std::string& detector, const std::string& replacement, int passes,
           const py::kwargs& params) {
            SwitchingConfig cfg;
            cfg.detector = make_detector(detector, params);
            cfg.replacement = parse_replacement(replacement);
            cfg.passes = passes;
            const auto out = denoise(to_image(img), cfg);
            return py::make_tuple(from_image(out.restored), from_mask(out.mask));
        },
        py::arg("image"), py::arg("detector") = "dm5", py::arg("replacement") = "vmf", py::arg("passes") = 1,
        "Returns (restored, mask).");

    m.def(
        "plain_vmf", [](const U8Array& img) { return from_image(plain_vmf_image(to_image(img))); },
        py::arg("image"));

    m.def(
        "mse_psnr",
        [](const U8Array& clean, const U8Array& restored) {
            const auto r = mse_psnr(to_image(clean), to_image(restored));
            return py::make_tuple(r.mse, r.psnr);
        },
        py::arg("clean"), py::arg("restored"));

    m.def(
        "error_rates",
        [](const py::array_t<bool, py::array::c_style | py::array::forcecast>& truth,
           const py::array_t<bool, py::array::c_style | py::array::forcecast>& detected) {
            const auto c = confusion(to_mask(truth), to_mask(detected));
            const auto r = rates(c);
            py::dict d;
            d["tp"] = c.tp;
            d["fp"] = c.fp;
            d["fn"] = c.fn;
            d["tn"] = c.tn;
            d["fp_rate"] = r.fp_rate;
            d["fn_rate"] = r.fn_rate;
            return d;
        },
        py::arg("truth"), py::arg("detected"));

    m.def(
        "roc",
        [](const U8Array& clean, const std::string& detector, const std::vector<py::dict>& grid,
           const std::string& family, int variant, double p, std::uint64_t seed, const std::string& selection) {
            std::vector<DetectorConfig> configs;
            for (const auto& g : grid) configs.push_back(make_detector(detector, g));
            const auto roc = roc_sweep(to_image(clean), make_spec(family, variant, p, seed), configs,
                                       parse_selection(selection));
            py::list points;
            for (const auto& pt : roc.points) {
                py::dict d = config_dict(pt.params);
                d["fp_rate"] = pt.fp_rate;
                d["fn_rate"] = pt.fn_rate;
                points.append(d);
            }
            return py::make_tuple(points, roc.best);
        },
        py::arg("clean"), py::arg("detector"), py::arg("grid"), py::arg("family") = "ci", py::arg("variant") = 1,
        py::arg("p") = 0.1, py::arg("seed") = 0, py::arg("selection") = "euclidean",
        "Sweeps a list of parameter dicts. Returns (points, best_index).");
}
