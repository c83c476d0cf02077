#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scseg/basis.hpp"
#include "scseg/cascade.hpp"
#include "scseg/metrics.hpp"
#include "scseg/reconstruct.hpp"
#include "scseg/synth.hpp"

namespace py = pybind11;

namespace {

scseg::GrayImage image_from_array(const py::array& array) {
    const auto a = py::array_t<double, py::array::c_style | py::array::forcecast>::ensure(array);
    if (!a || a.ndim() != 2) throw std::invalid_argument("expected a 2-D image array");
    scseg::GrayImage image(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
    const double* src = a.data();
    std::copy(src, src + image.pixels.size(), image.pixels.begin());
    return image;
}

py::array_t<double> image_to_array(const scseg::GrayImage& image) {
    py::array_t<double> out({image.height, image.width});
    std::copy(image.pixels.begin(), image.pixels.end(), out.mutable_data());
    return out;
}

scseg::LabelMask mask_from_array(const py::array& array) {
    const auto a = py::array_t<double, py::array::c_style | py::array::forcecast>::ensure(array);
    if (!a || a.ndim() != 2) throw std::invalid_argument("expected a 2-D mask array");
    scseg::LabelMask mask(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
    const double* src = a.data();
    for (std::size_t i = 0; i < mask.labels.size(); ++i)
        mask.labels[i] = src[i] != 0.0 ? scseg::Label::Foreground : scseg::Label::Background;
    return mask;
}

py::array_t<bool> mask_to_array(const scseg::LabelMask& mask) {
    py::array_t<bool> out({mask.height, mask.width});
    bool* dst = out.mutable_data();
    for (std::size_t i = 0; i < mask.labels.size(); ++i)
        dst[i] = mask.labels[i] == scseg::Label::Foreground;
    return out;
}

py::dict report_to_dict(const scseg::MetricsReport& r) {
    py::dict d;
    d["tp"] = r.counts.tp;
    d["fp"] = r.counts.fp;
    d["fn"] = r.counts.fn;
    d["tn"] = r.counts.tn;
    d["precision"] = r.scores.precision;
    d["recall"] = r.scores.recall;
    d["f1"] = r.scores.f1;
    return d;
}

scseg::SynthKind kind_from_name(const std::string& name) {
    if (name == "constant") return scseg::SynthKind::Constant;
    if (name == "smooth") return scseg::SynthKind::Smooth;
    if (name == "palette") return scseg::SynthKind::PaletteText;
    if (name == "smooth-outliers") return scseg::SynthKind::SmoothPlusOutliers;
    throw std::invalid_argument("unknown synth kind: " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Block-wise smooth-background / foreground segmentation of screen-content images";

    py::class_<scseg::SegParams>(m, "SegParams")
        .def(py::init<>())
        .def_readwrite("block_size", &scseg::SegParams::block_size)
        .def_readwrite("num_bases", &scseg::SegParams::num_bases)
        .def_readwrite("inlier_tol", &scseg::SegParams::inlier_tol)
        .def_readwrite("max_iters", &scseg::SegParams::max_iters)
        .def_readwrite("const_std_tol", &scseg::SegParams::const_std_tol)
        .def_readwrite("max_colors", &scseg::SegParams::max_colors)
        .def_readwrite("min_range", &scseg::SegParams::min_range)
        .def_readwrite("consensus_frac", &scseg::SegParams::consensus_frac)
        .def_readwrite("seed", &scseg::SegParams::seed);

    py::class_<scseg::SegmentationResult>(m, "SegmentationResult")
        .def_property_readonly("mask",
                               [](const scseg::SegmentationResult& r) { return mask_to_array(r.mask); })
        .def_property_readonly("stages",
                               [](const scseg::SegmentationResult& r) {
                                   std::vector<std::string> names;
                                   names.reserve(r.decisions.size());
                                   for (const auto& d : r.decisions)
                                       names.emplace_back(scseg::stage_name(d.stage));
                                   return names;
                               })
        .def_property_readonly("blocks",
                               [](const scseg::SegmentationResult& r) {
                                   py::list blocks;
                                   for (std::size_t i = 0; i < r.blocks.size(); ++i) {
                                       const scseg::BlockRef& b = r.blocks[i];
                                       const scseg::BlockDecision& d = r.decisions[i];
                                       py::dict entry;
                                       entry["row"] = b.block_row;
                                       entry["col"] = b.block_col;
                                       entry["x"] = b.x0;
                                       entry["y"] = b.y0;
                                       entry["w"] = b.w;
                                       entry["h"] = b.h;
                                       entry["stage"] = scseg::stage_name(d.stage);
                                       if (d.coeffs) entry["coeffs"] = *d.coeffs;
                                       if (d.background_color)
                                           entry["background_color"] = *d.background_color;
                                       blocks.append(std::move(entry));
                                   }
                                   return blocks;
                               })
        .def_readonly("params_used", &scseg::SegmentationResult::params_used);

    m.def(
        "segment",
        [](const py::array& image, const scseg::SegParams& params, int threads) {
            return scseg::segment_image(image_from_array(image), params, threads);
        },
        py::arg("image"), py::arg("params") = scseg::SegParams{}, py::arg("threads") = 0,
        "Segment a 2-D grayscale array; returns a SegmentationResult.");

    m.def(
        "fill_background",
        [](const py::array& image, const scseg::SegmentationResult& result) {
            const scseg::BasisSet basis =
                scseg::eval_basis(result.params_used.block_size, result.params_used.num_bases);
            return image_to_array(
                scseg::fill_background(image_from_array(image), result, basis));
        },
        py::arg("image"), py::arg("result"),
        "Replace foreground pixels with smooth-model predictions refit to the background.");

    m.def(
        "evaluate",
        [](const py::array& predicted, const py::array& truth) {
            return report_to_dict(
                scseg::evaluate_masks(mask_from_array(predicted), mask_from_array(truth)));
        },
        py::arg("predicted"), py::arg("truth"),
        "Confusion counts and precision/recall/F1, foreground = positive.");

    m.def(
        "confusion",
        [](const py::array& predicted, const py::array& truth) {
            const scseg::Confusion c =
                scseg::confusion(mask_from_array(predicted), mask_from_array(truth));
            return py::make_tuple(c.tp, c.fp, c.fn, c.tn);
        },
        py::arg("predicted"), py::arg("truth"));

    m.def(
        "precision_recall_f1",
        [](std::uint64_t tp, std::uint64_t fp, std::uint64_t fn) {
            const scseg::Scores s = scseg::precision_recall_f1(tp, fp, fn);
            return py::make_tuple(s.precision, s.recall, s.f1);
        },
        py::arg("tp"), py::arg("fp"), py::arg("fn"));

    m.def(
        "synth_block",
        [](const std::string& kind, int block_size, int bases, double fraction, double offset,
           double base_value, std::uint64_t seed,
           const std::optional<std::vector<double>>& coeffs) {
            scseg::SynthSpec spec;
            spec.block_side = block_size;
            spec.kind = kind_from_name(kind);
            spec.outlier_fraction = fraction;
            spec.outlier_offset = offset;
            spec.base_value = base_value;
            spec.seed = seed;
            spec.coeffs = coeffs;
            const scseg::BasisSet basis = scseg::eval_basis(block_size, bases);
            const scseg::SynthBlock block = scseg::generate(spec, basis);
            return py::make_tuple(image_to_array(block.image), mask_to_array(block.truth),
                                  block.coeffs);
        },
        py::arg("kind"), py::arg("block_size") = 64, py::arg("bases") = 10,
        py::arg("fraction") = 0.05, py::arg("offset") = 100.0, py::arg("base_value") = 128.0,
        py::arg("seed") = 0, py::arg("coeffs") = std::nullopt,
        "Deterministic synthetic block with ground truth; returns (image, truth, coeffs).");

    m.def(
        "basis_matrix",
        [](int block_size, int bases) {
            const scseg::BasisSet basis = scseg::eval_basis(block_size, bases);
            py::array_t<double> out({basis.matrix.rows, basis.matrix.cols});
            std::copy(basis.matrix.data.begin(), basis.matrix.data.end(), out.mutable_data());
            return out;
        },
        py::arg("block_size"), py::arg("bases"),
        "The N^2 x K matrix of zigzag-ordered 2-D DCT basis functions.");

    m.def("zigzag_order", [](int count) { return scseg::zigzag_order(count); }, py::arg("count"));
    m.def(
        "zigzag_order", [](int count, int grid) { return scseg::zigzag_order(count, grid); },
        py::arg("count"), py::arg("grid"));

    m.def(
        "to_grayscale",
        [](const py::array& rgb) {
            const auto a =
                py::array_t<double, py::array::c_style | py::array::forcecast>::ensure(rgb);
            if (!a || a.ndim() != 3 || a.shape(2) != 3)
                throw std::invalid_argument("expected an (H, W, 3) array");
            const int height = static_cast<int>(a.shape(0));
            const int width = static_cast<int>(a.shape(1));
            const std::size_t n = static_cast<std::size_t>(width) * height;
            std::vector<double> r(n), g(n), b(n);
            const double* src = a.data();
            for (std::size_t i = 0; i < n; ++i) {
                r[i] = src[3 * i];
                g[i] = src[3 * i + 1];
                b[i] = src[3 * i + 2];
            }
            return image_to_array(scseg::to_grayscale(width, height, r, g, b));
        },
        py::arg("rgb"), "BT.601 luma of an (H, W, 3) array, rounded to integers.");

#ifdef SCSEG_VERSION
    m.attr("__version__") = SCSEG_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
