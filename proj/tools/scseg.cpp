// scseg — segments screen-content images into a smooth background layer and a
// foreground mask, evaluates masks against ground truth, and generates
// synthetic test data.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "scseg/basis.hpp"
#include "scseg/cascade.hpp"
#include "scseg/image_io.hpp"
#include "scseg/metrics.hpp"
#include "scseg/reconstruct.hpp"
#include "scseg/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void add_param_flags(CLI::App* cmd, scseg::SegParams& params) {
    cmd->add_option("--block-size", params.block_size, "Block side in pixels")
        ->capture_default_str();
    cmd->add_option("--bases", params.num_bases, "Number of DCT basis functions")
        ->capture_default_str();
    cmd->add_option("--inlier-tol", params.inlier_tol, "Max |error| for a background pixel")
        ->capture_default_str();
    cmd->add_option("--max-iters", params.max_iters, "RANSAC iteration cap")
        ->capture_default_str();
    cmd->add_option("--const-std", params.const_std_tol, "Std-dev threshold for constant blocks")
        ->capture_default_str();
    cmd->add_option("--max-colors", params.max_colors, "Distinct-color threshold")
        ->capture_default_str();
    cmd->add_option("--min-range", params.min_range, "Intensity-range threshold")
        ->capture_default_str();
    cmd->add_option("--consensus", params.consensus_frac, "Early-exit consensus fraction")
        ->capture_default_str();
    cmd->add_option("--seed", params.seed, "RNG seed")->capture_default_str();
}

json decisions_json(const scseg::GrayImage& image, const scseg::SegmentationResult& result) {
    const scseg::SegParams& p = result.params_used;
    json doc;
    doc["image"] = {{"width", image.width}, {"height", image.height}};
    doc["params"] = {{"block_size", p.block_size},   {"bases", p.num_bases},
                     {"inlier_tol", p.inlier_tol},   {"max_iters", p.max_iters},
                     {"const_std", p.const_std_tol}, {"max_colors", p.max_colors},
                     {"min_range", p.min_range},     {"consensus", p.consensus_frac},
                     {"seed", p.seed}};
    json blocks = json::array();
    for (std::size_t i = 0; i < result.blocks.size(); ++i) {
        const scseg::BlockRef& b = result.blocks[i];
        const scseg::BlockDecision& d = result.decisions[i];
        json entry = {{"row", b.block_row}, {"col", b.block_col}, {"x", b.x0},
                      {"y", b.y0},          {"w", b.w},           {"h", b.h},
                      {"stage", scseg::stage_name(d.stage)}};
        if (d.coeffs) entry["coeffs"] = *d.coeffs;
        if (d.background_color) entry["background_color"] = *d.background_color;
        blocks.push_back(std::move(entry));
    }
    doc["blocks"] = std::move(blocks);
    return doc;
}

int run_segment(const std::string& input, const std::string& mask_out,
                const std::string& fill_out, const std::string& decisions_out,
                const scseg::SegParams& params, int threads) {
    const scseg::GrayImage image = scseg::load_image(input);
    const scseg::SegmentationResult result = scseg::segment_image(image, params, threads);
    scseg::save_mask(result.mask, mask_out);

    if (!fill_out.empty()) {
        const scseg::BasisSet basis = scseg::eval_basis(params.block_size, params.num_bases);
        scseg::save_image(scseg::fill_background(image, result, basis), fill_out);
    }
    if (!decisions_out.empty()) {
        std::ofstream out(decisions_out);
        if (!out) throw std::runtime_error(decisions_out + ": cannot open for writing");
        out << decisions_json(image, result).dump(2) << "\n";
    }

    std::map<std::string, int> stages;
    for (const scseg::BlockDecision& d : result.decisions) ++stages[scseg::stage_name(d.stage)];
    std::printf("%zu blocks:", result.blocks.size());
    for (const auto& [name, count] : stages) std::printf(" %d %s", count, name.c_str());
    const double fg = 100.0 * static_cast<double>(result.mask.foreground_count()) /
                      static_cast<double>(result.mask.labels.size());
    std::printf("; foreground %.1f%%\n", fg);
    return 0;
}

std::vector<std::pair<std::string, std::pair<fs::path, fs::path>>> eval_pairs(
    const std::string& pred, const std::string& truth) {
    std::vector<std::pair<std::string, std::pair<fs::path, fs::path>>> pairs;
    if (fs::is_directory(pred) != fs::is_directory(truth))
        throw std::runtime_error("--pred and --truth must both be files or both directories");
    if (!fs::is_directory(pred)) {
        pairs.emplace_back(fs::path(pred).filename().string(), std::make_pair(pred, truth));
        return pairs;
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(pred))
        if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw std::runtime_error(pred + ": no files to evaluate");
    for (const fs::path& p : files) {
        const fs::path t = fs::path(truth) / p.filename();
        if (!fs::exists(t))
            throw std::runtime_error(t.string() + ": missing ground truth for " + p.string());
        pairs.emplace_back(p.filename().string(), std::make_pair(p, t));
    }
    return pairs;
}

json report_json(const scseg::MetricsReport& r) {
    return {{"name", r.name},
            {"tp", r.counts.tp},
            {"fp", r.counts.fp},
            {"fn", r.counts.fn},
            {"tn", r.counts.tn},
            {"precision", r.scores.precision},
            {"recall", r.scores.recall},
            {"f1", r.scores.f1}};
}

int run_eval(const std::string& pred, const std::string& truth, bool micro,
             const std::string& report_path) {
    std::vector<scseg::MetricsReport> reports;
    for (const auto& [name, paths] : eval_pairs(pred, truth)) {
        const scseg::LabelMask p = scseg::load_mask(paths.first);
        const scseg::LabelMask t = scseg::load_mask(paths.second);
        reports.push_back(scseg::evaluate_masks(p, t, name));
    }
    const scseg::AverageMode mode =
        micro ? scseg::AverageMode::Micro : scseg::AverageMode::Macro;
    const scseg::MetricsReport agg = scseg::aggregate(reports, mode);

    json doc;
    doc["mode"] = micro ? "micro" : "macro";
    doc["per_image"] = json::array();
    for (const scseg::MetricsReport& r : reports) doc["per_image"].push_back(report_json(r));
    doc["aggregate"] = report_json(agg);
    std::ofstream out(report_path);
    if (!out) throw std::runtime_error(report_path + ": cannot open for writing");
    out << doc.dump(2) << "\n";

    std::printf("%zu image(s), %s average: precision %.1f%%  recall %.1f%%  F1 %.1f%%\n",
                reports.size(), micro ? "micro" : "macro", 100.0 * agg.scores.precision,
                100.0 * agg.scores.recall, 100.0 * agg.scores.f1);
    return 0;
}

int run_synth(const std::string& kind_name, const std::string& out_path,
              const std::string& truth_path, scseg::SynthSpec spec, int bases,
              const std::vector<double>& coeffs) {
    static const std::map<std::string, scseg::SynthKind> kinds = {
        {"constant", scseg::SynthKind::Constant},
        {"smooth", scseg::SynthKind::Smooth},
        {"palette", scseg::SynthKind::PaletteText},
        {"smooth-outliers", scseg::SynthKind::SmoothPlusOutliers},
    };
    spec.kind = kinds.at(kind_name);
    if (!coeffs.empty()) spec.coeffs = coeffs;
    const scseg::BasisSet basis = scseg::eval_basis(spec.block_side, bases);
    const scseg::SynthBlock block = scseg::generate(spec, basis);
    scseg::save_image(block.image, out_path);
    if (!truth_path.empty()) scseg::save_mask(block.truth, truth_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Background/foreground segmentation of screen-content images"};
    app.set_version_flag("--version", "scseg 0.1.0");
    app.require_subcommand(1);

    // segment
    auto* segment = app.add_subcommand("segment", "Segment an image into background and foreground");
    std::string seg_input, mask_out, fill_out, decisions_out;
    scseg::SegParams params;
    int threads = 0;
    segment->add_option("input", seg_input, "Input image (PGM/PPM/PNG)")->required();
    segment->add_option("--mask-out", mask_out, "Foreground mask output path")->required();
    segment->add_option("--fill-out", fill_out, "Filled background layer output path");
    segment->add_option("--decisions-out", decisions_out, "Per-block decision report (JSON)");
    add_param_flags(segment, params);
    segment->add_option("--threads", threads, "Worker threads (0 = auto)")->capture_default_str();

    // eval
    auto* eval = app.add_subcommand("eval", "Score predicted masks against ground truth");
    std::string pred, truth, report_path;
    bool micro = false;
    eval->add_option("--pred", pred, "Predicted mask file or directory")->required();
    eval->add_option("--truth", truth, "Ground-truth mask file or directory")->required();
    eval->add_flag("--micro", micro, "Pool pixel counts instead of averaging per image");
    eval->add_option("--report", report_path, "JSON report output path")->required();

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a synthetic block with ground truth");
    std::string kind = "smooth", synth_out, synth_truth;
    scseg::SynthSpec spec;
    int synth_bases = 10;
    std::vector<double> coeffs;
    synth->add_option("--kind", kind, "constant | smooth | palette | smooth-outliers")
        ->check(CLI::IsMember({"constant", "smooth", "palette", "smooth-outliers"}))
        ->capture_default_str();
    synth->add_option("--out", synth_out, "Block image output path")->required();
    synth->add_option("--truth-out", synth_truth, "Ground-truth mask output path");
    synth->add_option("--block-size", spec.block_side, "Block side in pixels")
        ->capture_default_str();
    synth->add_option("--bases", synth_bases, "Number of DCT basis functions")
        ->capture_default_str();
    synth->add_option("--fraction", spec.outlier_fraction, "Outlier / stroke pixel fraction")
        ->capture_default_str();
    synth->add_option("--offset", spec.outlier_offset, "Outlier / stroke intensity delta")
        ->capture_default_str();
    synth->add_option("--value", spec.base_value, "Flat level for constant and palette blocks")
        ->capture_default_str();
    synth->add_option("--coeffs", coeffs, "Explicit smooth-model coefficients")->delimiter(',');
    synth->add_option("--seed", spec.seed, "RNG seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (segment->parsed())
            return run_segment(seg_input, mask_out, fill_out, decisions_out, params, threads);
        if (eval->parsed()) return run_eval(pred, truth, micro, report_path);
        if (synth->parsed())
            return run_synth(kind, synth_out, synth_truth, spec, synth_bases, coeffs);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
