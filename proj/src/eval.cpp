#include "maskpath/eval.hpp"

#include "maskpath/png_io.hpp"
#include "maskpath/rle.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <thread>

namespace maskpath {

Assignment hungarian(const std::vector<std::vector<double>>& values, bool maximize) {
    const int rows = static_cast<int>(values.size());
    const int cols = rows > 0 ? static_cast<int>(values[0].size()) : 0;
    for (const auto& row : values) {
        if (static_cast<int>(row.size()) != cols) {
            throw Error(ErrorCode::DimensionMismatch, "ragged value matrix");
        }
        for (double v : row) {
            if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "matrix entries must be finite");
        }
    }
    Assignment result;
    result.row_to_col.assign(rows, -1);
    if (rows == 0 || cols == 0) return result;

    // Square cost matrix; the pad value is constant so padding never
    // biases which real pairs are chosen, and only the larger side can
    // be matched against padding.
    const int n = std::max(rows, cols);
    std::vector<std::vector<double>> cost(n + 1, std::vector<double>(n + 1, 0.0));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            cost[i + 1][j + 1] = maximize ? -values[i][j] : values[i][j];
        }
    }

    // potentials-based Kuhn-Munkres, 1-indexed
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> match(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, std::numeric_limits<double>::infinity());
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = match[j0];
            double delta = std::numeric_limits<double>::infinity();
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0][j] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    // Only the larger side was padded, so every element of the smaller
    // side lands on a real partner: exactly min(rows, cols) pairs.
    for (int j = 1; j <= n; ++j) {
        const int i = match[j];
        if (i >= 1 && i <= rows && j <= cols) {
            result.row_to_col[i - 1] = j - 1;
        }
    }
    for (int i = 0; i < rows; ++i) {
        if (result.row_to_col[i] >= 0) result.total += values[i][result.row_to_col[i]];
    }
    return result;
}

MatchResult eval_lvis_image(const std::vector<BinaryMask>& preds, const std::vector<BinaryMask>& gts) {
    for (const BinaryMask& p : preds) {
        for (const BinaryMask& g : gts) {
            if (p.height != g.height || p.width != g.width) {
                throw Error(ErrorCode::DimensionMismatch, "pred and gt masks at different resolutions");
            }
        }
    }
    const int n = static_cast<int>(preds.size());
    const int m = static_cast<int>(gts.size());
    MatchResult result;
    if (n > 0 && m > 0) {
        std::vector<std::vector<double>> iou_matrix(n, std::vector<double>(m, 0.0));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < m; ++j) {
                iou_matrix[i][j] = iou(preds[i], gts[j]);
            }
        }
        const Assignment assignment = hungarian(iou_matrix, /*maximize=*/true);
        std::vector<char> gt_used(m, 0);
        for (int i = 0; i < n; ++i) {
            const int j = assignment.row_to_col[i];
            if (j >= 0) {
                result.pairs.push_back({i, j, iou_matrix[i][j]});
                gt_used[j] = 1;
            } else {
                result.unmatched_pred.push_back(i);
            }
        }
        for (int j = 0; j < m; ++j) {
            if (!gt_used[j]) result.unmatched_gt.push_back(j);
        }
    } else {
        for (int i = 0; i < n; ++i) result.unmatched_pred.push_back(i);
        for (int j = 0; j < m; ++j) result.unmatched_gt.push_back(j);
    }
    for (const MatchedPair& pair : result.pairs) result.scores.push_back(pair.iou);
    for (std::size_t k = 0; k < result.unmatched_pred.size() + result.unmatched_gt.size(); ++k) {
        result.scores.push_back(0.0);
    }
    return result;
}

namespace {

MaskRef parse_mask_ref(const nlohmann::json& j) {
    MaskRef ref;
    if (j.is_string()) {
        ref.source = j.get<std::string>();
        return ref;
    }
    if (j.is_object() && j.contains("size") && j.contains("counts")) {
        ref.rle_height = j["size"][0].get<int>();
        ref.rle_width = j["size"][1].get<int>();
        if (j["counts"].is_string()) {
            ref.rle_packed = j["counts"].get<std::string>();
            ref.source = std::vector<std::int64_t>{}; // marker; decoded lazily
        } else {
            ref.source = j["counts"].get<std::vector<std::int64_t>>();
        }
        return ref;
    }
    throw Error(ErrorCode::ConfigInvalid, "mask reference must be a path or an RLE object");
}

} // namespace

EvalSample parse_manifest_line(const std::string& line) {
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw Error(ErrorCode::ConfigInvalid, "manifest line is not a JSON object");
    }
    EvalSample sample;
    if (j.contains("image_id")) {
        sample.image_id = j["image_id"].is_string() ? j["image_id"].get<std::string>()
                                                    : std::to_string(j["image_id"].get<std::int64_t>());
    }
    if (!j.contains("size") || !j["size"].is_array() || j["size"].size() != 2) {
        throw Error(ErrorCode::ConfigInvalid, "manifest line needs \"size\":[H,W]");
    }
    sample.height = j["size"][0].get<int>();
    sample.width = j["size"][1].get<int>();
    sample.expression = j.value("expr", "");
    sample.category = j.value("category", "");
    if (j.contains("gt") && !j["gt"].is_null()) sample.gt = parse_mask_ref(j["gt"]);
    if (j.contains("pred") && !j["pred"].is_null()) sample.pred = parse_mask_ref(j["pred"]);
    return sample;
}

std::vector<EvalSample> load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open manifest " + path);
    }
    std::vector<EvalSample> samples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            samples.push_back(parse_manifest_line(line));
        } catch (const Error& e) {
            throw Error(ErrorCode::ConfigInvalid, "line " + std::to_string(line_no) + ": " + e.detail());
        }
    }
    return samples;
}

BinaryMask load_mask_ref(const MaskRef& ref, const std::string& base_dir, const std::string& sample_id) {
    try {
        if (std::holds_alternative<std::string>(ref.source)) {
            std::string path = std::get<std::string>(ref.source);
            if (!base_dir.empty() && !path.empty() && path.front() != '/') {
                path = base_dir + "/" + path;
            }
            if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".png") == 0) {
                return mask_from_png(path);
            }
            std::ifstream in(path);
            if (!in) throw Error(ErrorCode::MaskLoadError, "cannot open " + path);
            std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            return mask_from_rle_json(text);
        }
        if (!ref.rle_packed.empty()) {
            return decode_rle(rle_counts_from_string(ref.rle_packed), ref.rle_height, ref.rle_width);
        }
        if (std::holds_alternative<std::vector<std::int64_t>>(ref.source)) {
            return decode_rle(std::get<std::vector<std::int64_t>>(ref.source), ref.rle_height, ref.rle_width);
        }
        throw Error(ErrorCode::MaskLoadError, "empty mask reference");
    } catch (const Error& e) {
        if (e.code() == ErrorCode::MaskLoadError) throw;
        throw Error(ErrorCode::MaskLoadError, "sample " + sample_id + ": " + e.detail());
    }
}

namespace {

// Shard [0, n) across workers, run `body(shard, index)`, merge shards in
// order afterwards. Keeps all floating accumulation in a fixed order so
// thread count never changes results.
template <typename Body>
void parallel_shards(std::size_t n, int threads, Body body) {
    const int worker_count = std::max(1, threads);
    if (worker_count == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(0, i);
        return;
    }
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(worker_count);
    for (int w = 0; w < worker_count; ++w) {
        workers.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += worker_count) body(w, i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : workers) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

} // namespace

RefcocoResult eval_refcoco(const std::vector<EvalSample>& samples, const std::string& base_dir, int threads) {
    const int worker_count = std::max(1, threads);
    std::vector<CIoUAccumulator> mask_acc(worker_count);
    std::vector<CIoUAccumulator> band_acc(worker_count);

    parallel_shards(samples.size(), worker_count, [&](int shard, std::size_t i) {
        const EvalSample& sample = samples[i];
        if (!sample.gt || !sample.pred) {
            throw Error(ErrorCode::MaskLoadError, "sample " + sample.image_id + ": needs both gt and pred");
        }
        const BinaryMask gt = load_mask_ref(*sample.gt, base_dir, sample.image_id);
        const BinaryMask pred = load_mask_ref(*sample.pred, base_dir, sample.image_id);
        if (gt.height != sample.height || gt.width != sample.width || pred.height != sample.height ||
            pred.width != sample.width) {
            throw Error(ErrorCode::DimensionMismatch, "sample " + sample.image_id + ": mask size != image size");
        }
        mask_acc[shard].update(pred, gt);
        const double eps = 0.05 * std::sqrt(static_cast<double>(sample.height) * sample.height +
                                            static_cast<double>(sample.width) * sample.width);
        band_acc[shard].update(boundary_band(pred, eps), boundary_band(gt, eps));
    });

    CIoUAccumulator mask_total, band_total;
    for (int w = 0; w < worker_count; ++w) {
        mask_total.merge(mask_acc[w]);
        band_total.merge(band_acc[w]);
    }
    RefcocoResult result;
    result.n = mask_total.samples;
    result.ciou = mask_total.final();
    result.biou05 = band_total.final();
    return result;
}

LvisResult eval_lvis(const std::vector<EvalSample>& samples, const std::string& base_dir,
                     LvisAggregation aggregation, int threads) {
    // group sample lines by image, preserving first-seen image order
    std::vector<std::string> image_order;
    std::map<std::string, std::vector<std::size_t>> by_image;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        auto [it, inserted] = by_image.try_emplace(samples[i].image_id);
        if (inserted) image_order.push_back(samples[i].image_id);
        it->second.push_back(i);
    }

    struct ImageScore {
        std::vector<double> scores;
        std::vector<std::string> categories;
    };
    std::vector<ImageScore> per_image(image_order.size());

    parallel_shards(image_order.size(), std::max(1, threads), [&](int, std::size_t idx) {
        const auto& line_ids = by_image.at(image_order[idx]);
        std::vector<BinaryMask> preds, gts;
        std::vector<std::string> gt_categories;
        for (std::size_t i : line_ids) {
            const EvalSample& sample = samples[i];
            if (sample.pred) {
                BinaryMask m = load_mask_ref(*sample.pred, base_dir, sample.image_id);
                if (m.height != sample.height || m.width != sample.width) {
                    throw Error(ErrorCode::DimensionMismatch,
                                "sample " + sample.image_id + ": mask size != image size");
                }
                preds.push_back(std::move(m));
            }
            if (sample.gt) {
                BinaryMask m = load_mask_ref(*sample.gt, base_dir, sample.image_id);
                if (m.height != sample.height || m.width != sample.width) {
                    throw Error(ErrorCode::DimensionMismatch,
                                "sample " + sample.image_id + ": mask size != image size");
                }
                gts.push_back(std::move(m));
                gt_categories.push_back(sample.category);
            }
        }
        const MatchResult match = eval_lvis_image(preds, gts);
        per_image[idx].scores = match.scores;
        // category attribution follows the gt side; over-predictions keep
        // an empty category
        per_image[idx].categories.assign(match.scores.size(), "");
        for (std::size_t p = 0; p < match.pairs.size(); ++p) {
            per_image[idx].categories[p] = gt_categories[match.pairs[p].gt];
        }
        std::size_t cursor = match.pairs.size() + match.unmatched_pred.size();
        for (int j : match.unmatched_gt) {
            per_image[idx].categories[cursor++] = gt_categories[j];
        }
    });

    LvisResult result;
    result.images = static_cast<std::int64_t>(image_order.size());
    for (const ImageScore& img : per_image) result.mask_slots += static_cast<std::int64_t>(img.scores.size());
    if (result.mask_slots == 0) {
        throw Error(ErrorCode::EmptyDataset, "no masks to score");
    }

    switch (aggregation) {
        case LvisAggregation::GlobalMean: {
            double total = 0.0;
            for (const ImageScore& img : per_image) {
                for (double s : img.scores) total += s;
            }
            result.miou = total / static_cast<double>(result.mask_slots);
            break;
        }
        case LvisAggregation::PerImageMean: {
            double total = 0.0;
            std::int64_t counted = 0;
            for (const ImageScore& img : per_image) {
                if (img.scores.empty()) continue;
                double s = 0.0;
                for (double v : img.scores) s += v;
                total += s / static_cast<double>(img.scores.size());
                ++counted;
            }
            result.miou = total / static_cast<double>(counted);
            break;
        }
        case LvisAggregation::PerCategoryMean: {
            std::map<std::string, std::pair<double, std::int64_t>> by_category;
            for (const ImageScore& img : per_image) {
                for (std::size_t k = 0; k < img.scores.size(); ++k) {
                    auto& slot = by_category[img.categories[k]];
                    slot.first += img.scores[k];
                    slot.second += 1;
                }
            }
            double total = 0.0;
            for (const auto& [cat, slot] : by_category) {
                total += slot.first / static_cast<double>(slot.second);
            }
            result.miou = total / static_cast<double>(by_category.size());
            break;
        }
    }
    return result;
}

const char* filter_stage_name(FilterStage stage) {
    switch (stage) {
        case FilterStage::MultiBox: return "multi_box";
        case FilterStage::BoxIoU90: return "box_iou_90";
        case FilterStage::MaskBoxIoU92: return "mask_box_iou_92";
    }
    return "?";
}

std::vector<FilterVerdict> pipeline_filter(const std::vector<NormalizedBox>& pred_boxes,
                                           const NormalizedBox& annotation_box,
                                           const std::optional<NormalizedBox>& mask_box) {
    std::vector<FilterVerdict> verdicts;
    const bool single = pred_boxes.size() == 1;
    verdicts.push_back({FilterStage::MultiBox, single, static_cast<double>(pred_boxes.size())});
    if (!single) return verdicts;

    const double ann_iou = box_iou(pred_boxes[0], annotation_box);
    verdicts.push_back({FilterStage::BoxIoU90, ann_iou >= kBoxIoUThreshold, ann_iou});
    if (mask_box) {
        const double mask_iou = box_iou(*mask_box, pred_boxes[0]);
        verdicts.push_back({FilterStage::MaskBoxIoU92, mask_iou >= kMaskBoxIoUThreshold, mask_iou});
    }
    return verdicts;
}

} // namespace maskpath
