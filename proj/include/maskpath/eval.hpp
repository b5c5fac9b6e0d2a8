#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "maskpath/mask.hpp"
#include "maskpath/metrics.hpp"

namespace maskpath {

/// Exact optimal assignment of min(N,M) pairs. row_to_col[i] is the
/// column paired with row i, or -1 when the row stays unmatched (only
/// possible for the larger side). `total` is the summed value of the
/// chosen pairs.
struct Assignment {
    std::vector<int> row_to_col;
    double total = 0.0;
};

/// O(n^3) Kuhn-Munkres on the (optionally negated) value matrix, padded
/// square with constant rows/columns so every element of the smaller
/// side is forced into a real pair.
Assignment hungarian(const std::vector<std::vector<double>>& values, bool maximize);

struct MatchedPair {
    int pred = 0;
    int gt = 0;
    double iou = 0.0;
};

struct MatchResult {
    std::vector<MatchedPair> pairs;
    std::vector<int> unmatched_pred;
    std::vector<int> unmatched_gt;
    /// One score per slot: matched pairs contribute their IoU, every
    /// unmatched mask on either side contributes 0. Size max(N,M).
    std::vector<double> scores;
};

/// Hungarian-matched per-image instance scoring.
MatchResult eval_lvis_image(const std::vector<BinaryMask>& preds, const std::vector<BinaryMask>& gts);

enum class LvisAggregation {
    GlobalMean,   // mean over every per-mask score in the dataset
    PerImageMean, // mean over per-image means
    PerCategoryMean,
};

/// A mask reference inside a manifest: an RLE JSON object or a PNG path.
struct MaskRef {
    std::variant<std::monostate, std::string, std::vector<std::int64_t>> source;
    int rle_height = 0;
    int rle_width = 0;
    std::string rle_packed; // compressed counts, when the RLE came packed

    bool present() const { return !std::holds_alternative<std::monostate>(source) || !rle_packed.empty(); }
};

struct EvalSample {
    std::string image_id;
    int height = 0;
    int width = 0;
    std::string expression; // RefCOCO mode
    std::string category;   // LVIS mode
    std::optional<MaskRef> gt;
    std::optional<MaskRef> pred;
};

/// Parse one JSONL manifest line. Throws ConfigInvalid on schema errors.
EvalSample parse_manifest_line(const std::string& line);
std::vector<EvalSample> load_manifest(const std::string& path);

BinaryMask load_mask_ref(const MaskRef& ref, const std::string& base_dir, const std::string& sample_id);

struct RefcocoResult {
    double ciou = 0.0;
    double biou05 = 0.0;
    std::int64_t n = 0;
};

/// Pooled cIoU plus pooled boundary IoU at eps = 0.05 * image diagonal.
/// Samples are independent; `threads` shards them with a deterministic
/// merge, so results are identical at any thread count.
RefcocoResult eval_refcoco(const std::vector<EvalSample>& samples, const std::string& base_dir, int threads = 1);

struct LvisResult {
    double miou = 0.0;
    std::int64_t mask_slots = 0;
    std::int64_t images = 0;
};

LvisResult eval_lvis(const std::vector<EvalSample>& samples, const std::string& base_dir,
                     LvisAggregation aggregation = LvisAggregation::GlobalMean, int threads = 1);

enum class FilterStage {
    MultiBox,
    BoxIoU90,
    MaskBoxIoU92,
};

const char* filter_stage_name(FilterStage stage);

struct FilterVerdict {
    FilterStage stage;
    bool passed = false;
    double measured = 0.0;
};

inline constexpr double kBoxIoUThreshold = 0.90;
inline constexpr double kMaskBoxIoUThreshold = 0.92;

/// Data-pipeline consistency filters. MultiBox fails unless exactly one
/// box was predicted; the IoU stages fail strictly below their
/// thresholds (a measurement exactly at the threshold passes). The IoU
/// stages are only emitted when a single predicted box exists.
std::vector<FilterVerdict> pipeline_filter(const std::vector<NormalizedBox>& pred_boxes,
                                           const NormalizedBox& annotation_box,
                                           const std::optional<NormalizedBox>& mask_box);

} // namespace maskpath
