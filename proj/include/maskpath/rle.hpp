#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maskpath/mask.hpp"

namespace maskpath {

enum class ScanOrder {
    RowMajor,
    ColumnMajor, // COCO convention
};

/// Decode run-length counts (alternating background/foreground, starting
/// with background) into a binary mask.
BinaryMask decode_rle(const std::vector<std::int64_t>& counts, int height, int width,
                      ScanOrder order = ScanOrder::ColumnMajor);

/// Encode a mask into run-length counts. The first count is the leading
/// background run and may be zero.
std::vector<std::int64_t> encode_rle(const BinaryMask& mask, ScanOrder order = ScanOrder::ColumnMajor);

/// COCO char-packed counts string: 6-bit groups with a continuation bit,
/// offset by 48, with counts past the second stored as deltas against the
/// count two slots back.
std::string rle_counts_to_string(const std::vector<std::int64_t>& counts);
std::vector<std::int64_t> rle_counts_from_string(const std::string& packed);

/// Parse/emit the JSON object forms:
///   {"size":[H,W],"counts":[...]}      uncompressed, column-major
///   {"size":[H,W],"counts":"<packed>"} compressed, column-major
BinaryMask mask_from_rle_json(const std::string& json_text);
std::string mask_to_rle_json(const BinaryMask& mask, bool compressed = false);

} // namespace maskpath
