#include "maskpath/rle.hpp"

#include <nlohmann/json.hpp>

#include <numeric>

namespace maskpath {

BinaryMask decode_rle(const std::vector<std::int64_t>& counts, int height, int width, ScanOrder order) {
    const std::int64_t total = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
    const std::int64_t expected = static_cast<std::int64_t>(height) * width;
    if (total != expected) {
        throw Error(ErrorCode::SizeMismatch,
                    "run-length counts sum to " + std::to_string(total) + ", expected " + std::to_string(expected));
    }
    for (std::int64_t c : counts) {
        if (c < 0) throw Error(ErrorCode::SizeMismatch, "negative run length");
    }
    BinaryMask mask(height, width);
    std::int64_t pos = 0;
    std::uint8_t value = 0;
    for (std::int64_t count : counts) {
        for (std::int64_t k = 0; k < count; ++k, ++pos) {
            if (value) {
                if (order == ScanOrder::ColumnMajor) {
                    mask.at(static_cast<int>(pos % height), static_cast<int>(pos / height)) = 1;
                } else {
                    mask.bits[static_cast<std::size_t>(pos)] = 1;
                }
            }
        }
        value = !value;
    }
    return mask;
}

std::vector<std::int64_t> encode_rle(const BinaryMask& mask, ScanOrder order) {
    const std::int64_t n = static_cast<std::int64_t>(mask.height) * mask.width;
    std::vector<std::int64_t> counts;
    std::uint8_t current = 0;
    std::int64_t run = 0;
    for (std::int64_t pos = 0; pos < n; ++pos) {
        std::uint8_t v;
        if (order == ScanOrder::ColumnMajor) {
            v = mask.at(static_cast<int>(pos % mask.height), static_cast<int>(pos / mask.height));
        } else {
            v = mask.bits[static_cast<std::size_t>(pos)];
        }
        if (v != current) {
            counts.push_back(run);
            run = 0;
            current = v;
        }
        ++run;
    }
    counts.push_back(run);
    return counts;
}

std::string rle_counts_to_string(const std::vector<std::int64_t>& counts) {
    std::string out;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        std::int64_t x = counts[i];
        if (i > 2) x -= counts[i - 2];
        bool more = true;
        while (more) {
            std::int64_t c = x & 0x1f;
            x >>= 5;
            more = (c & 0x10) ? x != -1 : x != 0;
            if (more) c |= 0x20;
            out.push_back(static_cast<char>(c + 48));
        }
    }
    return out;
}

std::vector<std::int64_t> rle_counts_from_string(const std::string& packed) {
    std::vector<std::int64_t> counts;
    std::size_t m = 0;
    while (m < packed.size()) {
        std::int64_t x = 0;
        int k = 0;
        std::int64_t c = 0;
        bool more = true;
        while (more) {
            if (m >= packed.size()) throw Error(ErrorCode::SizeMismatch, "truncated packed counts string");
            c = packed[m] - 48;
            if (c < 0 || c > 63) throw Error(ErrorCode::SizeMismatch, "invalid packed counts character");
            x |= (c & 0x1f) << (5 * k);
            more = (c & 0x20) != 0;
            ++m;
            ++k;
        }
        if (c & 0x10) x |= ~std::int64_t{0} << (5 * k); // sign-extend
        if (counts.size() > 2) x += counts[counts.size() - 2];
        counts.push_back(x);
    }
    return counts;
}

BinaryMask mask_from_rle_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("size") || !j.contains("counts")) {
        throw Error(ErrorCode::MaskLoadError, "expected {\"size\":[H,W],\"counts\":...}");
    }
    if (!j["size"].is_array() || j["size"].size() != 2) {
        throw Error(ErrorCode::MaskLoadError, "size must be [H,W]");
    }
    const int h = j["size"][0].get<int>();
    const int w = j["size"][1].get<int>();
    std::vector<std::int64_t> counts;
    if (j["counts"].is_string()) {
        counts = rle_counts_from_string(j["counts"].get<std::string>());
    } else if (j["counts"].is_array()) {
        counts = j["counts"].get<std::vector<std::int64_t>>();
    } else {
        throw Error(ErrorCode::MaskLoadError, "counts must be an array or packed string");
    }
    return decode_rle(counts, h, w, ScanOrder::ColumnMajor);
}

std::string mask_to_rle_json(const BinaryMask& mask, bool compressed) {
    const std::vector<std::int64_t> counts = encode_rle(mask, ScanOrder::ColumnMajor);
    nlohmann::json j;
    j["size"] = {mask.height, mask.width};
    if (compressed) {
        j["counts"] = rle_counts_to_string(counts);
    } else {
        j["counts"] = counts;
    }
    return j.dump();
}

} // namespace maskpath
