#pragma once

#include <stdexcept>
#include <string>

namespace maskpath {

/// Error kinds surfaced by the library. The CLI maps these 1:1 onto the
/// "error" field of its JSON error objects.
enum class ErrorCode {
    None = 0,
    // mask_core
    SizeMismatch,
    ZeroDimension,
    DimensionMismatch,
    // path_grammar
    UnknownCharacter,
    InvalidArity,
    DanglingSign,
    NoLeadingMove,
    TooLong,
    EmptyPath,
    CoordinateOutOfRange,
    UnclosedSubpath, // strict parse mode only
    // rasterizer
    DegenerateGeometry,
    EmptyMask,
    // region_codec
    BinOutOfRange,
    ValueOutOfRange,
    NonPositiveSize,
    LengthMismatch,
    // reward
    EmptyGroup,
    InvalidRollout,
    // refine_harness
    RefinerContractViolation,
    KMismatch,
    // eval_harness
    NonFinite,
    EmptyAccumulator,
    EmptyDataset,
    MaskLoadError,
    // config / io
    ConfigInvalid,
    IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string detail)
        : std::runtime_error(std::string(error_code_name(code)) +
                             (detail.empty() ? "" : ": " + detail)),
          code_(code),
          detail_(std::move(detail)) {}

    ErrorCode code() const { return code_; }
    const std::string& detail() const { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

} // namespace maskpath
