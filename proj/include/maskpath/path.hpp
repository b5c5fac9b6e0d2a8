#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maskpath/errors.hpp"

namespace maskpath {

enum class TokenKind {
    CommandM,
    CommandL,
    CommandC,
    CommandZ,
    NegSign,
    Integer,
};

/// One token of the flat path stream. `value` is meaningful only for
/// Integer tokens; a negative coordinate is the two-token sequence
/// NegSign followed by its magnitude.
struct PathToken {
    TokenKind kind;
    std::int64_t value = 0;

    bool operator==(const PathToken&) const = default;
};

struct PathPoint {
    int x = 0;
    int y = 0;

    bool operator==(const PathPoint&) const = default;
};

struct Segment {
    enum class Kind { LineTo, CubicTo };

    Kind kind = Kind::LineTo;
    PathPoint c1; // CubicTo only
    PathPoint c2; // CubicTo only
    PathPoint end;

    static Segment line_to(PathPoint p) { return Segment{Kind::LineTo, {}, {}, p}; }
    static Segment cubic_to(PathPoint c1, PathPoint c2, PathPoint end) {
        return Segment{Kind::CubicTo, c1, c2, end};
    }

    bool operator==(const Segment&) const = default;
};

struct Subpath {
    PathPoint start;
    std::vector<Segment> segments;
    bool closed = false;

    bool operator==(const Subpath&) const = default;
};

struct VectorPath {
    std::vector<Subpath> subpaths;

    bool operator==(const VectorPath&) const = default;
};

/// Grammar limits. Coordinates live in [kMinCoordinate, kMaxCoordinate];
/// the default token budget is configurable per call.
inline constexpr int kMinCoordinate = -39;
inline constexpr int kMaxCoordinate = 999;
inline constexpr int kDefaultMaxTokens = 1024;

struct ParseOptions {
    int max_tokens = kDefaultMaxTokens;
    bool require_closed = false; // strict mode: reject trailing unclosed subpaths
};

/// Split a d-string into path tokens. Whitespace and commas separate;
/// every maximal digit run becomes a single Integer token.
/// Throws UnknownCharacter for anything else.
std::vector<PathToken> tokenize(const std::string& text);

/// Assemble tokens into a structured path. Integers group into (x,y)
/// pairs; an M with extra pairs treats them as implicit line-tos; a C
/// consumes triples of pairs (control 1, control 2, end); Z closes the
/// current subpath.
VectorPath parse(const std::vector<PathToken>& tokens, const ParseOptions& options = {});

/// Canonical d-string: absolute commands, single spaces, signs attached
/// to magnitudes. parse(tokenize(serialize_d(p))) == p.
std::string serialize_d(const VectorPath& path);

/// Token count of the canonical serialization (negative coordinates
/// count as two tokens).
int path_len(const VectorPath& path);

/// Non-throwing parse for rollout classification.
struct ParseOutcome {
    std::optional<VectorPath> path;
    ErrorCode error = ErrorCode::None;
    std::string detail;

    bool ok() const { return error == ErrorCode::None; }
};

ParseOutcome try_parse(const std::vector<PathToken>& tokens, const ParseOptions& options = {});
ParseOutcome try_parse_d(const std::string& text, const ParseOptions& options = {});

bool has_unclosed_subpath(const VectorPath& path);

/// One serialized segmentation query: task mode, optional spatial prompt,
/// referring expression, answer box, and the vector path.
struct SequenceLayout {
    struct Prompt {
        double x = 0.0;
        double y = 0.0;
        std::optional<std::pair<double, double>> size; // present for box prompts
    };

    std::string mode = "segment";
    std::optional<Prompt> prompt;
    std::string expression;
    double box_cx = 0.0, box_cy = 0.0, box_w = 0.0, box_h = 0.0;
    VectorPath path;
};

SequenceLayout sequence_layout_from_json(const std::string& json_text);
std::string sequence_layout_to_json(const SequenceLayout& layout);

} // namespace maskpath
