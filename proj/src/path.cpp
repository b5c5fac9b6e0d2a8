#include "maskpath/path.hpp"

#include <nlohmann/json.hpp>

#include <cctype>

namespace maskpath {

std::vector<PathToken> tokenize(const std::string& text) {
    std::vector<PathToken> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        const char ch = text[i];
        if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == ',') {
            ++i;
            continue;
        }
        switch (ch) {
            case 'M': tokens.push_back({TokenKind::CommandM}); ++i; continue;
            case 'L': tokens.push_back({TokenKind::CommandL}); ++i; continue;
            case 'C': tokens.push_back({TokenKind::CommandC}); ++i; continue;
            case 'Z':
            case 'z': tokens.push_back({TokenKind::CommandZ}); ++i; continue;
            case '-': tokens.push_back({TokenKind::NegSign}); ++i; continue;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::int64_t value = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                if (value < (std::int64_t{1} << 40)) {
                    value = value * 10 + (text[i] - '0');
                }
                ++i;
            }
            tokens.push_back({TokenKind::Integer, value});
            continue;
        }
        throw Error(ErrorCode::UnknownCharacter,
                    std::string("'") + ch + "' at position " + std::to_string(i));
    }
    return tokens;
}

namespace {

// Folds NegSign tokens into the following Integer and range-checks.
std::vector<std::int64_t> fold_signs(const std::vector<PathToken>& tokens, std::size_t begin, std::size_t end) {
    std::vector<std::int64_t> values;
    for (std::size_t i = begin; i < end; ++i) {
        if (tokens[i].kind == TokenKind::NegSign) {
            if (i + 1 >= end || tokens[i + 1].kind != TokenKind::Integer) {
                throw Error(ErrorCode::DanglingSign, "sign token not followed by an integer");
            }
            values.push_back(-tokens[i + 1].value);
            ++i;
        } else {
            values.push_back(tokens[i].value);
        }
    }
    for (std::int64_t v : values) {
        if (v < kMinCoordinate || v > kMaxCoordinate) {
            throw Error(ErrorCode::CoordinateOutOfRange,
                        std::to_string(v) + " outside [" + std::to_string(kMinCoordinate) + ", " +
                            std::to_string(kMaxCoordinate) + "]");
        }
    }
    return values;
}

PathPoint make_point(std::int64_t x, std::int64_t y) {
    return PathPoint{static_cast<int>(x), static_cast<int>(y)};
}

struct Builder {
    VectorPath path;
    bool open = false;

    void require_open(const char* what) {
        if (!open) {
            throw Error(ErrorCode::NoLeadingMove, std::string(what) + " with no open subpath");
        }
    }

    void flush(TokenKind command, const std::vector<std::int64_t>& vals) {
        switch (command) {
            case TokenKind::CommandM: {
                if (vals.size() < 2 || vals.size() % 2 != 0) {
                    throw Error(ErrorCode::InvalidArity,
                                "M expects (x,y) pairs, got " + std::to_string(vals.size()) + " integers");
                }
                Subpath sp;
                sp.start = make_point(vals[0], vals[1]);
                for (std::size_t k = 2; k + 1 < vals.size(); k += 2) {
                    sp.segments.push_back(Segment::line_to(make_point(vals[k], vals[k + 1])));
                }
                path.subpaths.push_back(std::move(sp));
                open = true;
                break;
            }
            case TokenKind::CommandL: {
                require_open("L");
                if (vals.size() < 2 || vals.size() % 2 != 0) {
                    throw Error(ErrorCode::InvalidArity,
                                "L expects (x,y) pairs, got " + std::to_string(vals.size()) + " integers");
                }
                for (std::size_t k = 0; k + 1 < vals.size(); k += 2) {
                    path.subpaths.back().segments.push_back(Segment::line_to(make_point(vals[k], vals[k + 1])));
                }
                break;
            }
            case TokenKind::CommandC: {
                require_open("C");
                if (vals.size() < 6 || vals.size() % 6 != 0) {
                    throw Error(ErrorCode::InvalidArity,
                                "C expects triples of pairs, got " + std::to_string(vals.size()) + " integers");
                }
                for (std::size_t k = 0; k + 5 < vals.size(); k += 6) {
                    path.subpaths.back().segments.push_back(
                        Segment::cubic_to(make_point(vals[k], vals[k + 1]), make_point(vals[k + 2], vals[k + 3]),
                                          make_point(vals[k + 4], vals[k + 5])));
                }
                break;
            }
            case TokenKind::CommandZ: {
                require_open("Z");
                if (!vals.empty()) {
                    throw Error(ErrorCode::InvalidArity,
                                "Z takes no coordinates, got " + std::to_string(vals.size()) + " integers");
                }
                path.subpaths.back().closed = true;
                open = false;
                break;
            }
            default:
                break;
        }
    }
};

bool is_command(TokenKind kind) {
    return kind == TokenKind::CommandM || kind == TokenKind::CommandL || kind == TokenKind::CommandC ||
           kind == TokenKind::CommandZ;
}

} // namespace

VectorPath parse(const std::vector<PathToken>& tokens, const ParseOptions& options) {
    if (tokens.empty()) {
        throw Error(ErrorCode::EmptyPath, "no tokens");
    }
    if (options.max_tokens > 0 && static_cast<int>(tokens.size()) > options.max_tokens) {
        throw Error(ErrorCode::TooLong,
                    std::to_string(tokens.size()) + " tokens exceeds limit " + std::to_string(options.max_tokens));
    }
    if (tokens.front().kind != TokenKind::CommandM) {
        throw Error(ErrorCode::NoLeadingMove, "path must begin with M");
    }

    Builder builder;
    std::size_t i = 0;
    while (i < tokens.size()) {
        const TokenKind command = tokens[i].kind;
        std::size_t j = i + 1;
        while (j < tokens.size() && !is_command(tokens[j].kind)) ++j;
        builder.flush(command, fold_signs(tokens, i + 1, j));
        i = j;
    }
    if (options.require_closed && has_unclosed_subpath(builder.path)) {
        throw Error(ErrorCode::UnclosedSubpath, "trailing subpath not closed with Z");
    }
    return builder.path;
}

namespace {

void append_point(std::string& out, PathPoint p) {
    out += ' ';
    out += std::to_string(p.x);
    out += ' ';
    out += std::to_string(p.y);
}

} // namespace

std::string serialize_d(const VectorPath& path) {
    std::string out;
    for (const Subpath& sp : path.subpaths) {
        if (!out.empty()) out += ' ';
        out += 'M';
        append_point(out, sp.start);
        for (const Segment& seg : sp.segments) {
            if (seg.kind == Segment::Kind::LineTo) {
                out += " L";
                append_point(out, seg.end);
            } else {
                out += " C";
                append_point(out, seg.c1);
                append_point(out, seg.c2);
                append_point(out, seg.end);
            }
        }
        if (sp.closed) out += " Z";
    }
    return out;
}

namespace {

int token_count(PathPoint p) {
    return (p.x < 0 ? 2 : 1) + (p.y < 0 ? 2 : 1);
}

} // namespace

int path_len(const VectorPath& path) {
    int n = 0;
    for (const Subpath& sp : path.subpaths) {
        n += 1 + token_count(sp.start);
        for (const Segment& seg : sp.segments) {
            if (seg.kind == Segment::Kind::LineTo) {
                n += 1 + token_count(seg.end);
            } else {
                n += 1 + token_count(seg.c1) + token_count(seg.c2) + token_count(seg.end);
            }
        }
        if (sp.closed) n += 1;
    }
    return n;
}

ParseOutcome try_parse(const std::vector<PathToken>& tokens, const ParseOptions& options) {
    ParseOutcome outcome;
    try {
        outcome.path = parse(tokens, options);
    } catch (const Error& e) {
        outcome.error = e.code();
        outcome.detail = e.detail();
    }
    return outcome;
}

ParseOutcome try_parse_d(const std::string& text, const ParseOptions& options) {
    std::vector<PathToken> tokens;
    try {
        tokens = tokenize(text);
    } catch (const Error& e) {
        return ParseOutcome{std::nullopt, e.code(), e.detail()};
    }
    return try_parse(tokens, options);
}

bool has_unclosed_subpath(const VectorPath& path) {
    for (const Subpath& sp : path.subpaths) {
        if (!sp.closed) return true;
    }
    return false;
}

SequenceLayout sequence_layout_from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw Error(ErrorCode::ConfigInvalid, "layout must be a JSON object");
    }
    SequenceLayout layout;
    layout.mode = j.value("mode", "segment");
    if (j.contains("prompt") && !j["prompt"].is_null()) {
        const auto& p = j["prompt"];
        SequenceLayout::Prompt prompt;
        prompt.x = p.at("x").get<double>();
        prompt.y = p.at("y").get<double>();
        if (p.contains("w") != p.contains("h")) {
            throw Error(ErrorCode::ConfigInvalid, "box prompt needs both w and h");
        }
        if (p.contains("w")) {
            prompt.size = {p["w"].get<double>(), p["h"].get<double>()};
        }
        layout.prompt = prompt;
    }
    layout.expression = j.value("expression", "");
    const auto& box = j.at("box");
    if (!box.is_array() || box.size() != 4) {
        throw Error(ErrorCode::ConfigInvalid, "box must be [cx,cy,w,h]");
    }
    layout.box_cx = box[0].get<double>();
    layout.box_cy = box[1].get<double>();
    layout.box_w = box[2].get<double>();
    layout.box_h = box[3].get<double>();
    layout.path = parse(tokenize(j.at("path").get<std::string>()));
    return layout;
}

std::string sequence_layout_to_json(const SequenceLayout& layout) {
    nlohmann::ordered_json j;
    j["mode"] = layout.mode;
    if (layout.prompt) {
        nlohmann::ordered_json p;
        p["x"] = layout.prompt->x;
        p["y"] = layout.prompt->y;
        if (layout.prompt->size) {
            p["w"] = layout.prompt->size->first;
            p["h"] = layout.prompt->size->second;
        }
        j["prompt"] = p;
    }
    j["expression"] = layout.expression;
    j["box"] = {layout.box_cx, layout.box_cy, layout.box_w, layout.box_h};
    j["path"] = serialize_d(layout.path);
    return j.dump();
}

} // namespace maskpath
