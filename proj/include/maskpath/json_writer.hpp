#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace maskpath {

/// Minimal JSON emitter with fixed key order and a fixed float format
/// (17 significant digits), so identical inputs always serialize to
/// identical bytes. Input parsing stays with nlohmann; this writer only
/// covers tool output.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();

    JsonWriter& key(const std::string& name);
    JsonWriter& value(double v);
    JsonWriter& value(std::int64_t v);
    JsonWriter& value(int v) { return value(static_cast<std::int64_t>(v)); }
    JsonWriter& value(bool v);
    JsonWriter& value(const std::string& v);
    JsonWriter& value(const char* v) { return value(std::string(v)); }
    JsonWriter& value(const std::vector<double>& v);
    JsonWriter& null_value();

    template <typename T>
    JsonWriter& field(const std::string& name, const T& v) {
        key(name);
        return value(v);
    }

    const std::string& str() const { return out_; }

    static std::string format_double(double v);
    static std::string escape(const std::string& raw);

private:
    void separator();

    std::string out_;
    std::vector<bool> needs_comma_;
    bool pending_key_ = false;
};

} // namespace maskpath
