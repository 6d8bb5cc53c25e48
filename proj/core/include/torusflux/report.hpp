#ifndef TORUSFLUX_REPORT_HPP
#define TORUSFLUX_REPORT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace torusflux {

// Doubles rendered with 17 significant digits (lossless round trip).
std::string format_sig17(double x);

// FNV-1a 64-bit, rendered as 16 hex digits; used to fingerprint map files.
std::string fnv1a_hex(std::string_view data);

/** Minimal streaming JSON writer.
 *
 * Keys keep insertion order and numbers are formatted with 17 significant
 * digits, so a report built from the same inputs is byte-identical across
 * runs and platforms.  Only what reports need: objects, arrays, strings,
 * bools, null, int64, double.
 */
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(std::string_view name);
    JsonWriter& value(double x);
    JsonWriter& value(std::int64_t x);
    JsonWriter& value(int x) { return value(static_cast<std::int64_t>(x)); }
    JsonWriter& value(long long x) { return value(static_cast<std::int64_t>(x)); }
    JsonWriter& value(bool b);
    JsonWriter& value(std::string_view s);
    JsonWriter& value(const char* s) { return value(std::string_view(s)); }
    JsonWriter& null();

    // convenience: key followed by scalar value
    template <typename T>
    JsonWriter& field(std::string_view name, const T& v) {
        key(name);
        return value(v);
    }
    JsonWriter& field_null(std::string_view name) {
        key(name);
        return null();
    }

    std::string str() const { return out_; }

private:
    void comma();
    void indent();
    std::string out_;
    std::vector<char> stack_;    // '{' or '['
    std::vector<bool> first_;
    bool pending_key_ = false;
};

}  // namespace torusflux

#endif
