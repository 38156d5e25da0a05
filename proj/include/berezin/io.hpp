#ifndef BEREZIN_IO_HPP
#define BEREZIN_IO_HPP

#include <berezin/types.hpp>

#include <string>
#include <utility>
#include <vector>

namespace berezin {

/// 12-significant-digit fixed formatting; the same value always prints the
/// same bytes and re-parsing the text reproduces the printed value.
std::string format_double(double value);

/// CSV-safe compact complex form: "re" when purely real, else "re+imi".
std::string format_complex_compact(Complex value);

/// Insertion-ordered JSON document builder with deterministic output:
/// compact separators, keys in insertion order, numbers via format_double.
/// Non-finite numbers are emitted as the strings "inf"/"-inf"/"nan".
class JsonValue {
public:
    static JsonValue null();
    static JsonValue boolean(bool value);
    static JsonValue number(double value);
    static JsonValue string(std::string value);
    static JsonValue array();
    static JsonValue object();
    static JsonValue complex_pair(Complex value);  // [re, im]

    JsonValue& push(JsonValue item);                          // arrays only
    JsonValue& set(const std::string& key, JsonValue value);  // objects only

    std::string dump() const;

private:
    enum class Kind { Null, Bool, Number, String, Array, Object };
    JsonValue() = default;

    Kind kind_ = Kind::Null;
    bool bool_ = false;
    double number_ = 0.0;
    std::string string_;
    std::vector<JsonValue> items_;
    std::vector<std::pair<std::string, JsonValue>> fields_;
};

std::string json_escape(const std::string& text);

}

#endif
