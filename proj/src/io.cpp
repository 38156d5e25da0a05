#include <berezin/io.hpp>

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace berezin {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    std::string text(buffer);
    if (text == "-0") text = "0";
    return text;
}

std::string format_complex_compact(Complex value) {
    if (value.imag() == 0.0) return format_double(value.real());
    std::string text = format_double(value.real());
    const double im = value.imag();
    text += im < 0.0 ? "-" : "+";
    text += format_double(std::abs(im));
    text += "i";
    return text;
}

std::string json_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size() + 2);
    for (const char ch : text) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buffer[8];
                    std::snprintf(buffer, sizeof(buffer), "\\u%04x", ch);
                    out += buffer;
                } else {
                    out += ch;
                }
        }
    }
    return out;
}

JsonValue JsonValue::null() { return JsonValue(); }

JsonValue JsonValue::boolean(bool value) {
    JsonValue v;
    v.kind_ = Kind::Bool;
    v.bool_ = value;
    return v;
}

JsonValue JsonValue::number(double value) {
    JsonValue v;
    v.kind_ = Kind::Number;
    v.number_ = value;
    return v;
}

JsonValue JsonValue::string(std::string value) {
    JsonValue v;
    v.kind_ = Kind::String;
    v.string_ = std::move(value);
    return v;
}

JsonValue JsonValue::array() {
    JsonValue v;
    v.kind_ = Kind::Array;
    return v;
}

JsonValue JsonValue::object() {
    JsonValue v;
    v.kind_ = Kind::Object;
    return v;
}

JsonValue JsonValue::complex_pair(Complex value) {
    JsonValue v = array();
    v.push(number(value.real()));
    v.push(number(value.imag()));
    return v;
}

JsonValue& JsonValue::push(JsonValue item) {
    if (kind_ != Kind::Array) throw std::invalid_argument("push requires a JSON array");
    items_.push_back(std::move(item));
    return *this;
}

JsonValue& JsonValue::set(const std::string& key, JsonValue value) {
    if (kind_ != Kind::Object) throw std::invalid_argument("set requires a JSON object");
    fields_.emplace_back(key, std::move(value));
    return *this;
}

std::string JsonValue::dump() const {
    switch (kind_) {
        case Kind::Null: return "null";
        case Kind::Bool: return bool_ ? "true" : "false";
        case Kind::Number: {
            const std::string text = format_double(number_);
            if (text == "inf" || text == "-inf" || text == "nan")
                return "\"" + text + "\"";
            return text;
        }
        case Kind::String: return "\"" + json_escape(string_) + "\"";
        case Kind::Array: {
            std::string out = "[";
            for (size_t i = 0; i < items_.size(); ++i) {
                if (i) out += ",";
                out += items_[i].dump();
            }
            out += "]";
            return out;
        }
        case Kind::Object: {
            std::string out = "{";
            for (size_t i = 0; i < fields_.size(); ++i) {
                if (i) out += ",";
                out += "\"" + json_escape(fields_[i].first) + "\":" + fields_[i].second.dump();
            }
            out += "}";
            return out;
        }
    }
    throw std::invalid_argument("unknown JSON kind");
}

}
