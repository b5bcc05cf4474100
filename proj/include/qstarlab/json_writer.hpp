#pragma once

#include <cstdint>
#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace qstar {

/// Insertion-ordered JSON value with a deterministic serializer.
/// Doubles are written with 12 significant digits, which keeps report
/// bytes identical across replays while staying above the oracle
/// tolerances.
class Json {
public:
    Json() : v_(nullptr) {}
    Json(std::nullptr_t) : v_(nullptr) {}
    Json(bool b) : v_(b) {}
    Json(int i) : v_(static_cast<std::int64_t>(i)) {}
    Json(std::int64_t i) : v_(i) {}
    Json(std::uint64_t i) : v_(static_cast<std::int64_t>(i)) {}
    Json(double d) : v_(d) {}
    Json(const char* s) : v_(std::string(s)) {}
    Json(std::string s) : v_(std::move(s)) {}

    static Json array() {
        Json j;
        j.v_ = Array{};
        return j;
    }

    static Json object() {
        Json j;
        j.v_ = Object{};
        return j;
    }

    Json& push_back(Json item) {
        std::get<Array>(v_).push_back(std::move(item));
        return *this;
    }

    Json& set(const std::string& key, Json value) {
        auto& obj = std::get<Object>(v_);
        obj.emplace_back(key, std::move(value));
        return *this;
    }

    std::string dump(int indent = 0) const {
        std::string out;
        write(out, indent, 0);
        if (indent > 0) out.push_back('\n');
        return out;
    }

private:
    struct Array;
    struct Object;
    using Value = std::variant<std::nullptr_t, bool, std::int64_t, double, std::string,
                               Array, Object>;

    struct Array : std::vector<Json> {};
    struct Object : std::vector<std::pair<std::string, Json>> {};

    static void write_escaped(std::string& out, const std::string& s) {
        out.push_back('"');
        for (char c : s) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                case '\r': out += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        out += buf;
                    } else {
                        out.push_back(c);
                    }
            }
        }
        out.push_back('"');
    }

    static void write_double(std::string& out, double d) {
        if (d == 0.0) d = 0.0; // normalize -0
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", d);
        out += buf;
        // keep the token a valid JSON number
        std::string_view sv(buf);
        if (sv == "inf") { out.resize(out.size() - 3); out += "1e999"; }
        if (sv == "-inf") { out.resize(out.size() - 4); out += "-1e999"; }
        if (sv == "nan" || sv == "-nan") {
            out.resize(out.size() - sv.size());
            out += "null";
        }
    }

    void write(std::string& out, int indent, int depth) const {
        const std::string pad = indent > 0 ? std::string(size_t(indent) * (depth + 1), ' ') : "";
        const std::string pad_close = indent > 0 ? std::string(size_t(indent) * depth, ' ') : "";
        const char* nl = indent > 0 ? "\n" : "";
        if (std::holds_alternative<std::nullptr_t>(v_)) {
            out += "null";
        } else if (std::holds_alternative<bool>(v_)) {
            out += std::get<bool>(v_) ? "true" : "false";
        } else if (std::holds_alternative<std::int64_t>(v_)) {
            out += std::to_string(std::get<std::int64_t>(v_));
        } else if (std::holds_alternative<double>(v_)) {
            write_double(out, std::get<double>(v_));
        } else if (std::holds_alternative<std::string>(v_)) {
            write_escaped(out, std::get<std::string>(v_));
        } else if (std::holds_alternative<Array>(v_)) {
            const auto& arr = std::get<Array>(v_);
            if (arr.empty()) { out += "[]"; return; }
            out += "[";
            out += nl;
            for (size_t i = 0; i < arr.size(); ++i) {
                out += pad;
                arr[i].write(out, indent, depth + 1);
                if (i + 1 < arr.size()) out += ",";
                out += nl;
            }
            out += pad_close;
            out += "]";
        } else {
            const auto& obj = std::get<Object>(v_);
            if (obj.empty()) { out += "{}"; return; }
            out += "{";
            out += nl;
            for (size_t i = 0; i < obj.size(); ++i) {
                out += pad;
                write_escaped(out, obj[i].first);
                out += indent > 0 ? ": " : ":";
                obj[i].second.write(out, indent, depth + 1);
                if (i + 1 < obj.size()) out += ",";
                out += nl;
            }
            out += pad_close;
            out += "}";
        }
    }

    Value v_;
};

} // namespace qstar
