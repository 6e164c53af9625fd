#include "qqc/report.hpp"

#include "qqc/util.hpp"

#include <charconv>
#include <cstdio>

namespace qqc {

std::string format_double_12(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

Json Json::object() {
    Json j;
    j.type_ = Type::Object;
    return j;
}

Json Json::array() {
    Json j;
    j.type_ = Type::Array;
    return j;
}

Json Json::str(std::string v) {
    Json j;
    j.type_ = Type::String;
    j.str_ = std::move(v);
    return j;
}

Json Json::num(double v) {
    Json j;
    j.type_ = Type::Double;
    j.num_ = v;
    return j;
}

Json Json::integer(int64_t v) {
    Json j;
    j.type_ = Type::Int;
    j.int_ = v;
    return j;
}

Json Json::boolean(bool v) {
    Json j;
    j.type_ = Type::Bool;
    j.bool_ = v;
    return j;
}

Json& Json::set(const std::string& key, Json v) {
    if (type_ != Type::Object)
        fail("set() on a non-object JSON value");
    fields_.insert_or_assign(key, std::move(v));
    return *this;
}

Json& Json::push(Json v) {
    if (type_ != Type::Array)
        fail("push() on a non-array JSON value");
    items_.push_back(std::move(v));
    return *this;
}

namespace {

void escape_into(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
        case '"':
            out += "\\\"";
            break;
        case '\\':
            out += "\\\\";
            break;
        case '\n':
            out += "\\n";
            break;
        case '\t':
            out += "\\t";
            break;
        case '\r':
            out += "\\r";
            break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    out += '"';
}

} // namespace

void Json::write(std::string& out, int indent) const {
    auto pad = [&](int n) { out.append(size_t(n) * 2, ' '); };
    switch (type_) {
    case Type::Object: {
        if (fields_.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        size_t i = 0;
        for (const auto& [k, v] : fields_) {
            pad(indent + 1);
            escape_into(out, k);
            out += ": ";
            v.write(out, indent + 1);
            if (++i < fields_.size())
                out += ',';
            out += '\n';
        }
        pad(indent);
        out += '}';
        return;
    }
    case Type::Array: {
        if (items_.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (size_t i = 0; i < items_.size(); ++i) {
            pad(indent + 1);
            items_[i].write(out, indent + 1);
            if (i + 1 < items_.size())
                out += ',';
            out += '\n';
        }
        pad(indent);
        out += ']';
        return;
    }
    case Type::String:
        escape_into(out, str_);
        return;
    case Type::Double:
        out += format_double_12(num_);
        return;
    case Type::Int:
        out += std::to_string(int_);
        return;
    case Type::Bool:
        out += bool_ ? "true" : "false";
        return;
    }
}

std::string Json::dump() const {
    std::string out;
    write(out, 0);
    out += '\n';
    return out;
}

std::string Csv::dump() const {
    std::string out;
    auto emit_row = [&](const std::vector<std::string>& row) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i)
                out += ',';
            out += row[i];
        }
        out += '\n';
    };
    emit_row(header);
    for (const auto& row : rows) {
        if (row.size() != header.size())
            fail("CSV row has ", row.size(), " cells, header has ", header.size());
        emit_row(row);
    }
    return out;
}

} // namespace qqc
