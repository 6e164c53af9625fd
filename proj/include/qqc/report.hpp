#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qqc {

/// Fixed 12-significant-digit decimal for machine-readable reports, so that
/// identical runs serialize byte-identically.
std::string format_double_12(double v);

/// JSON document builder with canonical output: object keys sort
/// lexicographically and floats use format_double_12.
class Json {
public:
    static Json object();
    static Json array();
    static Json str(std::string v);
    static Json num(double v);
    static Json integer(int64_t v);
    static Json boolean(bool v);

    Json& set(const std::string& key, Json v);
    Json& push(Json v);

    /// Pretty form, two-space indent, trailing newline.
    std::string dump() const;

private:
    enum class Type { Object, Array, String, Double, Int, Bool };
    Type type_ = Type::Object;
    std::map<std::string, Json> fields_;
    std::vector<Json> items_;
    std::string str_;
    double num_ = 0.0;
    int64_t int_ = 0;
    bool bool_ = false;

    void write(std::string& out, int indent) const;
};

/// CSV with a fixed header; cells are pre-rendered strings.
struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string dump() const;
};

} // namespace qqc
