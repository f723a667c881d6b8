#include "vsvm/report.hpp"

#include <cmath>
#include <cstdio>

namespace vsvm {

std::string format_fixed17(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

Json real_to_json(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    return value;
}

namespace {

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

void write(const Json& j, std::string& out, int depth) {
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            if (!first) out += ",\n";
            first = false;
            out += pad;
            out += Json(key).dump();
            out += ": ";
            write(value, out, depth + 1);
        }
        out += "\n" + close_pad + "}";
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        bool flat = true;
        for (const auto& e : j) flat = flat && is_scalar(e);
        if (flat) {
            out += "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ", ";
                write(j[i], out, depth + 1);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out += ",\n";
            out += pad;
            write(j[i], out, depth + 1);
        }
        out += "\n" + close_pad + "]";
        return;
    }
    case Json::value_t::number_float: {
        const double v = j.get<double>();
        if (v == 0.0) out += "0";  // "-0" would re-parse as the integer 0
        else out += std::isfinite(v) ? format_fixed17(v) : real_to_json(v).dump();
        return;
    }
    default: out += j.dump(); return;
    }
}

}  // namespace

std::string dump_report(const Json& doc) {
    std::string out;
    write(doc, out, 0);
    out += '\n';
    return out;
}

Json parse_report(const std::string& text) { return Json::parse(text); }

}  // namespace vsvm
