// json_writer.hpp — deterministic JSON text with 17-significant-digit floats
//
// nlohmann::json prints the shortest round-trip form of a double; reports use a
// fixed %.17g format instead so that output width does not depend on the value.

#pragma once

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <string>

namespace qadj::cli {

namespace detail {

inline void write_json(const nlohmann::ordered_json& j, int indent, int depth, std::string& out) {
    const auto newline = [&](int level) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * level), ' ');
    };
    switch (j.type()) {
        case nlohmann::ordered_json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += nlohmann::ordered_json(it.key()).dump();
                out += indent < 0 ? ":" : ": ";
                write_json(it.value(), indent, depth + 1, out);
            }
            newline(depth);
            out += '}';
            return;
        }
        case nlohmann::ordered_json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (const auto& item : j) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                write_json(item, indent, depth + 1, out);
            }
            newline(depth);
            out += ']';
            return;
        }
        case nlohmann::ordered_json::value_t::number_float: {
            const double v = j.get<double>();
            if (!std::isfinite(v)) {
                out += "null";
                return;
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
            out += buf;
            return;
        }
        default:
            out += j.dump();
            return;
    }
}

}  // namespace detail

// indent < 0 writes everything on one line.
inline std::string dump_json(const nlohmann::ordered_json& j, int indent = 2) {
    std::string out;
    detail::write_json(j, indent, 0, out);
    return out;
}

}  // namespace qadj::cli
