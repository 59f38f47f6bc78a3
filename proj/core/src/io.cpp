#include "qmelab/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qmelab/errors.hpp"

namespace qmelab {

namespace {

bool parse_double(std::string_view tok, double& out) {
    const char* begin = tok.data();
    const char* end = tok.data() + tok.size();
    const auto res = std::from_chars(begin, end, out);
    return res.ec == std::errc{} && res.ptr == end;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

void dump_json_impl(const nlohmann::json& j, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in + nlohmann::json(key).dump() + ": ";
                dump_json_impl(value, out, indent, depth + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& value : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                dump_json_impl(value, out, indent, depth + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case nlohmann::json::value_t::number_float:
            out += format_real(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

} // namespace

Sample parse_csv_sample(std::istream& in, const std::string& name) {
    std::vector<double> data;
    std::size_t dim = 0;
    std::size_t line_no = 0;
    std::string line;
    bool first_data_row = true;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view trimmed = trim(line);
        if (trimmed.empty() || trimmed.front() == '#') {
            continue;
        }

        std::vector<double> row;
        std::string_view rest = trimmed;
        bool numeric = true;
        while (true) {
            const auto comma = rest.find(',');
            const std::string_view tok = trim(rest.substr(0, comma));
            double v = 0.0;
            if (!parse_double(tok, v)) {
                numeric = false;
                break;
            }
            row.push_back(v);
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }

        if (!numeric) {
            // A non-numeric first row is a header; anywhere else it is an error.
            if (first_data_row && dim == 0) {
                continue;
            }
            throw ValidationError(name + " line " + std::to_string(line_no) +
                                  ": expected comma-separated numbers, got \"" + line + "\"");
        }
        if (dim == 0) {
            dim = row.size();
        } else if (row.size() != dim) {
            throw ValidationError(name + " line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(dim) + " columns, got " +
                                  std::to_string(row.size()));
        }
        data.insert(data.end(), row.begin(), row.end());
        first_data_row = false;
    }
    if (data.empty()) {
        throw ValidationError(name + ": no data rows");
    }
    try {
        return Sample(std::move(data), dim);
    } catch (const ValidationError& e) {
        throw ValidationError(name + ": " + e.what());
    }
}

Sample parse_json_sample(const nlohmann::json& j, const std::string& name) {
    if (!j.is_array() || j.empty()) {
        throw ValidationError(name + ": expected a nonempty JSON array");
    }
    std::vector<double> data;
    std::size_t dim = 0;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& row = j[i];
        if (row.is_number()) {
            if (dim == 0) dim = 1;
            if (dim != 1) {
                throw ValidationError(name + " element " + std::to_string(i) +
                                      ": mixed scalars and arrays");
            }
            data.push_back(row.get<double>());
        } else if (row.is_array()) {
            if (dim == 0) dim = row.size();
            if (row.size() != dim || dim == 0) {
                throw ValidationError(name + " element " + std::to_string(i) +
                                      ": inconsistent point dimension");
            }
            for (const auto& v : row) {
                if (!v.is_number()) {
                    throw ValidationError(name + " element " + std::to_string(i) +
                                          ": non-numeric entry");
                }
                data.push_back(v.get<double>());
            }
        } else {
            throw ValidationError(name + " element " + std::to_string(i) +
                                  ": expected number or array");
        }
    }
    try {
        return Sample(std::move(data), dim);
    } catch (const ValidationError& e) {
        throw ValidationError(name + ": " + e.what());
    }
}

Sample load_sample(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open input file: " + path.string());
    }
    if (path.extension() == ".json") {
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError(path.string() + ": " + e.what());
        }
        return parse_json_sample(j, path.string());
    }
    return parse_csv_sample(in, path.string());
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string dump_json(const nlohmann::json& j, int indent) {
    std::string out;
    dump_json_impl(j, out, indent, 0);
    out += "\n";
    return out;
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x00000100000001B3ULL;
    }
    return h;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot open output file: " + path.string());
    }
    out << content;
}

} // namespace qmelab
