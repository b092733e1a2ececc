#include "geothermo/cli/orbit_csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "geothermo/core/word.hpp"

namespace geothermo::cli {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

double parse_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::runtime_error("orbits.csv: bad number '" + s + "'");
    }
    if (used != s.size()) throw std::runtime_error("orbits.csv: bad number '" + s + "'");
    return v;
}

}  // namespace

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_orbits_csv(std::ostream& out, const core::OrbitTable& table) {
    out << "class,length,primitive";
    for (const auto& id : table.potential_ids()) out << ",integral_" << id;
    out << '\n';
    for (const auto& o : table.orbits()) {
        out << o.label << ',' << format_double(o.length) << ',' << (o.primitive ? "true" : "false");
        for (double v : o.integrals) out << ',' << format_double(v);
        out << '\n';
    }
}

std::vector<int> decode_symbolic_label(std::string_view label) {
    std::vector<int> code;
    if (label.find('.') != std::string_view::npos) {
        for (const auto& part : split(std::string(label), '.')) code.push_back(std::stoi(part));
    } else {
        for (char c : label) {
            if (c < '0' || c > '9') throw std::runtime_error("orbits.csv: bad symbolic label");
            code.push_back(c - '0');
        }
    }
    return code;
}

std::vector<int> decode_schottky_label(std::string_view label) {
    return core::GeneratorWord::parse(label).codes();
}

core::OrbitTable read_orbits_csv(std::istream& in, const LabelDecoder& decode) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("orbits.csv: missing header");
    const auto header = split(line, ',');
    if (header.size() < 3 || header[0] != "class" || header[1] != "length" || header[2] != "primitive")
        throw std::runtime_error("orbits.csv: unexpected header");
    std::vector<std::string> ids;
    for (std::size_t i = 3; i < header.size(); ++i) {
        if (header[i].rfind("integral_", 0) != 0) throw std::runtime_error("orbits.csv: unexpected column");
        ids.push_back(header[i].substr(9));
    }
    std::vector<core::ClosedOrbit> orbits;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != header.size()) throw std::runtime_error("orbits.csv: wrong field count");
        core::ClosedOrbit o;
        o.label = fields[0];
        o.code = decode(o.label);
        o.length = parse_double(fields[1]);
        if (fields[2] != "true" && fields[2] != "false") throw std::runtime_error("orbits.csv: bad primitive flag");
        o.primitive = fields[2] == "true";
        for (std::size_t i = 3; i < fields.size(); ++i) o.integrals.push_back(parse_double(fields[i]));
        orbits.push_back(std::move(o));
    }
    return core::OrbitTable(std::move(orbits), std::move(ids));
}

}  // namespace geothermo::cli
