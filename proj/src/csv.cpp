#include "optorf/csv.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace optorf {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

struct Record {
    std::vector<double> values;
    std::size_t line = 0;
};

struct Table {
    std::vector<std::string> columns;  // lower-cased header names
    std::vector<Record> records;
};

Table parse_table(std::istream& is) {
    Table table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            if (table.columns.empty()) {
                std::string names = trim(t.substr(1));
                std::stringstream ss(names);
                std::string name;
                while (std::getline(ss, name, ',')) {
                    std::string n = trim(name);
                    for (char& c : n) c = static_cast<char>(std::tolower(c));
                    if (!n.empty()) table.columns.push_back(n);
                }
            }
            continue;
        }
        Record rec;
        rec.line = lineno;
        std::stringstream ss(t);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            const std::string c = trim(cell);
            if (c.empty()) throw CsvError("empty field", lineno);
            char* end = nullptr;
            const double v = std::strtod(c.c_str(), &end);
            if (end == c.c_str() || *end != '\0')
                throw CsvError("cannot parse number '" + c + "'", lineno);
            rec.values.push_back(v);
        }
        if (!table.records.empty() && rec.values.size() != table.records.front().values.size())
            throw CsvError("inconsistent column count", lineno);
        table.records.push_back(std::move(rec));
    }
    return table;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open file: " + path);
    return is;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open file for writing: " + path);
    return os;
}

}  // namespace

void write_s11_map(std::ostream& os, const S11Map& map, bool magnitude_only) {
    os << (magnitude_only ? "# field_T, freq_Hz, abs_s11\n"
                          : "# field_T, freq_Hz, re_s11, im_s11\n");
    for (std::size_t fi = 0; fi < map.fields_tesla.size(); ++fi) {
        for (std::size_t qi = 0; qi < map.frequencies_hz.size(); ++qi) {
            const cplx v = map.at(fi, qi);
            os << format_number(map.fields_tesla[fi]) << ", "
               << format_number(map.frequencies_hz[qi]) << ", ";
            if (magnitude_only)
                os << format_number(std::abs(v));
            else
                os << format_number(v.real()) << ", " << format_number(v.imag());
            os << "\n";
        }
    }
}

void write_s11_map_file(const std::string& path, const S11Map& map, bool magnitude_only) {
    auto os = open_output(path);
    write_s11_map(os, map, magnitude_only);
}

S11Map read_s11_map(std::istream& is) {
    const Table table = parse_table(is);
    if (table.records.empty()) throw CsvError("no data records", 0);
    const std::size_t ncols = table.records.front().values.size();
    if (ncols != 3 && ncols != 4)
        throw CsvError("expected 3 or 4 columns for an S11 map",
                       table.records.front().line);

    S11Map map;
    map.magnitude_only = (ncols == 3);
    // collect the axes in order of first appearance; the grid must be complete
    std::map<double, std::size_t> field_idx, freq_idx;
    for (const Record& rec : table.records) {
        field_idx.emplace(rec.values[0], 0);
        freq_idx.emplace(rec.values[1], 0);
    }
    if (field_idx.size() * freq_idx.size() != table.records.size())
        throw CsvError("records do not form a complete field x frequency grid",
                       table.records.back().line);
    for (auto& [value, idx] : field_idx) {
        idx = map.fields_tesla.size();
        map.fields_tesla.push_back(value);
    }
    for (auto& [value, idx] : freq_idx) {
        idx = map.frequencies_hz.size();
        map.frequencies_hz.push_back(value);
    }
    map.values.assign(table.records.size(), cplx(0.0, 0.0));
    for (const Record& rec : table.records) {
        const std::size_t idx =
            map.index(field_idx.at(rec.values[0]), freq_idx.at(rec.values[1]));
        map.values[idx] = map.magnitude_only ? cplx(rec.values[2], 0.0)
                                             : cplx(rec.values[2], rec.values[3]);
    }
    return map;
}

S11Map read_s11_map_file(const std::string& path) {
    auto is = open_input(path);
    return read_s11_map(is);
}

void write_spectrum(std::ostream& os, const TransmissionSpectrum& spectrum) {
    os << "# detuning_Hz, transmission\n";
    for (std::size_t i = 0; i < spectrum.detunings_hz.size(); ++i)
        os << format_number(spectrum.detunings_hz[i]) << ", "
           << format_number(spectrum.transmission[i]) << "\n";
}

void write_spectrum_file(const std::string& path, const TransmissionSpectrum& spectrum) {
    auto os = open_output(path);
    write_spectrum(os, spectrum);
}

TransmissionSpectrum read_spectrum(std::istream& is, double center_wavelength_nm) {
    const Table table = parse_table(is);
    if (table.records.empty()) throw CsvError("no data records", 0);
    if (table.records.front().values.size() != 2)
        throw CsvError("expected 2 columns for a spectrum", table.records.front().line);

    const bool wavelength = !table.columns.empty() &&
                            table.columns.front().find("wavelength") != std::string::npos;
    TransmissionSpectrum spectrum;
    const double f_center = constants::c_light / (center_wavelength_nm * 1e-9);
    for (const Record& rec : table.records) {
        double detuning = rec.values[0];
        if (wavelength)
            detuning = constants::c_light / (rec.values[0] * 1e-9) - f_center;
        if (!(rec.values[1] > 0.0) || rec.values[1] > 1.0 + 1e-9)
            throw CsvError("transmission outside (0, 1]", rec.line);
        spectrum.detunings_hz.push_back(detuning);
        spectrum.transmission.push_back(rec.values[1]);
    }
    return spectrum;
}

TransmissionSpectrum read_spectrum_file(const std::string& path, double center_wavelength_nm) {
    auto is = open_input(path);
    return read_spectrum(is, center_wavelength_nm);
}

void write_sweep(std::ostream& os, const std::vector<std::array<double, 3>>& rows,
                 const std::string& header) {
    os << header << "\n";
    for (const auto& row : rows)
        os << format_number(row[0]) << ", " << format_number(row[1]) << ", "
           << format_number(row[2]) << "\n";
}

std::vector<std::pair<double, double>> read_sweep(std::istream& is) {
    const Table table = parse_table(is);
    if (table.records.empty()) throw CsvError("no data records", 0);
    if (table.records.front().values.size() < 2)
        throw CsvError("expected at least 2 columns for a sweep", table.records.front().line);
    std::vector<std::pair<double, double>> rows;
    for (const Record& rec : table.records)
        rows.emplace_back(rec.values[0], rec.values[1]);
    return rows;
}

std::vector<std::pair<double, double>> read_sweep_file(const std::string& path) {
    auto is = open_input(path);
    return read_sweep(is);
}

}  // namespace optorf
