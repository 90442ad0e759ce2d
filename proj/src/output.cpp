#include "stt/output.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace stt {

namespace {
constexpr const char* kSeriesHeader = "t,rho_l2,rho_linf,u_linf,u_h1,flux,potential_energy";
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit_series(std::ostream& os, const std::vector<SeriesRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("emit_series needs a non-empty history");
    os << kSeriesHeader << "\n";
    for (const SeriesRow& r : rows)
        os << format_double(r.t) << ',' << format_double(r.rho_l2) << ',' << format_double(r.rho_linf) << ','
           << format_double(r.u_linf) << ',' << format_double(r.u_h1) << ',' << format_double(r.flux) << ','
           << format_double(r.potential_energy) << "\n";
}

void emit_picard(std::ostream& os, const PicardTrace& trace) {
    os << "N,delta,ratio\n";
    for (std::size_t n = 0; n < trace.diffs.size(); ++n) {
        os << n << ',' << format_double(trace.diffs[n]) << ',';
        if (n > 0) os << format_double(trace.ratios[n - 1]);
        os << "\n";
    }
}

std::vector<SeriesRow> read_series(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kSeriesHeader) throw std::runtime_error("not a series CSV");
    std::vector<SeriesRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        double v[7];
        const char* p = line.data();
        const char* end = line.data() + line.size();
        for (int c = 0; c < 7; ++c) {
            const auto r = std::from_chars(p, end, v[c]);
            if (r.ec != std::errc()) throw std::runtime_error("bad number in series CSV: " + line);
            p = r.ptr;
            if (c < 6) {
                if (p == end || *p != ',') throw std::runtime_error("bad series row: " + line);
                ++p;
            }
        }
        SeriesRow row;
        row.t = v[0];
        row.rho_l2 = v[1];
        row.rho_linf = v[2];
        row.u_linf = v[3];
        row.u_h1 = v[4];
        row.flux = v[5];
        row.potential_energy = v[6];
        rows.push_back(row);
    }
    return rows;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << text;
}

}  // namespace stt
