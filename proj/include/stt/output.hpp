#pragma once

// CSV emission with 17 significant digits (round-trips every double).

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "stt/coupling.hpp"

namespace stt {

std::string format_double(double v);

/// t,rho_l2,rho_linf,u_linf,u_h1,flux,potential_energy
void emit_series(std::ostream& os, const std::vector<SeriesRow>& rows);
/// N,delta,ratio (ratio empty for N = 0)
void emit_picard(std::ostream& os, const PicardTrace& trace);

/// Parses a series CSV back (header checked).
std::vector<SeriesRow> read_series(std::istream& is);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace stt
