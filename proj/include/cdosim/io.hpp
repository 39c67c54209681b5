#ifndef CDOSIM_IO_HPP
#define CDOSIM_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "cdosim/cdo.hpp"
#include "cdosim/tomography.hpp"

namespace cdosim::io {

// Shortest round-trip decimal representation; identical inputs produce
// byte-identical output.
std::string format_double(double v);

std::string chi_csv(const ChiGrid& grid);
std::string wigner_csv(const WignerGrid& grid);
std::string scan_csv(const ConvergenceScan& scan);
std::string amplitude_csv(const ModeState& s);

void write_text_file(const std::filesystem::path& path,
                     const std::string& contents);
std::string read_text_file(const std::filesystem::path& path);

// Newline-separated "re,im" amplitude rows.
std::vector<Complex> read_amplitude_file(const std::filesystem::path& path);

// Accepts "re" or "re,im".
Complex parse_complex(const std::string& text);
std::string format_complex(Complex v);

} // namespace cdosim::io

#endif
