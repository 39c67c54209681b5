#include "cdosim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace cdosim::io {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string chi_csv(const ChiGrid& grid) {
    std::string out = "beta_re,beta_im,chi_re,chi_im,dp0,dp_half_pi,shots\n";
    const int n = grid.n();
    for (int i = -n; i <= n; ++i) {
        for (int j = -n; j <= n; ++j) {
            const ChiSample& s = grid.at(i, j);
            out += format_double(s.beta.real()) + ',' +
                   format_double(s.beta.imag()) + ',' +
                   format_double(s.chi.real()) + ',' +
                   format_double(s.chi.imag()) + ',' +
                   format_double(s.dp0) + ',' +
                   format_double(s.dp_half_pi) + ',';
            if (s.shots > 0) {
                out += std::to_string(s.shots);
            }
            out += '\n';
        }
    }
    return out;
}

std::string wigner_csv(const WignerGrid& grid) {
    std::string out = "z_re,z_im,w\n";
    for (int i = -grid.n; i <= grid.n; ++i) {
        for (int j = -grid.n; j <= grid.n; ++j) {
            const Complex z = grid.z_at(i, j);
            out += format_double(z.real()) + ',' + format_double(z.imag()) +
                   ',' + format_double(grid.at(i, j)) + '\n';
        }
    }
    return out;
}

std::string scan_csv(const ConvergenceScan& scan) {
    std::string out = "theta,alpha_re,alpha_im,infidelity\n";
    for (const ConvergenceRow& row : scan.rows) {
        out += format_double(row.theta) + ',' +
               format_double(row.alpha.real()) + ',' +
               format_double(row.alpha.imag()) + ',' +
               format_double(row.infidelity) + '\n';
    }
    return out;
}

std::string amplitude_csv(const ModeState& s) {
    std::string out = "n,re,im,prob\n";
    for (int n = 0; n < s.dim(); ++n) {
        const Complex a = s.amplitudes()[n];
        out += std::to_string(n) + ',' + format_double(a.real()) + ',' +
               format_double(a.imag()) + ',' + format_double(std::norm(a)) +
               '\n';
    }
    return out;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw SimError("cannot open " + path.string() + " for writing");
    }
    f << contents;
    if (!f) {
        throw SimError("failed writing " + path.string());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw SimError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<Complex> read_amplitude_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) {
        throw SimError("cannot open amplitude file " + path.string());
    }
    std::vector<Complex> amps;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        amps.push_back(parse_complex(line));
    }
    return amps;
}

Complex parse_complex(const std::string& text) {
    std::istringstream ss(text);
    double re = 0.0;
    double im = 0.0;
    ss >> re;
    if (!ss) {
        throw SimError("cannot parse complex value from '" + text + "'");
    }
    char sep = 0;
    if (ss >> sep) {
        if (sep != ',' || !(ss >> im)) {
            throw SimError("cannot parse complex value from '" + text +
                           "', expected re[,im]");
        }
    }
    return {re, im};
}

std::string format_complex(Complex v) {
    return format_double(v.real()) + ',' + format_double(v.imag());
}

} // namespace cdosim::io
