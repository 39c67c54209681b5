#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>

#include "cdosim/io.hpp"

using namespace cdosim;

TEST_CASE("format_double round-trips") {
    for (double v : {0.0, 1.0, -0.5, 1e-17, 3.141592653589793,
                     0.6065306597126334}) {
        CHECK(std::strtod(io::format_double(v).c_str(), nullptr) == v);
    }
}

TEST_CASE("complex parsing") {
    CHECK(io::parse_complex("1.5") == Complex(1.5, 0.0));
    CHECK(io::parse_complex("0,-0.5") == Complex(0.0, -0.5));
    CHECK(io::parse_complex("-2.25,3") == Complex(-2.25, 3.0));
    CHECK_THROWS_AS(io::parse_complex("abc"), SimError);
    CHECK_THROWS_AS(io::parse_complex("1;2"), SimError);

    const Complex v(0.125, -7.5);
    CHECK(io::parse_complex(io::format_complex(v)) == v);
}

TEST_CASE("chi csv layout") {
    ChiGrid grid(0.5, 0.5, 1);
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            ChiSample& s = grid.at(i, j);
            s.beta = grid.beta_at(i, j);
            s.chi = Complex(i, j);
            s.dp0 = i;
            s.dp_half_pi = j;
        }
    }
    const std::string csv = io::chi_csv(grid);
    CHECK(csv.rfind("beta_re,beta_im,chi_re,chi_im,dp0,dp_half_pi,shots\n",
                    0) == 0);
    // 9 samples + header
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);
    // exact mode leaves the shots column empty
    CHECK(csv.find("-0.5,-0.5,-1,-1,-1,-1,\n") != std::string::npos);
}

TEST_CASE("wigner csv layout") {
    WignerGrid w;
    w.half_extent = 0.2;
    w.spacing = 0.2;
    w.n = 1;
    w.values.assign(9, 0.25);
    const std::string csv = io::wigner_csv(w);
    CHECK(csv.rfind("z_re,z_im,w\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);
}

TEST_CASE("scan csv layout") {
    ConvergenceScan scan;
    scan.rows.push_back({0.04, Complex(12.5, 0.0), 6.19e-4});
    scan.rows.push_back({0.02, Complex(25.0, 0.0), 1.55e-4});
    const std::string csv = io::scan_csv(scan);
    CHECK(csv.rfind("theta,alpha_re,alpha_im,infidelity\n", 0) == 0);
    CHECK(csv.find("0.02,25,0,") != std::string::npos);
}

TEST_CASE("amplitude file round-trip") {
    namespace fs = std::filesystem;
    const fs::path path =
        fs::temp_directory_path() / "cdosim_test_amplitudes.txt";
    io::write_text_file(path, "# comment line\n1,0\n0,0\n0.5,-0.5\n");
    const auto amps = io::read_amplitude_file(path);
    REQUIRE(amps.size() == 3);
    CHECK(amps[0] == Complex(1.0, 0.0));
    CHECK(amps[2] == Complex(0.5, -0.5));
    fs::remove(path);

    CHECK_THROWS_AS(io::read_amplitude_file("/nonexistent/amplitudes.txt"),
                    SimError);
}
