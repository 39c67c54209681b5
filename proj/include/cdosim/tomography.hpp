#ifndef CDOSIM_TOMOGRAPHY_HPP
#define CDOSIM_TOMOGRAPHY_HPP

#include <cstdint>
#include <vector>

#include "cdosim/mzi.hpp"

namespace cdosim {

// Interferometer template for tomography runs: theta and the gate model are
// fixed, while alpha = i beta / theta and the phase-shifter setting
// eta = xi0 - theta |alpha|^2 are derived per sample point.
struct TomographyDevice {
    double theta = 0.01;
    CdoMode mode = CdoMode::Ideal;
};

MziParams device_params(const TomographyDevice& dev, Complex beta, double xi0);

// One characteristic-function sample: chi = dP(beta, 0) + i dP(beta, pi/2).
// shots == 0 marks an exact (noise-free) evaluation.
struct ChiSample {
    Complex beta;
    Complex chi;
    double dp0 = 0.0;
    double dp_half_pi = 0.0;
    long shots = 0;
};

// Square lattice beta = (i + i j) h for i, j in [-n, n], n = round(B/h).
// Stored row-major with i (real part) as the outer index.
class ChiGrid {
public:
    ChiGrid(double half_extent, double spacing, int n);

    double half_extent() const { return half_extent_; }
    double spacing() const { return spacing_; }
    int n() const { return n_; }
    int side() const { return 2 * n_ + 1; }
    int size() const { return side() * side(); }

    Complex beta_at(int i, int j) const {
        return Complex(i * spacing_, j * spacing_);
    }
    const ChiSample& at(int i, int j) const;
    ChiSample& at(int i, int j);
    const std::vector<ChiSample>& samples() const { return samples_; }

private:
    double half_extent_;
    double spacing_;
    int n_;
    std::vector<ChiSample> samples_;
};

struct WignerGrid {
    double half_extent = 0.0;
    double spacing = 0.0;
    int n = 0;
    // Row-major over z = (i + i j) g, i outer, both in [-n, n].
    std::vector<double> values;
    double max_imag_residue = 0.0;
    bool residue_warning = false;
    // Source chi-lattice parameters, for provenance.
    double chi_half_extent = 0.0;
    double chi_spacing = 0.0;

    int side() const { return 2 * n + 1; }
    Complex z_at(int i, int j) const { return Complex(i * spacing, j * spacing); }
    double at(int i, int j) const;
};

// Monte Carlo controls; shots == 0 runs the exact pipeline.
struct Sampling {
    long shots = 0;
    std::uint64_t seed = 0x243f6a8885a308d3ull;
    double efficiency = 1.0;
};

struct DeltaPEstimate {
    double value = 0.0;
    double sigma = 0.0; // binomial standard error from the estimate
    long shots = 0;
};

// Tr[rho D(beta)] by direct trace on the truncated space.
Complex chi_direct(const DensityMatrix& rho, Complex beta);

// P10 - P01 from the simulated interferometer at phase xi0.
double delta_p(const TomographyDevice& dev, const DensityMatrix& rho,
               Complex beta, double xi0);

// Two interferometer runs (xi0 = 0 and pi/2, i.e. two phase-shifter
// settings) assembled into one chi sample.
ChiSample chi_from_probabilities(const TomographyDevice& dev,
                                 const DensityMatrix& rho, Complex beta);

// Evaluates chi on the half-lattice and mirror-fills the rest through
// chi(-beta) = conj(chi(beta)), halving the simulated measurements.
ChiGrid sample_chi_grid(const TomographyDevice& dev, const DensityMatrix& rho,
                        double half_extent, double spacing,
                        const Sampling& sampling = {});

// Riemann-sum Fourier inversion W(z) = (1/pi^2) sum chi(beta)
// exp(z beta^* - z^* beta) h^2. Guard: chi spacing h must satisfy
// h * 2Z < pi.
WignerGrid wigner_from_chi(const ChiGrid& grid, double half_extent,
                           double spacing);

// Displaced-parity evaluator (2/pi) Tr[rho D(z) P D(z)^dag]; the independent
// reconstruction oracle. The class form shares the spectral setup across a
// lattice of z points.
class WignerOracle {
public:
    explicit WignerOracle(const DensityMatrix& rho);
    double value(Complex z) const;

private:
    DisplacementGenerator dgen_;
    std::vector<PureComponent> comps_;
};

double wigner_direct(const DensityMatrix& rho, Complex z);

// M Bernoulli detection records at success probability P10; each record
// registers with the given efficiency, unregistered events are discarded and
// redrawn (post-selected thinning). Deterministic for a fixed seed.
DeltaPEstimate monte_carlo_delta_p(const TomographyDevice& dev,
                                   const DensityMatrix& rho, Complex beta,
                                   double xi0, long shots, std::uint64_t seed,
                                   double efficiency = 1.0);

} // namespace cdosim

#endif
