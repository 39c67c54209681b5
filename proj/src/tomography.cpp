#include "cdosim/tomography.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cdosim/rng.hpp"

namespace cdosim {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

int lattice_points(double half_extent, double spacing) {
    return static_cast<int>(std::floor(half_extent / spacing + 1e-9));
}

struct McResult {
    double value;
    double sigma;
};

// M registered Bernoulli records at success probability p10; unregistered
// events are discarded and redrawn, so efficiency shapes the random stream
// but not the estimator's law.
McResult binomial_delta_p(double p10, long shots, std::uint64_t seed,
                          double efficiency) {
    std::mt19937_64 rng(seed);
    long successes = 0;
    for (long i = 0; i < shots; ++i) {
        bool outcome = false;
        long misses = 0;
        for (;;) {
            outcome = uniform01(rng) < p10;
            if (efficiency >= 1.0 || uniform01(rng) < efficiency) {
                break;
            }
            if (++misses > 1000000) {
                throw StatisticsError(
                    "monte_carlo_delta_p: no detection events registered");
            }
        }
        if (outcome) {
            ++successes;
        }
    }
    const double phat = static_cast<double>(successes) / shots;
    return {2.0 * phat - 1.0,
            2.0 * std::sqrt(phat * (1.0 - phat) / shots)};
}

double clamp_probability(double p) { return std::min(1.0, std::max(0.0, p)); }

} // namespace

MziParams device_params(const TomographyDevice& dev, Complex beta, double xi0) {
    if (!(dev.theta > 0.0) || !std::isfinite(dev.theta)) {
        throw std::invalid_argument("device_params: theta must be positive");
    }
    const CdoParams cdo{Complex(0.0, 1.0) * beta / dev.theta, dev.theta};
    return MziParams{xi0 - cdo.kerr_phase(), cdo, dev.mode};
}

ChiGrid::ChiGrid(double half_extent, double spacing, int n)
    : half_extent_(half_extent), spacing_(spacing), n_(n) {
    if (half_extent <= 0.0 || spacing <= 0.0 || n < 0) {
        throw GridError("ChiGrid: need positive extent and spacing");
    }
    samples_.resize(static_cast<std::size_t>(side()) * side());
}

const ChiSample& ChiGrid::at(int i, int j) const {
    if (i < -n_ || i > n_ || j < -n_ || j > n_) {
        throw std::out_of_range("ChiGrid::at: index outside lattice");
    }
    return samples_[static_cast<std::size_t>(i + n_) * side() + (j + n_)];
}

ChiSample& ChiGrid::at(int i, int j) {
    return const_cast<ChiSample&>(std::as_const(*this).at(i, j));
}

double WignerGrid::at(int i, int j) const {
    if (i < -n || i > n || j < -n || j > n) {
        throw std::out_of_range("WignerGrid::at: index outside lattice");
    }
    return values[static_cast<std::size_t>(i + n) * side() + (j + n)];
}

Complex chi_direct(const DensityMatrix& rho, Complex beta) {
    const DisplacementGenerator dgen{FockDim(rho.dim())};
    Complex acc = 0.0;
    for (const auto& [weight, state] : pure_decomposition(rho)) {
        acc += weight * state.amplitudes().dot(
                            dgen.apply(beta, state.amplitudes()));
    }
    return acc;
}

double delta_p(const TomographyDevice& dev, const DensityMatrix& rho,
               Complex beta, double xi0) {
    const DetectionProbabilities probs =
        detection_probabilities(device_params(dev, beta, xi0), rho);
    return probs.p10 - probs.p01;
}

ChiSample chi_from_probabilities(const TomographyDevice& dev,
                                 const DensityMatrix& rho, Complex beta) {
    ChiSample sample;
    sample.beta = beta;
    sample.dp0 = delta_p(dev, rho, beta, 0.0);
    sample.dp_half_pi = delta_p(dev, rho, beta, kHalfPi);
    sample.chi = Complex(sample.dp0, sample.dp_half_pi);
    return sample;
}

ChiGrid sample_chi_grid(const TomographyDevice& dev, const DensityMatrix& rho,
                        double half_extent, double spacing,
                        const Sampling& sampling) {
    if (half_extent <= 0.0 || spacing <= 0.0) {
        throw GridError("sample_chi_grid: need positive extent and spacing");
    }
    if (sampling.shots < 0) {
        throw std::invalid_argument("sample_chi_grid: negative shot count");
    }
    if (sampling.efficiency <= 0.0 || sampling.efficiency > 1.0) {
        throw std::invalid_argument(
            "sample_chi_grid: efficiency must lie in (0, 1]");
    }
    rho.validate();

    const int n = lattice_points(half_extent, spacing);
    const double corner = 2.0 * (n * spacing) * (n * spacing);
    if (corner > 0.25 * rho.dim()) {
        throw TruncationRiskError(
            "sample_chi_grid: lattice corner |beta|^2 = " +
            std::to_string(corner) + " exceeds dim/4 = " +
            std::to_string(0.25 * rho.dim()));
    }

    const auto comps = pure_decomposition(rho);
    const DisplacementGenerator dgen{FockDim(rho.dim())};
    ChiGrid grid(half_extent, spacing, n);

    for (int i = -n; i <= n; ++i) {
        for (int j = -n; j <= n; ++j) {
            if (!(j > 0 || (j == 0 && i >= 0))) {
                continue; // mirror half, filled below
            }
            const Complex beta = grid.beta_at(i, j);
            const std::uint64_t point_key =
                static_cast<std::uint64_t>(i + n) * (2 * n + 1) + (j + n);
            double dp[2];
            for (int tag = 0; tag < 2; ++tag) {
                const MziParams p =
                    device_params(dev, beta, tag == 0 ? 0.0 : kHalfPi);
                double p10 = 0.0;
                double p01 = 0.0;
                for (const auto& [weight, state] : comps) {
                    const ThreeSystemState out =
                        run_mzi(p, state.normalized(), dgen);
                    p10 += weight * out.rail10().squaredNorm();
                    p01 += weight * out.rail01().squaredNorm();
                }
                if (sampling.shots > 0) {
                    dp[tag] = binomial_delta_p(
                                  clamp_probability(p10), sampling.shots,
                                  derive_seed(sampling.seed, point_key, tag),
                                  sampling.efficiency)
                                  .value;
                } else {
                    dp[tag] = p10 - p01;
                }
            }
            ChiSample& s = grid.at(i, j);
            s.beta = beta;
            s.dp0 = dp[0];
            s.dp_half_pi = dp[1];
            s.chi = Complex(dp[0], dp[1]);
            s.shots = sampling.shots;
        }
    }
    // chi(-beta) = conj(chi(beta)) fills the other half for free.
    for (int i = -n; i <= n; ++i) {
        for (int j = -n; j <= n; ++j) {
            if (j > 0 || (j == 0 && i >= 0)) {
                continue;
            }
            const ChiSample& src = grid.at(-i, -j);
            ChiSample& s = grid.at(i, j);
            s.beta = grid.beta_at(i, j);
            s.chi = std::conj(src.chi);
            s.dp0 = src.dp0;
            s.dp_half_pi = -src.dp_half_pi;
            s.shots = src.shots;
        }
    }
    return grid;
}

WignerGrid wigner_from_chi(const ChiGrid& grid, double half_extent,
                           double spacing) {
    if (half_extent <= 0.0 || spacing <= 0.0) {
        throw GridError("wigner_from_chi: need positive extent and spacing");
    }
    if (grid.spacing() * 2.0 * half_extent >= std::numbers::pi) {
        throw GridError(
            "wigner_from_chi: chi spacing too coarse, need h * 2Z < pi");
    }
    const int nz = lattice_points(half_extent, spacing);
    const int nb = grid.n();
    const double h = grid.spacing();

    WignerGrid out;
    out.half_extent = half_extent;
    out.spacing = spacing;
    out.n = nz;
    out.chi_half_extent = grid.half_extent();
    out.chi_spacing = h;
    out.values.resize(static_cast<std::size_t>(out.side()) * out.side());

    // exp(z beta^* - z^* beta) = exp(2i y u) exp(-2i x v) with z = x + iy and
    // beta = u + iv separates the double sum into two passes.
    MatrixXcd partial(2 * nb + 1, 2 * nz + 1);
    for (int i = -nb; i <= nb; ++i) {
        for (int ix = -nz; ix <= nz; ++ix) {
            Complex acc = 0.0;
            const double x = ix * spacing;
            for (int j = -nb; j <= nb; ++j) {
                acc += grid.at(i, j).chi * std::polar(1.0, -2.0 * x * (j * h));
            }
            partial(i + nb, ix + nz) = acc;
        }
    }
    const double measure = h * h / (std::numbers::pi * std::numbers::pi);
    double max_residue = 0.0;
    for (int ix = -nz; ix <= nz; ++ix) {
        for (int iy = -nz; iy <= nz; ++iy) {
            Complex acc = 0.0;
            const double y = iy * spacing;
            for (int i = -nb; i <= nb; ++i) {
                acc += partial(i + nb, ix + nz) *
                       std::polar(1.0, 2.0 * y * (i * h));
            }
            acc *= measure;
            max_residue = std::max(max_residue, std::abs(acc.imag()));
            out.values[static_cast<std::size_t>(ix + nz) * out.side() +
                       (iy + nz)] = acc.real();
        }
    }
    out.max_imag_residue = max_residue;
    out.residue_warning = max_residue > 1e-6;
    return out;
}

WignerOracle::WignerOracle(const DensityMatrix& rho)
    : dgen_(FockDim(rho.dim())), comps_(pure_decomposition(rho)) {}

double WignerOracle::value(Complex z) const {
    double acc = 0.0;
    for (const auto& [weight, state] : comps_) {
        const VectorXcd phi = dgen_.apply(-z, state.amplitudes());
        double parity = 0.0;
        for (int m = 0; m < phi.size(); ++m) {
            const double p = std::norm(phi[m]);
            parity += (m % 2 == 0) ? p : -p;
        }
        acc += weight * parity;
    }
    return 2.0 / std::numbers::pi * acc;
}

double wigner_direct(const DensityMatrix& rho, Complex z) {
    return WignerOracle(rho).value(z);
}

DeltaPEstimate monte_carlo_delta_p(const TomographyDevice& dev,
                                   const DensityMatrix& rho, Complex beta,
                                   double xi0, long shots, std::uint64_t seed,
                                   double efficiency) {
    if (shots < 1) {
        throw std::invalid_argument("monte_carlo_delta_p: need shots >= 1");
    }
    if (efficiency <= 0.0 || efficiency > 1.0) {
        throw std::invalid_argument(
            "monte_carlo_delta_p: efficiency must lie in (0, 1]");
    }
    const DetectionProbabilities probs =
        detection_probabilities(device_params(dev, beta, xi0), rho);
    const McResult mc = binomial_delta_p(clamp_probability(probs.p10), shots,
                                         seed, efficiency);
    return DeltaPEstimate{mc.value, mc.sigma, shots};
}

} // namespace cdosim
