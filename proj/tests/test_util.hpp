#ifndef CDOSIM_TESTS_TEST_UTIL_HPP
#define CDOSIM_TESTS_TEST_UTIL_HPP

#include <random>

#include "cdosim/fock.hpp"
#include "cdosim/rng.hpp"

namespace testutil {

inline double gauss(std::mt19937_64& rng) {
    // Box-Muller on the reproducible uniform stream.
    const double u1 = std::max(cdosim::uniform01(rng), 1e-300);
    const double u2 = cdosim::uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

// Random normalized state with smoothly decaying level occupation, so the
// truncation stays physical.
inline cdosim::ModeState random_mode_state(std::mt19937_64& rng, int dim,
                                           double decay = 6.0) {
    Eigen::VectorXcd v(dim);
    for (int n = 0; n < dim; ++n) {
        v[n] = cdosim::Complex(gauss(rng), gauss(rng)) *
               std::exp(-n / decay);
    }
    v /= v.norm();
    return cdosim::ModeState(cdosim::FockDim(dim), std::move(v));
}

inline cdosim::Complex random_in_disc(std::mt19937_64& rng, double radius) {
    for (;;) {
        const double x = (2.0 * cdosim::uniform01(rng) - 1.0) * radius;
        const double y = (2.0 * cdosim::uniform01(rng) - 1.0) * radius;
        if (x * x + y * y <= radius * radius) {
            return {x, y};
        }
    }
}

} // namespace testutil

#endif
