#ifndef CDOSIM_CDO_HPP
#define CDOSIM_CDO_HPP

#include <optional>
#include <vector>

#include "cdosim/operators.hpp"

namespace cdosim {

// Device parameters of the conditional-displacement gate: alpha is the
// splitter-induced displacement, theta the Kerr cross-phase. The effective
// conditional displacement beta = -i theta alpha is always recomputed.
struct CdoParams {
    Complex alpha;
    double theta = 0.0;

    Complex beta() const { return Complex(0.0, -1.0) * theta * alpha; }
    double kerr_phase() const { return theta * std::norm(alpha); }
};

// Staged evolution D_a(alpha), then exp(-i theta n_a n_b), then D_a^dag(alpha).
// Faithful to the optical circuit, but the intermediate displaced state must
// fit the truncation: guard |alpha|^2 <= dim_a/4.
TwoModeState exact_cdo(const CdoParams& p, const TwoModeState& s);

// The same unitary evaluated through the conjugated generator
// exp(-i theta n_b ((a^dag + alpha^*)(a + alpha))) per mode-b level. The
// intermediate excursion never appears, so this stays accurate at arbitrarily
// large |alpha| as long as the net displacement fits:
// guard |(dim_b - 1) beta|^2 <= dim_a/4.
TwoModeState exact_cdo_conjugated(const CdoParams& p, const TwoModeState& s);

// Ideal conditional displacement: mode a receives phase e^{-i kerr_phase n_b}
// and displacement D(n_b beta) for each mode-b level n_b.
TwoModeState ideal_cdo(Complex beta, double kerr_phase, const TwoModeState& s);

// 1 - |<exact|ideal>|^2 for the two evolved states, with the exact side
// evaluated through the conjugated generator (valid across the whole
// alpha = i beta / theta range swept by convergence studies).
double cdo_infidelity(const CdoParams& p, const TwoModeState& s);

struct ConvergenceRow {
    double theta = 0.0;
    Complex alpha;
    double infidelity = 0.0;
};

struct ConvergenceScan {
    std::vector<ConvergenceRow> rows;
    bool monotone_decreasing = true;
    // log2 of the mean infidelity ratio under theta halving; empty for
    // single-row scans.
    std::optional<double> order_estimate;
};

// Per-theta infidelity with beta held fixed (alpha = i beta / theta).
ConvergenceScan convergence_scan(Complex beta,
                                 const std::vector<double>& thetas,
                                 const TwoModeState& probe);

} // namespace cdosim

#endif
