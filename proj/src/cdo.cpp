#include "cdosim/cdo.hpp"

#include <cmath>
#include <string>

namespace cdosim {

namespace {

void check_net_displacement_guard(Complex beta, int dim_a, int dim_b,
                                  const char* what) {
    const double worst = std::norm(beta) * (dim_b - 1) * (dim_b - 1);
    if (worst > 0.25 * dim_a) {
        throw TruncationRiskError(
            std::string(what) + ": |(dim_b-1) beta|^2 = " +
            std::to_string(worst) + " exceeds dim_a/4 = " +
            std::to_string(0.25 * dim_a));
    }
}

} // namespace

TwoModeState exact_cdo(const CdoParams& p, const TwoModeState& s) {
    const FockDim da(s.dim_a());
    const FockDim db(s.dim_b());
    const DisplacementGenerator dgen(da);
    const OperatorMatrix d_alpha = dgen.matrix(p.alpha); // guards |alpha|^2
    TwoModeState out = apply_to_mode(d_alpha, Mode::A, s);
    out = kerr_unitary(KerrParams{p.theta}, da, db).apply(out);
    return apply_to_mode(d_alpha.adjoint(), Mode::A, out);
}

TwoModeState exact_cdo_conjugated(const CdoParams& p, const TwoModeState& s) {
    const int da = s.dim_a();
    const int db = s.dim_b();
    check_net_displacement_guard(p.beta(), da, db, "exact_cdo_conjugated");

    // Conjugated generator without its c-number part:
    // M0 = n + alpha a^dag + alpha^* a; the |alpha|^2 term is applied as a
    // scalar phase so the eigenproblem stays well conditioned at large alpha.
    MatrixXcd m0 = MatrixXcd::Zero(da, da);
    for (int n = 0; n < da; ++n) {
        m0(n, n) = n;
    }
    for (int n = 1; n < da; ++n) {
        const double g = std::sqrt(static_cast<double>(n));
        m0(n, n - 1) = p.alpha * g;
        m0(n - 1, n) = std::conj(p.alpha) * g;
    }
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m0);

    const auto m = s.as_matrix();
    MatrixXcd out(da, db);
    for (int nb = 0; nb < db; ++nb) {
        if (nb == 0) {
            out.col(0) = m.col(0);
            continue;
        }
        VectorXcd u = es.eigenvectors().adjoint() * m.col(nb);
        for (int k = 0; k < da; ++k) {
            u[k] *= std::polar(1.0, -p.theta * nb * es.eigenvalues()[k]);
        }
        out.col(nb) =
            std::polar(1.0, -p.theta * nb * std::norm(p.alpha)) *
            (es.eigenvectors() * u);
    }
    return TwoModeState::from_matrix(out);
}

TwoModeState ideal_cdo(Complex beta, double kerr_phase, const TwoModeState& s) {
    const int da = s.dim_a();
    const int db = s.dim_b();
    check_net_displacement_guard(beta, da, db, "ideal_cdo");

    const DisplacementGenerator dgen{FockDim(da)};
    const auto m = s.as_matrix();
    MatrixXcd out(da, db);
    for (int nb = 0; nb < db; ++nb) {
        if (nb == 0) {
            out.col(0) = m.col(0);
            continue;
        }
        out.col(nb) = std::polar(1.0, -kerr_phase * nb) *
                      dgen.apply(static_cast<double>(nb) * beta, m.col(nb));
    }
    return TwoModeState::from_matrix(out);
}

double cdo_infidelity(const CdoParams& p, const TwoModeState& s) {
    const TwoModeState exact = exact_cdo_conjugated(p, s);
    const TwoModeState ideal = ideal_cdo(p.beta(), p.kerr_phase(), s);
    const Complex overlap = exact.amplitudes().dot(ideal.amplitudes());
    return std::max(0.0, 1.0 - std::norm(overlap));
}

ConvergenceScan convergence_scan(Complex beta,
                                 const std::vector<double>& thetas,
                                 const TwoModeState& probe) {
    if (thetas.empty()) {
        throw std::invalid_argument("convergence_scan: empty theta list");
    }
    ConvergenceScan scan;
    for (double theta : thetas) {
        ConvergenceRow row;
        row.theta = theta;
        if (theta == 0.0 || beta == Complex(0.0, 0.0)) {
            // Degenerate rows: with no cross-phase or no requested
            // displacement there is no gate approximation to grade.
            row.alpha = 0.0;
            row.infidelity = 0.0;
        } else {
            row.alpha = Complex(0.0, 1.0) * beta / theta;
            row.infidelity =
                cdo_infidelity(CdoParams{row.alpha, theta}, probe);
        }
        scan.rows.push_back(row);
    }
    for (std::size_t i = 1; i < scan.rows.size(); ++i) {
        if (!(scan.rows[i].infidelity < scan.rows[i - 1].infidelity)) {
            scan.monotone_decreasing = false;
        }
    }
    double order_sum = 0.0;
    int order_count = 0;
    for (std::size_t i = 1; i < scan.rows.size(); ++i) {
        const double f0 = scan.rows[i - 1].infidelity;
        const double f1 = scan.rows[i].infidelity;
        const double t0 = scan.rows[i - 1].theta;
        const double t1 = scan.rows[i].theta;
        if (f0 > 0.0 && f1 > 0.0 && t0 > 0.0 && t1 > 0.0 && t0 != t1) {
            order_sum += std::log(f0 / f1) / std::log(t0 / t1);
            ++order_count;
        }
    }
    if (order_count > 0) {
        scan.order_estimate = order_sum / order_count;
    }
    return scan;
}

} // namespace cdosim
