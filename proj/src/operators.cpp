#include "cdosim/operators.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace cdosim {

namespace {

void check_displacement_guard(Complex alpha, int dim, const char* what) {
    const double a2 = std::norm(alpha);
    if (a2 > 0.25 * dim) {
        throw TruncationRiskError(
            std::string(what) + ": |alpha|^2 = " + std::to_string(a2) +
            " exceeds dim/4 = " + std::to_string(0.25 * dim));
    }
}

// diag(e^{i phi n}) phase rotations used to reduce D(alpha) to D(|alpha|).
VectorXcd phase_ramp(double phi, int dim) {
    VectorXcd r(dim);
    for (int n = 0; n < dim; ++n) {
        r[n] = std::polar(1.0, phi * n);
    }
    return r;
}

} // namespace

OperatorMatrix::OperatorMatrix(int da, int db, MatrixXcd m, bool unitary,
                               bool diagonal)
    : dim_a_(da), dim_b_(db), m_(std::move(m)), unitary_(unitary),
      diagonal_(diagonal) {}

OperatorMatrix OperatorMatrix::single_mode(FockDim d, MatrixXcd m, bool unitary,
                                           bool diagonal) {
    if (m.rows() != d.value() || m.cols() != d.value()) {
        throw DimensionMismatchError(
            "OperatorMatrix::single_mode: matrix does not match dim");
    }
    return OperatorMatrix(d.value(), 0, std::move(m), unitary, diagonal);
}

OperatorMatrix OperatorMatrix::two_mode(FockDim da, FockDim db, MatrixXcd m,
                                        bool unitary, bool diagonal) {
    const int total = da.value() * db.value();
    if (m.rows() != total || m.cols() != total) {
        throw DimensionMismatchError(
            "OperatorMatrix::two_mode: matrix does not match dim_a * dim_b");
    }
    return OperatorMatrix(da.value(), db.value(), std::move(m), unitary,
                          diagonal);
}

double OperatorMatrix::unitarity_defect() const {
    const MatrixXcd g = m_.adjoint() * m_;
    return (g - MatrixXcd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

OperatorMatrix OperatorMatrix::adjoint() const {
    return OperatorMatrix(dim_a_, dim_b_, m_.adjoint(), unitary_, diagonal_);
}

ModeState OperatorMatrix::apply(const ModeState& s) const {
    if (is_two_mode()) {
        throw DimensionMismatchError(
            "OperatorMatrix::apply: two-mode operator on a single-mode state");
    }
    if (dim_a_ != s.dim()) {
        throw DimensionMismatchError(
            "OperatorMatrix::apply: operator dim does not match state");
    }
    return ModeState(FockDim(dim_a_), m_ * s.amplitudes());
}

TwoModeState OperatorMatrix::apply(const TwoModeState& s) const {
    if (!is_two_mode()) {
        throw DimensionMismatchError(
            "OperatorMatrix::apply: single-mode operator on a mode pair");
    }
    if (dim_a_ != s.dim_a() || dim_b_ != s.dim_b()) {
        throw DimensionMismatchError(
            "OperatorMatrix::apply: operator dims do not match state");
    }
    return TwoModeState(FockDim(dim_a_), FockDim(dim_b_), m_ * s.amplitudes());
}

OperatorMatrix annihilation(FockDim d) {
    MatrixXcd m = MatrixXcd::Zero(d.value(), d.value());
    for (int n = 1; n < d.value(); ++n) {
        m(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return OperatorMatrix::single_mode(d, std::move(m), false);
}

OperatorMatrix creation(FockDim d) { return annihilation(d).adjoint(); }

OperatorMatrix number_operator(FockDim d) {
    MatrixXcd m = MatrixXcd::Zero(d.value(), d.value());
    for (int n = 0; n < d.value(); ++n) {
        m(n, n) = n;
    }
    return OperatorMatrix::single_mode(d, std::move(m), false, true);
}

OperatorMatrix parity_operator(FockDim d) {
    MatrixXcd m = MatrixXcd::Zero(d.value(), d.value());
    for (int n = 0; n < d.value(); ++n) {
        m(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
    }
    return OperatorMatrix::single_mode(d, std::move(m), true, true);
}

OperatorMatrix identity_operator(FockDim d) {
    return OperatorMatrix::single_mode(
        d, MatrixXcd::Identity(d.value(), d.value()), true, true);
}

DisplacementGenerator::DisplacementGenerator(FockDim d) {
    MatrixXcd h = MatrixXcd::Zero(d.value(), d.value());
    for (int n = 1; n < d.value(); ++n) {
        const double g = std::sqrt(static_cast<double>(n));
        h(n, n - 1) = Complex(0.0, g);
        h(n - 1, n) = Complex(0.0, -g);
    }
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
    evals_ = es.eigenvalues();
    evecs_ = es.eigenvectors();
}

OperatorMatrix DisplacementGenerator::matrix(Complex alpha) const {
    check_displacement_guard(alpha, dim(), "displacement");
    if (alpha == Complex(0.0, 0.0)) {
        return identity_operator(FockDim(dim()));
    }
    const double r = std::abs(alpha);
    const double phi = std::arg(alpha);
    VectorXcd phases(dim());
    for (int k = 0; k < dim(); ++k) {
        phases[k] = std::polar(1.0, -r * evals_[k]);
    }
    MatrixXcd core = evecs_ * phases.asDiagonal() * evecs_.adjoint();
    const VectorXcd ramp = phase_ramp(phi, dim());
    MatrixXcd m = ramp.asDiagonal() * core * ramp.conjugate().asDiagonal();
    return OperatorMatrix::single_mode(FockDim(dim()), std::move(m), true);
}

VectorXcd DisplacementGenerator::apply(Complex alpha, const VectorXcd& v) const {
    if (v.size() != dim()) {
        throw DimensionMismatchError(
            "DisplacementGenerator::apply: vector does not match dim");
    }
    check_displacement_guard(alpha, dim(), "displacement");
    if (alpha == Complex(0.0, 0.0)) {
        return v;
    }
    const double r = std::abs(alpha);
    const double phi = std::arg(alpha);
    const VectorXcd ramp = phase_ramp(phi, dim());
    VectorXcd w = ramp.conjugate().cwiseProduct(v);
    VectorXcd u = evecs_.adjoint() * w;
    for (int k = 0; k < dim(); ++k) {
        u[k] *= std::polar(1.0, -r * evals_[k]);
    }
    w = evecs_ * u;
    return ramp.cwiseProduct(w);
}

VectorXcd DisplacementGenerator::apply_adjoint(Complex alpha,
                                               const VectorXcd& v) const {
    return apply(-alpha, v);
}

OperatorMatrix displacement(Complex alpha, FockDim d) {
    return DisplacementGenerator(d).matrix(alpha);
}

OperatorMatrix kerr_unitary(const KerrParams& p, FockDim da, FockDim db) {
    if (!std::isfinite(p.theta) || std::abs(p.theta) > std::numbers::pi) {
        throw std::invalid_argument(
            "kerr_unitary: theta must be finite and |theta| <= pi");
    }
    const int total = da.value() * db.value();
    MatrixXcd m = MatrixXcd::Zero(total, total);
    for (int na = 0; na < da.value(); ++na) {
        for (int nb = 0; nb < db.value(); ++nb) {
            const int idx = na * db.value() + nb;
            m(idx, idx) = std::polar(1.0, -p.theta * na * nb);
        }
    }
    return OperatorMatrix::two_mode(da, db, std::move(m), true, true);
}

OperatorMatrix tensor_product(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.is_two_mode() || b.is_two_mode()) {
        throw DimensionMismatchError(
            "tensor_product: factors must be single-mode operators");
    }
    const int da = a.dim_a();
    const int db = b.dim_a();
    MatrixXcd m(da * db, da * db);
    for (int i = 0; i < da; ++i) {
        for (int j = 0; j < da; ++j) {
            m.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
        }
    }
    return OperatorMatrix::two_mode(FockDim(da), FockDim(db), std::move(m),
                                    a.unitary_flag() && b.unitary_flag(),
                                    a.diagonal_flag() && b.diagonal_flag());
}

TwoModeState apply_to_mode(const OperatorMatrix& op, Mode target,
                           const TwoModeState& s) {
    if (op.is_two_mode()) {
        throw DimensionMismatchError(
            "apply_to_mode: expected a single-mode operator");
    }
    const int d = (target == Mode::A) ? s.dim_a() : s.dim_b();
    if (op.dim_a() != d) {
        throw DimensionMismatchError(
            "apply_to_mode: operator dim does not match target mode");
    }
    const auto m = s.as_matrix();
    MatrixXcd out = (target == Mode::A)
                        ? MatrixXcd(op.matrix() * m)
                        : MatrixXcd(m * op.matrix().transpose());
    return TwoModeState::from_matrix(out);
}

ThreeSystemState apply_to_mode_a(const OperatorMatrix& op,
                                 const ThreeSystemState& s) {
    if (op.is_two_mode() || op.dim_a() != s.dim_a()) {
        throw DimensionMismatchError(
            "apply_to_mode_a: operator dim does not match mode a");
    }
    return ThreeSystemState(op.matrix() * s.rail01(), op.matrix() * s.rail10());
}

Eigen::Matrix2cd bs5050_matrix() {
    const double s = 1.0 / std::numbers::sqrt2;
    Eigen::Matrix2cd m;
    m << Complex(s, 0.0), Complex(0.0, s), Complex(0.0, s), Complex(s, 0.0);
    return m;
}

Eigen::Matrix2cd phase_shifter(double eta) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = std::polar(1.0, eta);
    m(1, 1) = 1.0;
    return m;
}

ThreeSystemState apply_dual_rail(const Eigen::Matrix2cd& u,
                                 const ThreeSystemState& s) {
    return ThreeSystemState(u(0, 0) * s.rail01() + u(0, 1) * s.rail10(),
                            u(1, 0) * s.rail01() + u(1, 1) * s.rail10());
}

ThreeSystemState bs5050_dualrail(const ThreeSystemState& s) {
    return apply_dual_rail(bs5050_matrix(), s);
}

DensityMatrix evolve(const DensityMatrix& rho, const OperatorMatrix& u) {
    if (u.is_two_mode() || u.dim_a() != rho.dim()) {
        throw DimensionMismatchError("evolve: operator dim does not match rho");
    }
    return DensityMatrix(u.matrix() * rho.elements() * u.matrix().adjoint());
}

Complex expectation(const DensityMatrix& rho, const OperatorMatrix& op) {
    if (op.is_two_mode() || op.dim_a() != rho.dim()) {
        throw DimensionMismatchError(
            "expectation: operator dim does not match rho");
    }
    return (rho.elements() * op.matrix()).trace();
}

TwoModeState beam_splitter(double theta_bs, const TwoModeState& s) {
    const int da = s.dim_a();
    const int db = s.dim_b();
    VectorXcd out = VectorXcd::Zero(da * db);
    // Total photon number is conserved; exponentiate each sector separately.
    for (int total = 0; total <= da + db - 2; ++total) {
        const int na_min = std::max(0, total - (db - 1));
        const int na_max = std::min(da - 1, total);
        const int k = na_max - na_min + 1;
        if (k <= 0) {
            continue;
        }
        MatrixXcd h = MatrixXcd::Zero(k, k);
        for (int i = 0; i + 1 < k; ++i) {
            const int na = na_min + i;
            const int nb = total - na;
            // <na+1, nb-1| a^dag b |na, nb> = sqrt((na+1) nb)
            const double g =
                theta_bs * std::sqrt(static_cast<double>((na + 1) * nb));
            h(i + 1, i) = Complex(0.0, g);
            h(i, i + 1) = Complex(0.0, -g);
        }
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
        VectorXcd sector(k);
        for (int i = 0; i < k; ++i) {
            const int na = na_min + i;
            sector[i] = s.amplitudes()[na * db + (total - na)];
        }
        VectorXcd u = es.eigenvectors().adjoint() * sector;
        for (int i = 0; i < k; ++i) {
            u[i] *= std::polar(1.0, -es.eigenvalues()[i]);
        }
        sector = es.eigenvectors() * u;
        for (int i = 0; i < k; ++i) {
            const int na = na_min + i;
            out[na * db + (total - na)] = sector[i];
        }
    }
    return TwoModeState(FockDim(da), FockDim(db), std::move(out));
}

BsValidationReport bs_displacement_validation(const BsDisplacementParams& p,
                                              const ModeState& input,
                                              FockDim d_signal,
                                              int d_ancilla) {
    if (p.reflectance <= 0.0 || p.reflectance > 0.2) {
        throw std::invalid_argument(
            "bs_displacement_validation: reflectance must lie in (0, 0.2]");
    }
    if (input.dim() != d_signal.value()) {
        throw DimensionMismatchError(
            "bs_displacement_validation: input does not match d_signal");
    }
    const double g2 = std::norm(p.gamma);
    if (d_ancilla == 0) {
        d_ancilla = std::max(
            32, static_cast<int>(std::ceil(4.0 * g2 + 8.0 * std::abs(p.gamma))) + 16);
    }
    if (g2 > 0.25 * d_ancilla) {
        throw TruncationRiskError(
            "bs_displacement_validation: |gamma|^2 exceeds d_ancilla/4");
    }
    check_displacement_guard(p.alpha(), d_signal.value(),
                             "bs_displacement_validation (target)");

    const double theta_bs = std::asin(p.reflectance);
    const auto ancilla = coherent_state(p.gamma, FockDim(d_ancilla));
    const TwoModeState joint = tensor(input.normalized(), ancilla.state);
    const TwoModeState evolved = beam_splitter(theta_bs, joint);
    const DensityMatrix reduced = partial_trace_b(evolved);

    const DisplacementGenerator dgen(d_signal);
    const ModeState target(
        d_signal, dgen.apply(p.alpha(), input.normalized().amplitudes()));

    BsValidationReport report;
    report.fidelity = fidelity(reduced, target.normalized());
    report.alpha = p.alpha();
    report.theta_bs = theta_bs;
    report.dim_signal = d_signal.value();
    report.dim_ancilla = d_ancilla;
    report.ancilla_truncation_loss = ancilla.truncation_loss;
    return report;
}

} // namespace cdosim
