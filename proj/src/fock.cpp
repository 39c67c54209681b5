#include "cdosim/fock.hpp"

#include <cmath>
#include <string>

namespace cdosim {

namespace {

void require_same_dim(int a, int b, const char* what) {
    if (a != b) {
        throw DimensionMismatchError(std::string(what) + ": dimensions " +
                                     std::to_string(a) + " and " +
                                     std::to_string(b) + " differ");
    }
}

void require_normalized(double squared_norm, const char* what) {
    if (std::abs(squared_norm - 1.0) > kNormTolerance) {
        throw NormalizationError(std::string(what) +
                                 ": state not normalized (|amp|^2 = " +
                                 std::to_string(squared_norm) + ")");
    }
}

} // namespace

FockDim::FockDim(int dim) : dim_(dim) {
    if (dim < 2) {
        throw std::invalid_argument("FockDim: need at least 2 levels, got " +
                                    std::to_string(dim));
    }
}

ModeState::ModeState(FockDim d) : amps_(VectorXcd::Zero(d.value())) {}

ModeState::ModeState(FockDim d, VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
    if (static_cast<int>(amps_.size()) != d.value()) {
        throw DimensionMismatchError("ModeState: amplitude count " +
                                     std::to_string(amps_.size()) +
                                     " does not match dim " +
                                     std::to_string(d.value()));
    }
}

Complex ModeState::amplitude(int n) const {
    if (n < 0 || n >= dim()) {
        throw std::out_of_range("ModeState::amplitude: level " +
                                std::to_string(n) + " outside [0, " +
                                std::to_string(dim()) + ")");
    }
    return amps_[n];
}

ModeState ModeState::normalized() const {
    const double nrm = norm();
    if (nrm < 1e-15) {
        throw NormalizationError("ModeState::normalized: zero-norm state");
    }
    return ModeState(FockDim(dim()), amps_ / nrm);
}

double ModeState::tail_mass() const {
    const int d = dim();
    const int tail_levels = (d + 9) / 10; // top decile, at least one level
    double mass = 0.0;
    for (int n = d - tail_levels; n < d; ++n) {
        mass += std::norm(amps_[n]);
    }
    return mass;
}

bool ModeState::is_physical(double guard) const { return tail_mass() < guard; }

TwoModeState::TwoModeState(FockDim da, FockDim db)
    : dim_a_(da.value()),
      dim_b_(db.value()),
      amps_(VectorXcd::Zero(da.value() * db.value())) {}

TwoModeState::TwoModeState(FockDim da, FockDim db, VectorXcd amplitudes)
    : dim_a_(da.value()), dim_b_(db.value()), amps_(std::move(amplitudes)) {
    if (static_cast<int>(amps_.size()) != dim_a_ * dim_b_) {
        throw DimensionMismatchError(
            "TwoModeState: amplitude count does not match dim_a * dim_b");
    }
}

Complex TwoModeState::amplitude(int na, int nb) const {
    if (na < 0 || na >= dim_a_ || nb < 0 || nb >= dim_b_) {
        throw std::out_of_range("TwoModeState::amplitude: index outside range");
    }
    return amps_[na * dim_b_ + nb];
}

Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                               Eigen::RowMajor>>
TwoModeState::as_matrix() const {
    return {amps_.data(), dim_a_, dim_b_};
}

TwoModeState TwoModeState::from_matrix(const MatrixXcd& m) {
    const int da = static_cast<int>(m.rows());
    const int db = static_cast<int>(m.cols());
    VectorXcd v(da * db);
    for (int na = 0; na < da; ++na) {
        for (int nb = 0; nb < db; ++nb) {
            v[na * db + nb] = m(na, nb);
        }
    }
    return TwoModeState(FockDim(da), FockDim(db), std::move(v));
}

ThreeSystemState::ThreeSystemState(FockDim da)
    : rail01_(VectorXcd::Zero(da.value())),
      rail10_(VectorXcd::Zero(da.value())) {}

ThreeSystemState::ThreeSystemState(VectorXcd rail01, VectorXcd rail10)
    : rail01_(std::move(rail01)), rail10_(std::move(rail10)) {
    if (rail01_.size() != rail10_.size()) {
        throw DimensionMismatchError(
            "ThreeSystemState: rail blocks must share the mode-a dimension");
    }
    if (rail01_.size() < 2) {
        throw std::invalid_argument("ThreeSystemState: mode-a dim below 2");
    }
}

double ThreeSystemState::norm() const { return std::sqrt(squared_norm()); }

DensityMatrix::DensityMatrix(MatrixXcd elements) : rho_(std::move(elements)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() < 2) {
        throw DimensionMismatchError("DensityMatrix: need a square matrix of dim >= 2");
    }
}

double DensityMatrix::hermiticity_defect() const {
    return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(
        MatrixXcd(0.5 * (rho_ + rho_.adjoint())), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

void DensityMatrix::validate() const {
    if (hermiticity_defect() > 1e-10) {
        throw SimError("DensityMatrix: not Hermitian within 1e-10");
    }
    if (std::abs(trace() - 1.0) > 1e-10) {
        throw SimError("DensityMatrix: trace differs from 1 beyond 1e-10");
    }
    if (min_eigenvalue() < -1e-8) {
        throw SimError("DensityMatrix: eigenvalue below -1e-8");
    }
}

ModeState fock_state(int n, FockDim d) {
    if (n < 0 || n >= d.value()) {
        throw std::out_of_range("fock_state: level " + std::to_string(n) +
                                " outside truncated basis of dim " +
                                std::to_string(d.value()));
    }
    VectorXcd v = VectorXcd::Zero(d.value());
    v[n] = 1.0;
    return ModeState(d, std::move(v));
}

CoherentStateResult coherent_state(Complex alpha, FockDim d) {
    const double a2 = std::norm(alpha);
    if (a2 > 0.25 * d.value()) {
        throw TruncationRiskError(
            "coherent_state: |alpha|^2 = " + std::to_string(a2) +
            " exceeds dim/4 = " + std::to_string(0.25 * d.value()));
    }
    VectorXcd v(d.value());
    v[0] = std::exp(-a2 / 2.0);
    for (int n = 1; n < d.value(); ++n) {
        v[n] = v[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    }
    const double kept = v.squaredNorm();
    v /= std::sqrt(kept);
    return CoherentStateResult{ModeState(d, std::move(v)), 1.0 - kept};
}

Complex inner_product(const ModeState& x, const ModeState& y) {
    require_same_dim(x.dim(), y.dim(), "inner_product");
    return x.amplitudes().dot(y.amplitudes());
}

double fidelity(const ModeState& x, const ModeState& y) {
    require_same_dim(x.dim(), y.dim(), "fidelity");
    require_normalized(x.squared_norm(), "fidelity (first argument)");
    require_normalized(y.squared_norm(), "fidelity (second argument)");
    return std::norm(inner_product(x, y));
}

double fidelity(const DensityMatrix& rho, const ModeState& psi) {
    require_same_dim(rho.dim(), psi.dim(), "fidelity");
    require_normalized(psi.squared_norm(), "fidelity (pure reference)");
    const Complex v =
        psi.amplitudes().dot(rho.elements() * psi.amplitudes());
    return v.real();
}

TwoModeState tensor(const ModeState& a, const ModeState& b) {
    require_normalized(a.squared_norm(), "tensor (first factor)");
    require_normalized(b.squared_norm(), "tensor (second factor)");
    const int da = a.dim();
    const int db = b.dim();
    VectorXcd v(da * db);
    for (int na = 0; na < da; ++na) {
        for (int nb = 0; nb < db; ++nb) {
            v[na * db + nb] = a.amplitudes()[na] * b.amplitudes()[nb];
        }
    }
    return TwoModeState(FockDim(da), FockDim(db), std::move(v));
}

ModeState mode_a_block(const TwoModeState& s, int nb) {
    if (nb < 0 || nb >= s.dim_b()) {
        throw std::out_of_range("mode_a_block: n_b outside mode-b basis");
    }
    VectorXcd v(s.dim_a());
    for (int na = 0; na < s.dim_a(); ++na) {
        v[na] = s.amplitudes()[na * s.dim_b() + nb];
    }
    return ModeState(FockDim(s.dim_a()), std::move(v));
}

ModeState mode_b_block(const TwoModeState& s, int na) {
    if (na < 0 || na >= s.dim_a()) {
        throw std::out_of_range("mode_b_block: n_a outside mode-a basis");
    }
    VectorXcd v(s.dim_b());
    for (int nb = 0; nb < s.dim_b(); ++nb) {
        v[nb] = s.amplitudes()[na * s.dim_b() + nb];
    }
    return ModeState(FockDim(s.dim_b()), std::move(v));
}

DensityMatrix partial_trace_b(const TwoModeState& s) {
    const auto m = s.as_matrix();
    return DensityMatrix(m * m.adjoint());
}

DensityMatrix partial_trace_a(const TwoModeState& s) {
    const auto m = s.as_matrix();
    return DensityMatrix(m.transpose() * m.conjugate());
}

DensityMatrix density_from_pure(const ModeState& s) {
    return DensityMatrix(s.amplitudes() * s.amplitudes().adjoint());
}

std::vector<PureComponent> pure_decomposition(const DensityMatrix& rho,
                                              double weight_cutoff) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(
        MatrixXcd(0.5 * (rho.elements() + rho.elements().adjoint())));
    std::vector<PureComponent> comps;
    for (int k = 0; k < rho.dim(); ++k) {
        const double w = es.eigenvalues()[k];
        if (w > weight_cutoff) {
            comps.push_back(
                {w, ModeState(FockDim(rho.dim()), es.eigenvectors().col(k))});
        }
    }
    return comps;
}

} // namespace cdosim
