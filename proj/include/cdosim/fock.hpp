#ifndef CDOSIM_FOCK_HPP
#define CDOSIM_FOCK_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cdosim/errors.hpp"

namespace cdosim {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kTailMassGuard = 1e-8;

// Number of retained Fock levels |0>, ..., |dim-1> of a truncated mode.
class FockDim {
public:
    explicit FockDim(int dim);
    int value() const { return dim_; }

    friend bool operator==(FockDim a, FockDim b) { return a.dim_ == b.dim_; }
    friend bool operator!=(FockDim a, FockDim b) { return a.dim_ != b.dim_; }

private:
    int dim_;
};

// Pure state of a single truncated mode. Amplitudes are raw; no operation
// renormalizes implicitly, so unitarity defects stay visible downstream.
class ModeState {
public:
    explicit ModeState(FockDim d);
    ModeState(FockDim d, VectorXcd amplitudes);

    int dim() const { return static_cast<int>(amps_.size()); }
    const VectorXcd& amplitudes() const { return amps_; }
    Complex amplitude(int n) const;

    double squared_norm() const { return amps_.squaredNorm(); }
    double norm() const { return amps_.norm(); }
    ModeState normalized() const;

    // Probability carried by the top decile of Fock levels. A state is
    // "physical" for the truncation when this stays below the guard.
    double tail_mass() const;
    bool is_physical(double guard = kTailMassGuard) const;

private:
    VectorXcd amps_;
};

// Product/entangled state of a mode pair, amplitudes indexed by
// (n_a, n_b) -> n_a * dim_b + n_b.
class TwoModeState {
public:
    TwoModeState(FockDim da, FockDim db);
    TwoModeState(FockDim da, FockDim db, VectorXcd amplitudes);

    int dim_a() const { return dim_a_; }
    int dim_b() const { return dim_b_; }
    const VectorXcd& amplitudes() const { return amps_; }
    Complex amplitude(int na, int nb) const;

    double squared_norm() const { return amps_.squaredNorm(); }
    double norm() const { return amps_.norm(); }

    // View of the amplitudes as a dim_a x dim_b matrix M(n_a, n_b).
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
    as_matrix() const;

    static TwoModeState from_matrix(const MatrixXcd& m);

private:
    int dim_a_;
    int dim_b_;
    VectorXcd amps_;
};

// Mode a tensored with a dual-rail photon shared between modes b and c.
// Only the two single-photon basis states |0>_b|1>_c and |1>_b|0>_c carry
// amplitude, so the state is stored as one mode-a amplitude block per rail.
class ThreeSystemState {
public:
    explicit ThreeSystemState(FockDim da);
    ThreeSystemState(VectorXcd rail01, VectorXcd rail10);

    int dim_a() const { return static_cast<int>(rail01_.size()); }

    // Block multiplying |0>_b|1>_c.
    const VectorXcd& rail01() const { return rail01_; }
    // Block multiplying |1>_b|0>_c.
    const VectorXcd& rail10() const { return rail10_; }

    double squared_norm() const {
        return rail01_.squaredNorm() + rail10_.squaredNorm();
    }
    double norm() const;

private:
    VectorXcd rail01_;
    VectorXcd rail10_;
};

// Density matrix of one truncated mode.
class DensityMatrix {
public:
    explicit DensityMatrix(MatrixXcd elements);

    int dim() const { return static_cast<int>(rho_.rows()); }
    const MatrixXcd& elements() const { return rho_; }

    double hermiticity_defect() const;
    Complex trace() const { return rho_.trace(); }
    double min_eigenvalue() const;

    // Hermitian within 1e-10, unit trace within 1e-10, eigenvalues >= -1e-8.
    void validate() const;

private:
    MatrixXcd rho_;
};

struct PureComponent {
    double weight;
    ModeState state;
};

// ---- construction -------------------------------------------------------

ModeState fock_state(int n, FockDim d);

struct CoherentStateResult {
    ModeState state;
    // Probability mass of the exact coherent state beyond the cutoff.
    double truncation_loss;
};

// Coherent amplitudes alpha^n e^{-|alpha|^2/2}/sqrt(n!), renormalized on the
// truncated space. Guard: |alpha|^2 <= dim/4.
CoherentStateResult coherent_state(Complex alpha, FockDim d);

// ---- scalar operations --------------------------------------------------

// <x|y>, conjugate-linear in the first argument.
Complex inner_product(const ModeState& x, const ModeState& y);

// |<x|y>|^2 for normalized inputs.
double fidelity(const ModeState& x, const ModeState& y);

// <psi|rho|psi> for a normalized pure reference.
double fidelity(const DensityMatrix& rho, const ModeState& psi);

// ---- composition and reduction ------------------------------------------

TwoModeState tensor(const ModeState& a, const ModeState& b);

// Unnormalized mode-a amplitude block <n_b|s> (projection of mode b onto a
// basis level).
ModeState mode_a_block(const TwoModeState& s, int nb);
ModeState mode_b_block(const TwoModeState& s, int na);

DensityMatrix partial_trace_b(const TwoModeState& s);
DensityMatrix partial_trace_a(const TwoModeState& s);

// ---- density-matrix operations ------------------------------------------

DensityMatrix density_from_pure(const ModeState& s);

// Spectral decomposition into pure components with weight > cutoff.
std::vector<PureComponent> pure_decomposition(const DensityMatrix& rho,
                                              double weight_cutoff = 1e-14);

} // namespace cdosim

#endif
