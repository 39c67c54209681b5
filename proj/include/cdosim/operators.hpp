#ifndef CDOSIM_OPERATORS_HPP
#define CDOSIM_OPERATORS_HPP

#include <complex>

#include <Eigen/Dense>

#include "cdosim/fock.hpp"

namespace cdosim {

// Dense operator on one truncated mode or on a mode pair (row/column index
// n_a * dim_b + n_b). Flags are metadata: unitary_flag asserts
// ||U^H U - I||_max < 1e-10, diagonal_flag is an optimization hint.
class OperatorMatrix {
public:
    static OperatorMatrix single_mode(FockDim d, MatrixXcd m, bool unitary,
                                      bool diagonal = false);
    static OperatorMatrix two_mode(FockDim da, FockDim db, MatrixXcd m,
                                   bool unitary, bool diagonal = false);

    bool is_two_mode() const { return dim_b_ > 0; }
    int dim_a() const { return dim_a_; }
    int dim_b() const { return dim_b_; }
    int total_dim() const { return static_cast<int>(m_.rows()); }

    const MatrixXcd& matrix() const { return m_; }
    bool unitary_flag() const { return unitary_; }
    bool diagonal_flag() const { return diagonal_; }

    // ||U^H U - I||_max, computed on demand.
    double unitarity_defect() const;

    OperatorMatrix adjoint() const;

    ModeState apply(const ModeState& s) const;
    TwoModeState apply(const TwoModeState& s) const;

private:
    OperatorMatrix(int da, int db, MatrixXcd m, bool unitary, bool diagonal);

    int dim_a_;
    int dim_b_; // 0 for single-mode operators
    MatrixXcd m_;
    bool unitary_;
    bool diagonal_;
};

// ---- ladder operators -----------------------------------------------------

OperatorMatrix annihilation(FockDim d);
OperatorMatrix creation(FockDim d);
OperatorMatrix number_operator(FockDim d);
OperatorMatrix parity_operator(FockDim d);
OperatorMatrix identity_operator(FockDim d);

// ---- displacement ---------------------------------------------------------

// Reusable per-dimension factorization of the displacement generator.
// D(alpha) = R(phi) exp(-i|alpha| H1) R(phi)^H with H1 = i(a^dag - a) and
// R(phi) = diag(e^{i phi n}), phi = arg alpha; one eigendecomposition serves
// every alpha at this dimension, and vector applies cost O(dim^2).
class DisplacementGenerator {
public:
    explicit DisplacementGenerator(FockDim d);

    int dim() const { return static_cast<int>(evals_.size()); }

    // Dense D(alpha); exactly unitary up to round-off. Guard |alpha|^2 <= dim/4.
    OperatorMatrix matrix(Complex alpha) const;

    VectorXcd apply(Complex alpha, const VectorXcd& v) const;
    VectorXcd apply_adjoint(Complex alpha, const VectorXcd& v) const;

private:
    Eigen::VectorXd evals_;
    MatrixXcd evecs_;
};

// exp(alpha a^dag - alpha^* a) via the truncated-generator exponential
// (never the closed-form matrix elements, which lose unitarity under
// truncation). Guard |alpha|^2 <= dim/4.
OperatorMatrix displacement(Complex alpha, FockDim d);

// ---- Kerr cross-phase ------------------------------------------------------

// Cross-phase shift per photon pair, theta = K l / v collapsed to one number.
struct KerrParams {
    double theta = 0.0;
};

// Diagonal two-mode unitary with entry exp(-i theta n_a n_b).
OperatorMatrix kerr_unitary(const KerrParams& p, FockDim da, FockDim db);

// ---- tensor algebra --------------------------------------------------------

// Two-mode operator A (x) B with index n_a * dim_b + n_b.
OperatorMatrix tensor_product(const OperatorMatrix& a, const OperatorMatrix& b);

enum class Mode { A, B };

// Linear action on the designated tensor factor, identity on the other.
TwoModeState apply_to_mode(const OperatorMatrix& op, Mode target,
                           const TwoModeState& s);
ThreeSystemState apply_to_mode_a(const OperatorMatrix& op,
                                 const ThreeSystemState& s);

// ---- dual-rail elements ----------------------------------------------------

// 2x2 operators act on the ordered rail basis (|0>_b|1>_c, |1>_b|0>_c).
Eigen::Matrix2cd bs5050_matrix();
Eigen::Matrix2cd phase_shifter(double eta);

ThreeSystemState apply_dual_rail(const Eigen::Matrix2cd& u,
                                 const ThreeSystemState& s);

// Symmetric 50/50 splitter: |0>_b|1>_c -> (|0>_b|1>_c + i|1>_b|0>_c)/sqrt(2)
// and |1>_b|0>_c -> (|1>_b|0>_c + i|0>_b|1>_c)/sqrt(2).
ThreeSystemState bs5050_dualrail(const ThreeSystemState& s);

// ---- density-matrix evolution ----------------------------------------------

DensityMatrix evolve(const DensityMatrix& rho, const OperatorMatrix& u);
Complex expectation(const DensityMatrix& rho, const OperatorMatrix& op);

// ---- physical two-port beam splitter ----------------------------------------

// exp(theta_bs (a^dag b - a b^dag)), applied sector-by-sector in the conserved
// total photon number; coherent inputs map to coherent outputs with the
// reflected amplitude +sin(theta_bs) * (port-b amplitude) appearing in mode a.
TwoModeState beam_splitter(double theta_bs, const TwoModeState& s);

// Finite-gamma displacement model: coherent ancilla on the second port of a
// weakly reflecting splitter. Amplitude reflectance R gives alpha = R gamma.
struct BsDisplacementParams {
    Complex gamma;
    double reflectance = 0.0; // amplitude reflectance, (0, 0.2] for validation

    Complex alpha() const { return reflectance * gamma; }
};

struct BsValidationReport {
    double fidelity = 0.0;       // reduced output vs D(R gamma) |input>
    Complex alpha;               // target displacement R gamma
    double theta_bs = 0.0;       // asin(R)
    int dim_signal = 0;
    int dim_ancilla = 0;
    double ancilla_truncation_loss = 0.0;
};

// Simulates the splitter with |gamma> on port b, traces out the ancilla and
// reports the fidelity of the reduced mode-a state against D(R gamma)|input>.
// d_ancilla == 0 chooses the smallest comfortable ancilla dimension.
BsValidationReport bs_displacement_validation(const BsDisplacementParams& p,
                                              const ModeState& input,
                                              FockDim d_signal,
                                              int d_ancilla = 0);

} // namespace cdosim

#endif
