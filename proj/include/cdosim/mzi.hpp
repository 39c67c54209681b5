#ifndef CDOSIM_MZI_HPP
#define CDOSIM_MZI_HPP

#include "cdosim/cdo.hpp"

namespace cdosim {

enum class CdoMode { Ideal, Exact };

// Interferometer settings. The working phase is xi = eta + theta |alpha|^2;
// choosing eta = -theta |alpha|^2 makes xi vanish and the post-selected
// branches become |psi> +- D(beta)|psi>.
struct MziParams {
    double eta = 0.0;
    CdoParams cdo;
    CdoMode mode = CdoMode::Ideal;

    double xi() const { return eta + cdo.kerr_phase(); }
};

enum class DetectorPattern {
    D2Fires, // output |0>_b|1>_c, the "-" branch
    D1Fires, // output |1>_b|0>_c, the "+" branch
};

struct DetectionOutcome {
    DetectorPattern which = DetectorPattern::D1Fires;
    double probability = 0.0;
    ModeState conditional_state;
};

struct DetectionProbabilities {
    double p01 = 0.0; // P(|0>_b|1>_c)
    double p10 = 0.0; // P(|1>_b|0>_c)
};

// |psi>_a (x) |0>_b|1>_c. Input must be normalized.
ThreeSystemState build_mzi_input(const ModeState& psi);

// Full pipeline: 50/50 splitter, phase shifter in the c arm, conditional
// displacement on (a, b-rail), second 50/50 splitter.
ThreeSystemState run_mzi(const MziParams& p, const ModeState& psi);
ThreeSystemState run_mzi(const MziParams& p, const ModeState& psi,
                         const DisplacementGenerator& dgen);

// Detector-pattern probabilities obtained by running the interferometer on
// the spectral components of rho (never by the closed trace formula, which
// serves as the independent oracle).
DetectionProbabilities detection_probabilities(const MziParams& p,
                                               const DensityMatrix& rho);

// Projects the dual-rail register onto the chosen pattern and normalizes the
// surviving mode-a block. Branch probabilities below 1e-12 cannot be
// normalized and raise PostselectionError.
DetectionOutcome postselect(const ThreeSystemState& s, DetectorPattern which);

enum class Sign { Plus, Minus };

// run_mzi + postselect for the |psi> +- D(beta)|psi> branch. Requires
// p.eta == -theta |alpha|^2 and beta consistent with p.cdo.
DetectionOutcome prepare_superposition(const ModeState& psi, Complex beta,
                                       Sign sign, const MziParams& p);

} // namespace cdosim

#endif
