#include "cdosim/mzi.hpp"

#include <cmath>
#include <string>

namespace cdosim {

namespace {

ThreeSystemState apply_cdo_stage(const MziParams& p, const ThreeSystemState& s,
                                 const DisplacementGenerator* dgen) {
    if (p.mode == CdoMode::Ideal) {
        // rail01 carries |0>_b (no displacement); rail10 carries |1>_b.
        VectorXcd rail10 =
            dgen ? dgen->apply(p.cdo.beta(), s.rail10())
                 : DisplacementGenerator(FockDim(s.dim_a()))
                       .apply(p.cdo.beta(), s.rail10());
        rail10 *= std::polar(1.0, -p.cdo.kerr_phase());
        return ThreeSystemState(s.rail01(), std::move(rail10));
    }
    // Exact gate: evolve the (a, b-rail) pair as a genuine two-mode system.
    MatrixXcd m(s.dim_a(), 2);
    m.col(0) = s.rail01();
    m.col(1) = s.rail10();
    const TwoModeState evolved =
        exact_cdo_conjugated(p.cdo, TwoModeState::from_matrix(m));
    const auto em = evolved.as_matrix();
    return ThreeSystemState(em.col(0), em.col(1));
}

ThreeSystemState run_mzi_impl(const MziParams& p, const ModeState& psi,
                              const DisplacementGenerator* dgen) {
    ThreeSystemState st = build_mzi_input(psi);
    st = bs5050_dualrail(st);
    st = apply_dual_rail(phase_shifter(p.eta), st);
    st = apply_cdo_stage(p, st, dgen);
    return bs5050_dualrail(st);
}

} // namespace

ThreeSystemState build_mzi_input(const ModeState& psi) {
    if (std::abs(psi.squared_norm() - 1.0) > kNormTolerance) {
        throw NormalizationError("build_mzi_input: psi must be normalized");
    }
    return ThreeSystemState(psi.amplitudes(),
                            VectorXcd::Zero(psi.dim()));
}

ThreeSystemState run_mzi(const MziParams& p, const ModeState& psi) {
    return run_mzi_impl(p, psi, nullptr);
}

ThreeSystemState run_mzi(const MziParams& p, const ModeState& psi,
                         const DisplacementGenerator& dgen) {
    if (dgen.dim() != psi.dim()) {
        throw DimensionMismatchError("run_mzi: generator dim does not match psi");
    }
    return run_mzi_impl(p, psi, &dgen);
}

DetectionProbabilities detection_probabilities(const MziParams& p,
                                               const DensityMatrix& rho) {
    rho.validate();
    const DisplacementGenerator dgen{FockDim(rho.dim())};
    DetectionProbabilities probs;
    for (const auto& [weight, state] : pure_decomposition(rho)) {
        const ThreeSystemState out = run_mzi(p, state.normalized(), dgen);
        probs.p01 += weight * out.rail01().squaredNorm();
        probs.p10 += weight * out.rail10().squaredNorm();
    }
    return probs;
}

DetectionOutcome postselect(const ThreeSystemState& s, DetectorPattern which) {
    const VectorXcd& block =
        (which == DetectorPattern::D2Fires) ? s.rail01() : s.rail10();
    const double total = s.squared_norm();
    if (total < 1e-15) {
        throw PostselectionError("postselect: zero-norm state");
    }
    const double probability = block.squaredNorm() / total;
    if (probability < 1e-12) {
        throw PostselectionError(
            "postselect: branch probability " + std::to_string(probability) +
            " below 1e-12, conditional state undefined");
    }
    return DetectionOutcome{
        which, probability,
        ModeState(FockDim(s.dim_a()), block / block.norm())};
}

DetectionOutcome prepare_superposition(const ModeState& psi, Complex beta,
                                       Sign sign, const MziParams& p) {
    if (std::abs(beta - p.cdo.beta()) > 1e-12) {
        throw std::invalid_argument(
            "prepare_superposition: beta inconsistent with -i theta alpha");
    }
    const double phase = p.cdo.kerr_phase();
    if (std::abs(p.eta + phase) > 1e-9 * std::max(1.0, std::abs(phase))) {
        throw std::invalid_argument(
            "prepare_superposition: requires eta = -theta |alpha|^2");
    }
    const ThreeSystemState out = run_mzi(p, psi);
    return postselect(out, sign == Sign::Plus ? DetectorPattern::D1Fires
                                              : DetectorPattern::D2Fires);
}

} // namespace cdosim
