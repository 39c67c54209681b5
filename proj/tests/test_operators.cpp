#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "cdosim/operators.hpp"

#include "oracles.hpp"
#include "test_util.hpp"

using namespace cdosim;

TEST_CASE("ladder operators") {
    const FockDim d(8);
    const OperatorMatrix a = annihilation(d);

    CHECK((a.apply(fock_state(1, d)).amplitudes() -
           fock_state(0, d).amplitudes())
              .cwiseAbs()
              .maxCoeff() < 1e-15);
    CHECK(a.apply(fock_state(0, d)).norm() == 0.0);
    CHECK((a.apply(fock_state(4, d)).amplitudes() -
           2.0 * fock_state(3, d).amplitudes())
              .cwiseAbs()
              .maxCoeff() < 1e-15);

    const OperatorMatrix n = number_operator(d);
    CHECK((n.apply(fock_state(3, d)).amplitudes() -
           3.0 * fock_state(3, d).amplitudes())
              .cwiseAbs()
              .maxCoeff() < 1e-15);
    CHECK(n.diagonal_flag());

    // a^dag a = n on the truncated space
    const MatrixXcd nn = creation(d).matrix() * a.matrix();
    CHECK((nn - n.matrix()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("displacement operator") {
    const FockDim d(32);

    SUBCASE("D(0) is the identity") {
        const OperatorMatrix id = displacement(0.0, d);
        CHECK((id.matrix() - MatrixXcd::Identity(32, 32)).cwiseAbs().maxCoeff() ==
              0.0);
    }
    SUBCASE("D(1)|0> is the coherent state") {
        const OperatorMatrix dop = displacement(1.0, d);
        const ModeState out = dop.apply(fock_state(0, d));
        const ModeState ref(d, oracle::coherent_amplitudes(1.0, 32));
        CHECK(fidelity(out.normalized(), ref) >= 1.0 - 1e-8);
    }
    SUBCASE("group inverse") {
        const Complex alpha(0.9, -0.4);
        const MatrixXcd prod =
            displacement(alpha, d).matrix() * displacement(-alpha, d).matrix();
        CHECK((prod - MatrixXcd::Identity(32, 32)).cwiseAbs().maxCoeff() <
              1e-10);
    }
    SUBCASE("unitarity invariant") {
        CHECK(displacement(Complex(1.2, 0.8), d).unitarity_defect() < 1e-10);
        CHECK(displacement(0.0, d).unitary_flag());
    }
    SUBCASE("guard") {
        CHECK_THROWS_AS(displacement(4.0, FockDim(16)), TruncationRiskError);
    }
    SUBCASE("Weyl composition") {
        // compared on input levels well inside the truncation; boundary
        // columns of any truncated displacement are unphysical by definition
        const FockDim big(64);
        std::mt19937_64 rng(41);
        for (int k = 0; k < 5; ++k) {
            const Complex alpha = testutil::random_in_disc(rng, 1.0);
            const Complex beta = testutil::random_in_disc(rng, 1.0);
            const Complex phase =
                std::exp((alpha * std::conj(beta) - std::conj(alpha) * beta) /
                         2.0);
            const MatrixXcd lhs =
                displacement(alpha, big).matrix() * displacement(beta, big).matrix();
            const MatrixXcd rhs =
                phase * displacement(alpha + beta, big).matrix();
            CHECK((lhs - rhs).leftCols(16).cwiseAbs().maxCoeff() < 1e-8);
        }
    }
}

TEST_CASE("DisplacementGenerator matches the dense operator") {
    const FockDim d(24);
    const DisplacementGenerator dgen(d);
    std::mt19937_64 rng(43);
    for (int k = 0; k < 5; ++k) {
        const Complex alpha = testutil::random_in_disc(rng, 1.5);
        const ModeState v = testutil::random_mode_state(rng, 24);
        const VectorXcd fast = dgen.apply(alpha, v.amplitudes());
        const VectorXcd full = dgen.matrix(alpha).matrix() * v.amplitudes();
        CHECK((fast - full).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(fast.norm() - 1.0) < 1e-12);
    }
    CHECK((dgen.apply_adjoint(Complex(0.3, 0.2),
                              dgen.apply(Complex(0.3, 0.2),
                                         fock_state(2, d).amplitudes())) -
           fock_state(2, d).amplitudes())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
}

TEST_CASE("Kerr cross-phase unitary") {
    const FockDim da(5);
    const FockDim db(4);
    const double theta = 0.3;
    const OperatorMatrix uk = kerr_unitary(KerrParams{theta}, da, db);

    CHECK(uk.diagonal_flag());
    CHECK(uk.unitarity_defect() < 1e-12);

    SUBCASE("theta = 0 is the identity") {
        const OperatorMatrix id = kerr_unitary(KerrParams{0.0}, da, db);
        CHECK((id.matrix() - MatrixXcd::Identity(20, 20)).cwiseAbs().maxCoeff() ==
              0.0);
    }
    SUBCASE("eigenvalue entries") {
        const int i11 = 1 * db.value() + 1;
        CHECK(std::abs(uk.matrix()(i11, i11) - std::polar(1.0, -theta)) <
              1e-15);
        const int i23 = 2 * db.value() + 3;
        CHECK(std::abs(uk.matrix()(i23, i23) - std::polar(1.0, -6.0 * theta)) <
              1e-15);
    }
    SUBCASE("commutes with n (x) n") {
        const OperatorMatrix nn =
            tensor_product(number_operator(da), number_operator(db));
        const MatrixXcd comm =
            uk.matrix() * nn.matrix() - nn.matrix() * uk.matrix();
        CHECK(comm.cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(kerr_unitary(KerrParams{4.0}, da, db),
                        std::invalid_argument);
    }
}

TEST_CASE("dual-rail 50/50 splitter") {
    const FockDim d(6);
    std::mt19937_64 rng(47);
    const ModeState psi = testutil::random_mode_state(rng, 6);

    SUBCASE("action on |0>_b|1>_c") {
        const ThreeSystemState in(psi.amplitudes(), VectorXcd::Zero(6));
        const ThreeSystemState out = bs5050_dualrail(in);
        const double s = 1.0 / std::numbers::sqrt2;
        CHECK((out.rail01() - s * psi.amplitudes()).cwiseAbs().maxCoeff() <
              1e-14);
        CHECK((out.rail10() - Complex(0.0, s) * psi.amplitudes())
                  .cwiseAbs()
                  .maxCoeff() < 1e-14);
    }
    SUBCASE("applying twice swaps the rails with phase i") {
        const ThreeSystemState in(psi.amplitudes(),
                                  0.5 * psi.amplitudes().reverse().eval());
        const ThreeSystemState twice = bs5050_dualrail(bs5050_dualrail(in));
        CHECK((twice.rail01() - Complex(0.0, 1.0) * in.rail10())
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
        CHECK((twice.rail10() - Complex(0.0, 1.0) * in.rail01())
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
    }
    SUBCASE("norm preserved") {
        const ThreeSystemState in(psi.amplitudes(), VectorXcd::Zero(6));
        CHECK(std::abs(bs5050_dualrail(in).norm() - in.norm()) < 1e-12);
    }
    CHECK((bs5050_matrix().adjoint() * bs5050_matrix() -
           Eigen::Matrix2cd::Identity())
              .cwiseAbs()
              .maxCoeff() < 1e-15);
}

TEST_CASE("phase shifter") {
    const FockDim d(4);
    std::mt19937_64 rng(53);
    const ModeState psi = testutil::random_mode_state(rng, 4);
    const ThreeSystemState in(psi.amplitudes(), 0.3 * psi.amplitudes());

    SUBCASE("eta = 0 is the identity") {
        const ThreeSystemState out = apply_dual_rail(phase_shifter(0.0), in);
        CHECK((out.rail01() - in.rail01()).cwiseAbs().maxCoeff() == 0.0);
        CHECK((out.rail10() - in.rail10()).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("eta = pi flips the c-arm block") {
        const ThreeSystemState out =
            apply_dual_rail(phase_shifter(std::numbers::pi), in);
        CHECK((out.rail01() + in.rail01()).cwiseAbs().maxCoeff() < 1e-15);
        CHECK((out.rail10() - in.rail10()).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("pure phase: magnitudes unchanged") {
        const ThreeSystemState out = apply_dual_rail(phase_shifter(1.1), in);
        CHECK((out.rail01().cwiseAbs() - in.rail01().cwiseAbs())
                  .cwiseAbs()
                  .maxCoeff() < 1e-15);
    }
}

TEST_CASE("physical beam splitter maps coherent to coherent") {
    const FockDim da(24);
    const FockDim db(24);
    const double theta = 0.35;
    const Complex alpha(0.8, 0.0);
    const Complex gamma(0.0, 0.9);

    const TwoModeState in = tensor(coherent_state(alpha, da).state,
                                   coherent_state(gamma, db).state);
    const TwoModeState out = beam_splitter(theta, in);
    CHECK(std::abs(out.norm() - 1.0) < 1e-12);

    // a <- alpha cos + gamma sin ; b <- gamma cos - alpha sin
    const Complex a_out = alpha * std::cos(theta) + gamma * std::sin(theta);
    const Complex b_out = gamma * std::cos(theta) - alpha * std::sin(theta);
    const TwoModeState ref = tensor(coherent_state(a_out, da).state,
                                    coherent_state(b_out, db).state);
    const Complex overlap = ref.amplitudes().dot(out.amplitudes());
    CHECK(std::norm(overlap) >= 1.0 - 1e-8);
}

TEST_CASE("physical beam splitter conserves total photon number") {
    const FockDim d(6);
    const TwoModeState in = tensor(fock_state(1, d), fock_state(1, d));
    const TwoModeState out = beam_splitter(0.7, in);
    for (int na = 0; na < 6; ++na) {
        for (int nb = 0; nb < 6; ++nb) {
            if (na + nb != 2) {
                CHECK(std::abs(out.amplitude(na, nb)) < 1e-14);
            }
        }
    }
}

TEST_CASE("beam-splitter displacement model") {
    const FockDim da(32);

    SUBCASE("vacuum ancilla, vacuum input: exact identity") {
        const BsDisplacementParams p{0.0, 0.01};
        const auto report =
            bs_displacement_validation(p, fock_state(0, da), da);
        CHECK(report.fidelity >= 1.0 - 1e-10);
    }
    SUBCASE("R = 0.01, gamma = 10 approximates D(0.1) on the vacuum") {
        const BsDisplacementParams p{10.0, 0.01};
        const auto report =
            bs_displacement_validation(p, fock_state(0, da), da);
        CHECK(report.fidelity >= 0.98);
        CHECK(report.alpha == Complex(0.1, 0.0));
        CHECK(report.ancilla_truncation_loss < 1e-10);
    }
    SUBCASE("fidelity improves as R shrinks at fixed gamma") {
        // Fock |1> input: the attenuation defect ~ R^2 <n> is visible,
        // unlike the vacuum case which the splitter maps exactly.
        const ModeState one = fock_state(1, da);
        double previous = 0.0;
        for (double r : {0.04, 0.02, 0.01}) {
            const auto report =
                bs_displacement_validation({4.0, r}, one, da);
            CHECK(report.fidelity > previous);
            previous = report.fidelity;
        }
        CHECK(previous > 0.999);
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(
            bs_displacement_validation({1.0, 0.5}, fock_state(0, da), da),
            std::invalid_argument);
        CHECK_THROWS_AS(
            bs_displacement_validation({10.0, 0.01}, fock_state(0, da), da,
                                       64),
            TruncationRiskError);
    }
}

TEST_CASE("unitary-flag constructors satisfy the defect bound") {
    const FockDim d(20);
    CHECK(identity_operator(d).unitarity_defect() < 1e-12);
    CHECK(parity_operator(d).unitarity_defect() < 1e-12);
    CHECK(displacement(Complex(1.0, 1.0), d).unitarity_defect() < 1e-10);
    CHECK(kerr_unitary(KerrParams{0.7}, d, FockDim(3)).unitarity_defect() <
          1e-10);
    CHECK_FALSE(annihilation(d).unitary_flag());
}
