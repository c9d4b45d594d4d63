#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dicke/kernels.hpp"
#include "dicke/protocols.hpp"

using namespace dicke;

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

std::mt19937_64 g_rng(20240811);

double random_in(double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(g_rng);
}

PolarizationQubit random_qubit() {
    cplx a{random_in(-1, 1), random_in(-1, 1)};
    cplx b{random_in(-1, 1), random_in(-1, 1)};
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    return {a / norm, b / norm};
}

// overlap between two state vectors, normalized on both sides
double normalized_overlap(std::span<const cplx> a, std::span<const cplx> b) {
    const double na = kernels::squared_norm(a);
    const double nb = kernels::squared_norm(b);
    return std::abs(kernels::inner_product(a, b)) / std::sqrt(na * nb);
}

}  // namespace

TEST_CASE("cat: orthogonal branches and one bit of entanglement at the special point") {
    const PolarizationQubit qubit{cplx{kInvSqrt2, 0.0}, cplx{0.0, kInvSqrt2}};
    const CatResult cat =
        run_mesoscopic_cat(SpinJ::from_atom_count(4), pi / 2.0, 0.7, qubit, pi / 2.0, 1.0);
    CHECK(std::abs(cat.branch_overlap) <= 1e-14);
    CHECK(cat.entropy_bits == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(cat.prob_x + cat.prob_y == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cat.closed_form_error <= 1e-12);
}

TEST_CASE("cat: zero interaction time leaves a product state") {
    const PolarizationQubit qubit{cplx{0.6, 0.0}, cplx{0.8, 0.0}};
    const CatResult cat =
        run_mesoscopic_cat(SpinJ::from_value(2.5), 1.1, 0.3, qubit, 0.9, 0.0);
    CHECK(cat.prob_x == doctest::Approx(std::norm(cplx{0.6, 0.0} + cplx{0.8, 0.0}) / 2.0)
                            .epsilon(1e-12));
    CHECK(cat.entropy_bits <= 1e-9);
    CHECK(std::abs(cat.branch_overlap - cplx{1.0, 0.0}) <= 1e-14);
}

TEST_CASE("cat: evolved state equals the independently assembled closed form") {
    const SpinJ j = SpinJ::from_value(1.0);
    const double theta = pi / 3.0, phi = 0.2, rotation = 0.9;
    const PolarizationQubit qubit{cplx{0.6, 0.0}, cplx{0.8, 0.0}};
    const CatResult cat = run_mesoscopic_cat(j, theta, phi, qubit, rotation, 1.0);

    const DickeState plus = coherent_spin_state(j, {theta, phi + rotation});
    const DickeState minus = coherent_spin_state(j, {theta, phi - rotation});
    const cplx phase = std::polar(1.0, rotation * j.value());
    for (int im = 0; im < j.dim(); ++im) {
        CHECK(std::abs(cat.joint.at(im, 1, 0) - qubit.alpha * phase * plus.amp[im]) <= 1e-12);
        CHECK(std::abs(cat.joint.at(im, 0, 1) -
                       qubit.beta * std::conj(phase) * minus.amp[im]) <= 1e-12);
    }

    // post-detection atomic state against the same assembly
    REQUIRE(cat.atoms_after_x.has_value());
    std::vector<cplx> assembled(j.dim());
    for (int im = 0; im < j.dim(); ++im)
        assembled[im] = qubit.alpha * phase * plus.amp[im] +
                        qubit.beta * std::conj(phase) * minus.amp[im];
    CHECK(normalized_overlap(assembled, cat.atoms_after_x->amp) >= 1.0 - 1e-12);
}

TEST_CASE("cat: zero-probability outcome is flagged") {
    const PolarizationQubit qubit{cplx{kInvSqrt2, 0.0}, cplx{-kInvSqrt2, 0.0}};
    const CatResult cat =
        run_mesoscopic_cat(SpinJ::from_value(1.0), 0.4, 0.0, qubit, 0.5, 0.0);
    CHECK(cat.prob_x <= 1e-14);
    CHECK_FALSE(cat.atoms_after_x.has_value());
    CHECK(cat.atoms_after_y.has_value());
}

TEST_CASE("ghz: the special point gives orthogonal per-atom branches and unit fidelity") {
    const PolarizationQubit qubit{cplx{kInvSqrt2, 0.0}, cplx{kInvSqrt2, 0.0}};
    const GhzResult ghz = run_ghz(3, pi / 2.0, 0.0, qubit, pi / 2.0, 1.0);
    CHECK(std::abs(ghz.per_atom_branch_overlap) <= 1e-14);
    CHECK(std::abs(ghz.branch_overlap) <= 1e-14);
    REQUIRE(ghz.ghz_fidelity.has_value());
    CHECK(*ghz.ghz_fidelity >= 1.0 - 1e-10);

    // weights with different phases still hit the balanced reference
    const PolarizationQubit phased{cplx{kInvSqrt2, 0.0}, cplx{0.0, -kInvSqrt2}};
    const GhzResult ghz2 = run_ghz(5, pi / 2.0, 0.4, phased, pi / 2.0, 1.0);
    REQUIRE(ghz2.ghz_fidelity.has_value());
    CHECK(*ghz2.ghz_fidelity >= 1.0 - 1e-10);
}

TEST_CASE("ghz: two-atom expansion symmetrizes onto the cat's post-detection state") {
    const PolarizationQubit qubit{cplx{kInvSqrt2, 0.0}, cplx{kInvSqrt2, 0.0}};
    const double theta = pi / 2.0, phi = 0.0, rotation = pi / 2.0;
    const GhzResult ghz = run_ghz(2, theta, phi, qubit, rotation, 1.0);
    const CatResult cat =
        run_mesoscopic_cat(SpinJ::from_atom_count(2), theta, phi, qubit, rotation, 1.0);

    const DickeState projected = project_to_dicke(2, ghz.state);
    REQUIRE(cat.atoms_after_x.has_value());
    for (int im = 0; im < projected.dim(); ++im)
        CHECK(std::abs(projected.amp[im] - cat.atoms_after_x->amp[im]) <= 1e-12);
}

TEST_CASE("ghz: a single branch scores the balanced-reference limit 1/2") {
    const PolarizationQubit qubit{cplx{1.0, 0.0}, cplx{0.0, 0.0}};
    const GhzResult ghz = run_ghz(3, pi / 2.0, 0.0, qubit, pi / 2.0, 1.0);
    REQUIRE(ghz.ghz_fidelity.has_value());
    CHECK(*ghz.ghz_fidelity == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("ghz: N-atom branch overlap is the per-atom overlap to the Nth power") {
    for (int draw = 0; draw < 10; ++draw) {
        const int n_atoms = 2 + static_cast<int>(g_rng() % 6);
        const double theta = random_in(0.1, pi - 0.1);
        const double rotation = random_in(0.0, pi);
        const GhzResult ghz =
            run_ghz(n_atoms, theta, 0.3, random_qubit(), rotation, 1.0);
        cplx expected{1.0, 0.0};
        for (int k = 0; k < n_atoms; ++k)
            expected *= ghz.per_atom_branch_overlap;
        CHECK(std::abs(ghz.branch_overlap - expected) <= 1e-12);
    }
}

TEST_CASE("ghz: parallel branches are reported as degenerate") {
    const GhzResult ghz = run_ghz(3, 0.8, 0.1, random_qubit(), 0.7, 0.0);  // t = 0
    CHECK(ghz.branches_degenerate);
    CHECK_FALSE(ghz.ghz_fidelity.has_value());
}

TEST_CASE("trapping: even samples return the field unchanged, odd flip the relative sign") {
    const PolarizationQubit qubit{cplx{0.6, 0.0}, cplx{0.0, 0.8}};
    const TrappingResult even = run_trapping(2, 1.234, 0.7, qubit, 0.8);
    CHECK(even.fidelity_initial >= 1.0 - 1e-12);
    CHECK(even.entropy_bits <= 1e-9);
    CHECK(even.field_purity == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(even.even_case);

    const TrappingResult odd = run_trapping(3, 1.234, 0.7, qubit, 0.8);
    CHECK(odd.fidelity_flipped >= 1.0 - 1e-12);
    CHECK_FALSE(odd.even_case);

    for (int n_atoms = 1; n_atoms <= 8; ++n_atoms) {
        const TrappingResult result =
            run_trapping(n_atoms, random_in(0.1, pi - 0.1), random_in(-1, 1), random_qubit(),
                         1.3);
        if (n_atoms % 2 == 0) {
            CHECK(result.fidelity_initial >= 1.0 - 1e-12);
            CHECK(result.entropy_bits <= 1e-9);
        } else {
            CHECK(result.fidelity_flipped >= 1.0 - 1e-12);
        }
    }
}

TEST_CASE("half the trapping phase leaves the field mixed") {
    const PolarizationQubit qubit{cplx{kInvSqrt2, 0.0}, cplx{kInvSqrt2, 0.0}};
    const JointState joint = evolve_effective(
        tensor_product(coherent_spin_state(SpinJ::from_atom_count(2), {pi / 2.0, 0.0}),
                       qubit_to_field(qubit, 1)),
        pi / 2.0, 1.0);
    CHECK(purity(partial_trace(joint, Subsystem::field)) ==
          doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("holography: an unrotated sample stores and retrieves with certainty") {
    const PolarizationQubit qubit{cplx{0.6, 0.0}, cplx{0.0, 0.8}};
    const HologramResult holo =
        run_holography(SpinJ::from_value(2.0), 0.0, 0.0, qubit, 0.7, 1.3);
    CHECK(holo.success_probability == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(holo.retrieved.has_value());
    CHECK(holo.corrected_fidelity >= 1.0 - 1e-12);
}

TEST_CASE("holography: equatorial J=1 sample succeeds a quarter of the time") {
    const PolarizationQubit qubit{cplx{kInvSqrt2, 0.0}, cplx{kInvSqrt2, 0.0}};
    const HologramResult holo =
        run_holography(SpinJ::from_value(1.0), pi / 2.0, 0.4, qubit, 0.9, 1.0);
    CHECK(holo.success_probability == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(holo.corrected_fidelity >= 1.0 - 1e-12);
}

TEST_CASE("holography: retrieved amplitudes carry exactly the stated phases") {
    const SpinJ j = SpinJ::from_value(1.5);
    const double rotation = 0.7;
    const PolarizationQubit qubit{cplx{0.6, 0.0}, cplx{0.0, 0.8}};
    const HologramResult holo = run_holography(j, 1.0, 0.25, qubit, rotation, 1.0);
    REQUIRE(holo.retrieved.has_value());
    const cplx phase = std::polar(1.0, rotation * j.value());
    CHECK(std::abs(holo.retrieved->alpha - qubit.alpha * phase) <= 1e-12);
    CHECK(std::abs(holo.retrieved->beta - qubit.beta * std::conj(phase)) <= 1e-12);
    CHECK(holo.phase_correction == doctest::Approx(2.0 * rotation * j.value()));
}

TEST_CASE("holography: success probability equals cos(theta/2)^(4J) on random draws") {
    for (int draw = 0; draw < 50; ++draw) {
        const int two_j = 1 + static_cast<int>(g_rng() % 20);  // J <= 10
        const SpinJ j = SpinJ::from_twice(two_j);
        const double theta = random_in(0.0, pi - 0.2);
        const HologramResult holo = run_holography(j, theta, random_in(-2, 2), random_qubit(),
                                                   random_in(0.1, 2.0), random_in(0.1, 2.0));
        const double expected = std::pow(std::cos(0.5 * theta), 2.0 * two_j);
        CHECK(std::abs(holo.success_probability - expected) <= 1e-12);
        if (holo.retrieved)
            CHECK(holo.corrected_fidelity >= 1.0 - 1e-12);
        double total = 0.0;
        for (const double p : holo.m_population)
            total += p;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("holography: a fully rotated sample cannot be read out") {
    const PolarizationQubit qubit{cplx{0.6, 0.0}, cplx{0.8, 0.0}};
    const HologramResult holo =
        run_holography(SpinJ::from_value(1.0), pi, 0.0, qubit, 0.5, 1.0);
    CHECK(holo.success_probability <= 1e-14);
    CHECK_FALSE(holo.retrieved.has_value());
}

TEST_CASE("field cat: zero time leaves the coherent field in both outcomes") {
    const cplx alpha{1.0, 0.3}, beta{0.7, -0.2};
    const FieldState original = two_mode_coherent(alpha, beta, 15).state;
    for (const double angle : {0.3, pi / 4.0, 1.2}) {
        const FieldCatResult cat =
            run_field_cat(alpha, beta, 0.9, 0.4, 0.7, 0.0, 15, angle);
        REQUIRE(cat.outcome_aligned.state.has_value());
        REQUIRE(cat.outcome_orthogonal.state.has_value());
        CHECK(normalized_overlap(cat.outcome_aligned.state->amp, original.amp) >=
              1.0 - 1e-12);
        CHECK(normalized_overlap(cat.outcome_orthogonal.state->amp, original.amp) >=
              1.0 - 1e-12);
        CHECK(cat.outcome_aligned.probability + cat.outcome_orthogonal.probability ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("field cat: evolved state matches the closed form at two-photon amplitudes") {
    const cplx alpha{std::sqrt(2.0), 0.0};
    const cplx beta = std::polar(std::sqrt(2.0), 0.3);
    const FieldCatResult cat = run_field_cat(alpha, beta, 1.1, 0.5, 0.9, 1.0, 20, pi / 4.0);
    CHECK(cat.deficit_ok);
    CHECK(cat.truncation_deficit < 1e-10);
    CHECK(cat.closed_form_error <= 1e-12);

    // independent assembly of the two dressed branches
    const double rotation = 0.9;
    const cplx spin = std::polar(1.0, 0.5 * rotation);
    const FieldState lower = two_mode_coherent(alpha * spin, beta * std::conj(spin), 20).state;
    const FieldState upper = two_mode_coherent(alpha * std::conj(spin), beta * spin, 20).state;
    JointState assembled{1, 20, {}};
    assembled.amp.resize(assembled.dim());
    for (int f = 0; f < assembled.field_dim(); ++f) {
        assembled.amp[f] = std::cos(0.55) * lower.amp[f];
        assembled.amp[assembled.field_dim() + f] =
            std::polar(std::sin(0.55), -0.5) * upper.amp[f];
    }
    CHECK(normalized_overlap(assembled.amp, cat.joint.amp) >= 1.0 - 1e-10);
}

TEST_CASE("field cat: the balanced basis at full phase yields the even superposition") {
    const cplx alpha{1.2, 0.0}, beta{0.9, 0.0};
    const int n_max = 22;
    const FieldCatResult cat =
        run_field_cat(alpha, beta, pi / 2.0, 0.0, pi, 1.0, n_max, pi / 4.0);
    REQUIRE(cat.outcome_aligned.state.has_value());

    // direct superposition of the two rotated coherent states
    const cplx quarter = std::polar(1.0, pi / 2.0);
    const FieldState first =
        two_mode_coherent(alpha * quarter, beta * std::conj(quarter), n_max).state;
    const FieldState second =
        two_mode_coherent(alpha * std::conj(quarter), beta * quarter, n_max).state;
    std::vector<cplx> even_cat(first.amp.size());
    for (std::size_t i = 0; i < even_cat.size(); ++i)
        even_cat[i] = first.amp[i] + second.amp[i];
    CHECK(normalized_overlap(even_cat, cat.outcome_aligned.state->amp) >= 1.0 - 1e-10);
}

TEST_CASE("field cat: cutoff losses surface in the result") {
    const FieldCatResult cat =
        run_field_cat(cplx{2.5, 0.0}, cplx{2.5, 0.0}, 0.9, 0.0, 0.5, 1.0, 4, pi / 4.0);
    CHECK_FALSE(cat.deficit_ok);
    CHECK(cat.truncation_deficit > 1e-10);
}

TEST_CASE("all closed forms hold over fifty random draws") {
    for (int draw = 0; draw < 50; ++draw) {
        const int two_j = 1 + static_cast<int>(g_rng() % 20);  // J <= 10
        const SpinJ j = SpinJ::from_twice(two_j);
        const double theta = random_in(0.05, pi - 0.05);
        const double phi = random_in(-pi, pi);
        const double rotation = random_in(0.0, pi);
        const PolarizationQubit qubit = random_qubit();

        const CatResult cat = run_mesoscopic_cat(j, theta, phi, qubit, rotation, 1.0);
        CHECK(cat.closed_form_error <= 1e-12);
        CHECK(cat.prob_x + cat.prob_y == doctest::Approx(1.0).epsilon(1e-12));

        if (cat.atoms_after_x) {
            // post-detection superposition against its own closed form
            const DickeState plus = coherent_spin_state(j, {theta, phi + rotation});
            const DickeState minus = coherent_spin_state(j, {theta, phi - rotation});
            const cplx phase = std::polar(1.0, rotation * j.value());
            std::vector<cplx> assembled(j.dim());
            for (int im = 0; im < j.dim(); ++im)
                assembled[im] = qubit.alpha * phase * plus.amp[im] +
                                qubit.beta * std::conj(phase) * minus.amp[im];
            CHECK(normalized_overlap(assembled, cat.atoms_after_x->amp) >= 1.0 - 1e-10);
        }

        const HologramResult holo = run_holography(j, theta, phi, qubit, rotation, 1.0);
        CHECK(std::abs(holo.success_probability -
                       std::pow(std::cos(0.5 * theta), 2.0 * two_j)) <= 1e-12);

        const int n_atoms = 2 + static_cast<int>(g_rng() % 9);
        const GhzResult ghz = run_ghz(n_atoms, theta, phi, qubit, rotation, 1.0);
        const double raw_norm = kernels::squared_norm(ghz.state);
        if (!ghz.branches_degenerate)
            CHECK(raw_norm == doctest::Approx(1.0).epsilon(1e-10));

        const FieldCatResult field_cat =
            run_field_cat(cplx{random_in(-1.2, 1.2), random_in(-1.2, 1.2)},
                          cplx{random_in(-1.2, 1.2), random_in(-1.2, 1.2)}, theta, phi,
                          rotation, 1.0, 20, random_in(0.0, pi / 2.0));
        CHECK(field_cat.deficit_ok);
        CHECK(field_cat.closed_form_error <= 1e-10);
    }
}

TEST_CASE("protocol preconditions are enforced") {
    const PolarizationQubit qubit{cplx{1.0, 0.0}, cplx{0.0, 0.0}};
    CHECK_THROWS_AS(run_ghz(1, 0.5, 0.0, qubit, 0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(run_trapping(0, 0.5, 0.0, qubit, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(run_trapping(2, 0.5, 0.0, qubit, 0.0), std::invalid_argument);
}
