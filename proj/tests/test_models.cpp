// test_models.cpp — Pais–Uhlenbeck family, coupled masses, single oscillator

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qadj;
using models::PUParams;

namespace {

const ToleranceConfig kTol{};

// The adjoint matrix of ½p_x² + a·x·p_y + ½(ω₁²+ω₂²)x² + ½b·ω₁²ω₂²y², worked out
// by hand from [H, O] for each basis operator (column j holds [H, O_j]).
Matrix pu_matrix_by_hand(const PUParams& p) {
    const double s = p.omega1 * p.omega1 + p.omega2 * p.omega2;
    const double prod = p.omega1 * p.omega1 * p.omega2 * p.omega2;
    Matrix h = Matrix::Zero(4, 4);
    // [H, x]   = −i p_x
    h(2, 0) = -I;
    // [H, y]   = −i a x
    h(0, 1) = -I * p.a;
    // [H, p_x] = i(ω₁²+ω₂²) x + i a p_y
    h(0, 2) = I * s;
    h(3, 2) = I * p.a;
    // [H, p_y] = i b ω₁²ω₂² y
    h(1, 3) = I * p.b * prod;
    return h;
}

}  // namespace

TEST_CASE("PU general gamma and adjoint matrix", "[models]") {
    const PUParams p{{0.4, -0.3}, {1.5, 0.2}, 1.7, 0.8};
    const auto q = models::pais_uhlenbeck_general(p);
    CHECK(q.basis().labels() == std::vector<std::string>{"x", "y", "px", "py"});
    CHECK(q.gamma()(0, 0) == complex(0.5 * (1.7 * 1.7 + 0.8 * 0.8), 0.0));
    CHECK(q.gamma()(2, 2) == complex(0.5, 0.0));
    CHECK(q.gamma()(3, 3) == complex{});
    CHECK(q.gamma()(0, 3) + q.gamma()(3, 0) == p.a);
    CHECK(std::abs(q.gamma()(1, 1) - 0.5 * p.b * 1.7 * 1.7 * 0.8 * 0.8) < 1e-15);
    CHECK(q.offset() == complex{});
    CHECK(nearly_equal(adjoint_matrix(q), pu_matrix_by_hand(p), 1e-15));
}

TEST_CASE("PU adjoint matrix equals the hand-derived matrix", "[models][property]") {
    oracle::Generator gen(0xE1);
    for (int trial = 0; trial < 100; ++trial) {
        const PUParams p{gen.cplx(2.0), gen.cplx(2.0), gen.uniform(0.1, 4.0), gen.uniform(0.1, 4.0)};
        const Matrix h = adjoint_matrix(models::pais_uhlenbeck_general(p));
        CHECK(nearly_equal(h, pu_matrix_by_hand(p), 1e-14));
        // row p_y, column p_x (1-based (4,3)) is a·i
        CHECK(std::abs(h(3, 2) - p.a * I) < 1e-14);
    }
}

TEST_CASE("standard and PT presets", "[models]") {
    const auto std_pu = models::pais_uhlenbeck(2.0, 1.0);
    CHECK(std::abs(std_pu.gamma()(1, 1) - complex(-2.0, 0.0)) < 1e-15);
    CHECK(std_pu.gamma()(0, 3) == complex(1.0, 0.0));
    CHECK(models::PUParams::standard(2.0, 1.0).a2b() == complex(-1.0, 0.0));

    const auto pt = models::pais_uhlenbeck_pt(2.0, 1.0);
    CHECK(pt.gamma()(0, 3) == complex(0.0, -1.0));
    CHECK(std::abs(pt.gamma()(1, 1) - complex(2.0, 0.0)) < 1e-15);
    const PUParams ptp = PUParams::pt_variant(2.0, 1.0);
    CHECK(std::abs(ptp.a2b() - complex(-1.0, 0.0)) < 1e-15);
    CHECK((ptp.a * ptp.a).real() < 0.0);
    CHECK(ptp.b.real() > 0.0);
}

TEST_CASE("PU parameter validation", "[models]") {
    CHECK_THROWS_AS(models::pais_uhlenbeck(0.0, 1.0), qadj::invalid_argument);
    CHECK_THROWS_AS(models::pais_uhlenbeck(1.0, -1.0), qadj::invalid_argument);
    CHECK_THROWS_AS(models::xi_frequencies({1.0, -1.0, std::nan(""), 1.0}), qadj::invalid_argument);
    CHECK_THROWS_AS(models::coupled_masses(0.0, 1.0), qadj::invalid_argument);
    CHECK_THROWS_AS(models::single_oscillator(-2.0), qadj::invalid_argument);
}

TEST_CASE("xi frequencies", "[models]") {
    auto [p1, m1] = models::xi_frequencies(PUParams::standard(2.0, 1.0));
    CHECK(std::abs(p1 - 4.0) < 1e-14);
    CHECK(std::abs(m1 - 1.0) < 1e-14);

    auto [p2, m2] = models::xi_frequencies({1.0, {-2.0, 0.0}, 1.0, 1.0});
    CHECK(std::abs(p2 - complex(1.0, 1.0)) < 1e-14);
    CHECK(std::abs(m2 - complex(1.0, -1.0)) < 1e-14);

    auto [p3, m3] = models::xi_frequencies(PUParams::standard(1.3, 1.3));
    CHECK(std::abs(p3 - 1.69) < 1e-12);
    CHECK(p3 == m3);
}

TEST_CASE("reality classes", "[models]") {
    CHECK(models::reality_class(PUParams::standard(2.0, 1.0)) == models::RealityClass::real);
    CHECK(models::reality_lower_bound(PUParams::standard(2.0, 1.0)) == -25.0 / 16.0);
    CHECK(models::reality_class({1.0, {-2.0, 0.0}, 1.0, 1.0}) == models::RealityClass::complex);
    CHECK(models::reality_class(PUParams::standard(1.0, 1.0)) == models::RealityClass::exceptional_boundary);
    CHECK(models::reality_class(PUParams::standard(3.0, 3.0)) == models::RealityClass::exceptional_boundary);
    CHECK(models::reality_class({1.0, {0.5, 0.0}, 2.0, 1.0}) == models::RealityClass::complex);
    CHECK(models::reality_class({1.0, {0.0, 0.0}, 2.0, 1.0}) == models::RealityClass::exceptional_boundary);
    CHECK(models::to_string(models::RealityClass::exceptional_boundary) == "exceptional-boundary");
    CHECK_THROWS_AS(models::reality_class({1.0, {-1.0, 0.5}, 2.0, 1.0}), unsupported_parameter_error);
    // the PT preset has real a²b = −1
    CHECK(models::reality_class(PUParams::pt_variant(2.0, 1.0)) == models::RealityClass::real);
}

TEST_CASE("closed-form frequencies agree with the spectrum", "[models][property]") {
    oracle::Generator gen(0xE2);
    for (int trial = 0; trial < 100; ++trial) {
        // a²b real: pick a real or imaginary a and scale b accordingly
        const double target = gen.uniform(-3.0, 1.0);
        const bool imaginary = trial % 2 == 1;
        const complex a = imaginary ? complex(0.0, gen.uniform(0.3, 2.0)) : complex(gen.uniform(0.3, 2.0), 0.0);
        const complex b = target / (a * a);
        const PUParams p{a, b, gen.uniform(0.2, 3.0), gen.uniform(0.2, 3.0)};
        const auto s = natural_frequencies(models::pais_uhlenbeck_general(p));
        const auto [xp, xm] = models::xi_frequencies(p);
        std::vector<complex> squares;
        for (complex l : s.lambdas) squares.push_back(l * l);
        const double scale = std::max(1.0, std::abs(xp) + std::abs(xm));
        const double tol = s.classification == SpectrumClass::degenerate ? 1e-6 * scale : kTol.coalesce_tol * scale;
        CHECK(oracle::multiset_distance(squares, {xp, xp, xm, xm}) <= tol);
    }
}

TEST_CASE("reality classifier agrees with the spectrum on a grid", "[models][property]") {
    // ω₁ = 1, ω₂/ω₁ ∈ [0.3, 2.2], a²b ∈ [−3, 0.8]; grid values are offset so
    // none lands on a boundary.
    int real = 0;
    int complex_count = 0;
    for (int i = 0; i < 20; ++i) {
        const double a2b = -3.0 + 3.8 * (i + 0.5) / 20.0;
        for (int j = 0; j < 20; ++j) {
            const double ratio = 0.3 + 1.9 * (j + 0.37) / 20.0;
            const PUParams p{1.0, {a2b, 0.0}, 1.0, ratio};
            const auto rc = models::reality_class(p);
            const auto s = natural_frequencies(models::pais_uhlenbeck_general(p));
            if (rc == models::RealityClass::real) {
                CHECK(s.classification == SpectrumClass::all_real);
                ++real;
            } else if (rc == models::RealityClass::complex) {
                CHECK(s.classification == SpectrumClass::complex_pairs);
                ++complex_count;
            } else {
                CHECK(s.classification == SpectrumClass::degenerate);
            }
        }
    }
    CHECK(real > 50);
    CHECK(complex_count > 50);
}

TEST_CASE("sigma formulas and commutator breaking", "[models][property]") {
    const std::vector<std::pair<double, double>> points{{2.0, 1.0}, {3.0, 0.5}, {1.5, 1.2}, {0.9, 0.4}, {5.0, 4.9}};
    for (const auto& [w1, w2] : points) {
        const PUParams p = PUParams::standard(w1, w2);
        const auto ref = models::pu_reference_ladders(p);
        const auto d = ladder_operators(models::pais_uhlenbeck_general(p));
        std::array<LinearForm, 4> z{ref};
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(proportionality_residual(d.ladders[j].form.coeffs(), ref[j].coeffs()) < 1e-10);
            z[j] = rescale_to_reference(d.ladders[j].form, ref[j].coeffs());
        }
        const double s1 = 2.0 * (w1 * w1 - w2 * w2) / w1;
        const double s2 = 2.0 * (w2 * w2 - w1 * w1) / w2;
        CHECK(std::abs(commute_linear(z[0], z[3]) - s1) < 1e-10 * (1.0 + std::abs(s1)));
        CHECK(std::abs(commute_linear(z[1], z[2]) - s2) < 1e-10 * (1.0 + std::abs(s2)));
        // the reference ladders themselves
        CHECK(std::abs(commute_linear(ref[0], ref[3]) - s1) < 1e-12 * (1.0 + std::abs(s1)));
        CHECK(std::abs(commute_linear(ref[1], ref[2]) - s2) < 1e-12 * (1.0 + std::abs(s2)));
    }
    // σ → 0 as ω₂ → ω₁
    double prev = std::numeric_limits<double>::infinity();
    for (double gap : {1e-1, 1e-2, 1e-3, 1e-4}) {
        const auto ref = models::pu_reference_ladders(PUParams::standard(1.0 + gap, 1.0));
        const double s = std::abs(commute_linear(ref[0], ref[3]));
        CHECK(s < prev);
        prev = s;
    }
    CHECK(prev < 1e-3);
    const auto ep = models::pu_reference_ladders(PUParams::standard(1.0, 1.0));
    CHECK(std::abs(commute_linear(ep[0], ep[3])) < 1e-14);
    CHECK(std::abs(commute_linear(ep[1], ep[2])) < 1e-14);
}

TEST_CASE("PT variant antiunitary symmetries", "[models][property]") {
    oracle::Generator gen(0xE3);
    const auto cs = coordinate_reflection_signs(2);
    const auto ms = momentum_reflection_signs(2);
    for (int trial = 0; trial < 50; ++trial) {
        const auto q = models::pais_uhlenbeck_pt(gen.uniform(0.1, 4.0), gen.uniform(0.1, 4.0));
        CHECK(antiunitary_invariant(q, cs));
        CHECK(antiunitary_invariant(q, ms));
    }
    CHECK_FALSE(antiunitary_invariant(models::pais_uhlenbeck(2.0, 1.0), cs));
    CHECK(is_pseudo_hermitian(models::pais_uhlenbeck(2.0, 1.0)));
    CHECK_FALSE(is_pseudo_hermitian(models::pais_uhlenbeck_pt(2.0, 1.0)));
}

TEST_CASE("coupled masses", "[models]") {
    const auto q = models::coupled_masses(2.0, 1.0);
    CHECK(q.basis().labels() == std::vector<std::string>{"x1", "x2", "p1", "p2"});
    const auto s = natural_frequencies(q);
    CHECK(oracle::multiset_distance(s.lambdas, {-2.0, -1.0, 1.0, 2.0}) < 1e-12);
    CHECK(s.classification == SpectrumClass::all_real);

    const double w = 1.3;
    const auto eq = models::coupled_masses(w, w);
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = expected(1, 1) = 0.5 * w * w;
    expected(2, 2) = expected(3, 3) = 0.5;
    CHECK(nearly_equal(eq.gamma(), expected, 1e-15));
}

TEST_CASE("normal-mode transform separates the coupled masses", "[models]") {
    const double w1 = 2.0;
    const double w2 = 1.0;
    const auto q = models::coupled_masses(w1, w2);
    RealMatrix r(2, 2);
    r << 1.0, -1.0, 1.0, 1.0;
    r /= std::sqrt(2.0);
    const auto t = models::normal_mode_transform(q, r);
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = 0.5 * w1 * w1;
    expected(1, 1) = 0.5 * w2 * w2;
    expected(2, 2) = expected(3, 3) = 0.5;
    CHECK(nearly_equal(t.gamma(), expected, 1e-14));

    const auto s0 = natural_frequencies(q);
    const auto s1 = natural_frequencies(t);
    CHECK(oracle::multiset_distance(s0.lambdas, s1.lambdas) <= kTol.coalesce_tol * s0.spectral_radius());

    const auto same = models::normal_mode_transform(q, RealMatrix::Identity(2, 2));
    CHECK(same.gamma() == q.gamma());
    CHECK(same.offset() == q.offset());

    RealMatrix bad(2, 2);
    bad << 1.0, 0.1, 0.0, 1.0;
    CHECK_THROWS_AS(models::normal_mode_transform(q, bad), qadj::invalid_argument);
    CHECK_THROWS_AS(models::normal_mode_transform(q, RealMatrix::Identity(3, 3)), qadj::invalid_argument);
}

TEST_CASE("normal-mode transform is a change of variables on the Fock space", "[models][oracle][property]") {
    // Oracle: substitute x = Rᵗx', p = Rᵗp' into the quadratic form directly.
    oracle::Generator gen(0xE4);
    for (int trial = 0; trial < 50; ++trial) {
        const auto q = gen.hermitian_hamiltonian(2);
        const double th = gen.uniform(0.0, 6.3);
        RealMatrix r(2, 2);
        r << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
        const auto t = models::normal_mode_transform(q, r);
        // value of the quadratic form on a classical phase point z: zᵗγz
        const Vector z = gen.complex_vector(4);
        Vector zp(4);
        zp.head(2) = r.cast<complex>() * z.head(2);
        zp.tail(2) = r.cast<complex>() * z.tail(2);
        const complex before = z.transpose() * q.gamma() * z;
        const complex after = zp.transpose() * t.gamma() * zp;
        CHECK(std::abs(before - after) < 1e-12);
        CHECK(oracle::multiset_distance(natural_frequencies(q).lambdas, natural_frequencies(t).lambdas) < 1e-7);
    }
}

TEST_CASE("separable spectrum", "[models]") {
    const auto levels = models::separable_spectrum(2.0, 1.0, 3);
    REQUIRE(levels.size() == 16);
    CHECK(levels[0].energy == 1.5);
    CHECK(levels[0].n1 == 0);
    CHECK(levels[0].n2 == 0);
    CHECK(levels[1].energy == 2.5);
    CHECK(levels[1].n2 == 1);
    CHECK(levels[2].energy == 3.5);
    CHECK(levels[3].energy == 3.5);
    // tie broken by (n1, n2): (0, 2) before (1, 0)
    CHECK(levels[2].n1 == 0);
    CHECK(levels[2].n2 == 2);
    CHECK(levels[3].n1 == 1);
    CHECK(levels[3].n2 == 0);
    for (std::size_t i = 1; i < levels.size(); ++i) CHECK(levels[i - 1].energy <= levels[i].energy);

    const double w = 0.7;
    for (const auto& l : models::separable_spectrum(w, w, 4)) {
        CHECK(l.energy == Catch::Approx(w * (l.n1 + l.n2 + 1)));
    }
    CHECK(models::separable_spectrum(w, w, 0).front().energy == Catch::Approx(w));
    CHECK_THROWS_AS(models::separable_spectrum(1.0, 1.0, -1), qadj::invalid_argument);

    const auto d = ladder_operators(models::coupled_masses(2.0, 1.0));
    CHECK(std::abs(d.ground_energy - levels[0].energy) < 1e-10);
}

TEST_CASE("annihilation operators", "[models]") {
    const double w1 = 2.0;
    const double w2 = 1.0;
    const auto [a1, a2] = models::annihilation_ops(w1, w2);
    CHECK(std::abs(commute_linear(a1, a1.adjoint()) - 1.0) < 1e-14);
    CHECK(std::abs(commute_linear(a2, a2.adjoint()) - 1.0) < 1e-14);
    CHECK(std::abs(commute_linear(a1, a2)) < 1e-14);
    CHECK(std::abs(commute_linear(a1, a2.adjoint())) < 1e-14);

    const auto q = models::coupled_masses(w1, w2);
    CHECK(nearly_equal(commute_h_linear(q, a1).coeffs(), Vector(-w1 * a1.coeffs()), 1e-14));
    CHECK(nearly_equal(commute_h_linear(q, a2).coeffs(), Vector(-w2 * a2.coeffs()), 1e-14));

    // ω₁a₁†a₁ + ω₂a₂†a₂ + ½(ω₁+ω₂) reproduces the coupled-mass Hamiltonian
    auto boson = complex(w1) * product(a1.adjoint(), a1) + complex(w2) * product(a2.adjoint(), a2);
    boson = QuadraticHamiltonian(boson.basis(), boson.gamma(), boson.offset() + 0.5 * (w1 + w2));
    const auto lhs = canonicalize(boson);
    const auto rhs = canonicalize(q);
    CHECK(nearly_equal(lhs.gamma(), rhs.gamma(), 1e-14));
    CHECK(std::abs(lhs.offset() - rhs.offset()) < 1e-14);

    CHECK_THROWS_AS(models::annihilation_ops(0.0, 1.0), qadj::invalid_argument);
}

TEST_CASE("a2 with the opposite momentum sign is a creation operator", "[models]") {
    // (√ω₂/2)(x₁+x₂) − (i/(2√ω₂))(p₁+p₂) has [a, a†] = −1 and raises the energy.
    const double w2 = 1.0;
    const double r2 = std::sqrt(w2);
    Vector c(4);
    c << r2 / 2.0, r2 / 2.0, -I / (2.0 * r2), -I / (2.0 * r2);
    const LinearForm flipped(models::two_mass_basis(), c);
    CHECK(std::abs(commute_linear(flipped, flipped.adjoint()) + 1.0) < 1e-14);
    const auto q = models::coupled_masses(2.0, w2);
    CHECK(nearly_equal(commute_h_linear(q, flipped).coeffs(), Vector(w2 * c), 1e-14));
}

TEST_CASE("single oscillator", "[models]") {
    for (double w : {0.1, 1.0, 4.0}) {
        const auto q = models::single_oscillator(w);
        CHECK(q.basis().labels() == std::vector<std::string>{"x", "p"});
        const auto s = natural_frequencies(q);
        CHECK(std::abs(s.lambdas[0] + w) < 1e-12);
        CHECK(std::abs(s.lambdas[1] - w) < 1e-12);
        CHECK_FALSE(is_exceptional(adjoint_matrix(q)));
        CHECK(std::abs(ladder_operators(q).ground_energy - w / 2.0) < 1e-10);
    }
}
