// models.hpp — Pais–Uhlenbeck family, coupled masses, and the single oscillator
//
// Basis orderings: PU uses (x, y, p_x, p_y); the two-mass model (x1, x2, p1, p2);
// the single oscillator (x, p).

#pragma once

#include "qadj/algebra.hpp"
#include "qadj/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace qadj::models {

// H = ½p_x² + a·x·p_y + ½(ω₁² + ω₂²)x² + ½b·ω₁²ω₂²y²
struct PUParams {
    complex a{1.0, 0.0};
    complex b{-1.0, 0.0};
    double omega1 = 1.0;
    double omega2 = 1.0;

    void validate() const {
        if (!(omega1 > 0.0) || !(omega2 > 0.0) || !std::isfinite(omega1) || !std::isfinite(omega2)) {
            throw invalid_argument("PUParams: omega1 and omega2 must be finite and > 0");
        }
    }

    complex a2b() const { return a * a * b; }

    static PUParams standard(double w1, double w2) { return {{1.0, 0.0}, {-1.0, 0.0}, w1, w2}; }
    // a = −i gives the −i·x·p_y coupling with a² = −1, b = +1.
    static PUParams pt_variant(double w1, double w2) { return {{0.0, -1.0}, {1.0, 0.0}, w1, w2}; }
};

inline OperatorBasis pu_basis() { return OperatorBasis(2, {"x", "y", "px", "py"}); }
inline OperatorBasis two_mass_basis() { return OperatorBasis(2, {"x1", "x2", "p1", "p2"}); }
inline OperatorBasis oscillator_basis() { return OperatorBasis(1, {"x", "p"}); }

// γ is stored as written: the coupling sits at (x, p_y) only.
inline QuadraticHamiltonian pais_uhlenbeck_general(const PUParams& p) {
    p.validate();
    const double w1sq = p.omega1 * p.omega1;
    const double w2sq = p.omega2 * p.omega2;
    Matrix g = Matrix::Zero(4, 4);
    g(0, 0) = 0.5 * (w1sq + w2sq);
    g(1, 1) = 0.5 * (p.b * (w1sq * w2sq));
    g(2, 2) = 0.5;
    g(0, 3) = p.a;
    return {pu_basis(), std::move(g)};
}

inline QuadraticHamiltonian pais_uhlenbeck(double w1, double w2) {
    return pais_uhlenbeck_general(PUParams::standard(w1, w2));
}

inline QuadraticHamiltonian pais_uhlenbeck_pt(double w1, double w2) {
    return pais_uhlenbeck_general(PUParams::pt_variant(w1, w2));
}

// ξ± = [ω₁² + ω₂² ± √(4a²bω₁²ω₂² + (ω₁² + ω₂²)²)]/2, the squared frequencies.
inline std::pair<complex, complex> xi_frequencies(const PUParams& p) {
    p.validate();
    const double s = p.omega1 * p.omega1 + p.omega2 * p.omega2;
    const double prod = p.omega1 * p.omega1 * p.omega2 * p.omega2;
    const complex shift = 4.0 * p.a2b() * prod;
    complex disc = shift + s * s;
    // A discriminant at rounding level means ξ₊ = ξ₋ (the exceptional point).
    if (std::abs(disc) <= 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(shift) + s * s)) disc = 0.0;
    const complex root = std::sqrt(disc);
    return {(s + root) / 2.0, (s - root) / 2.0};
}

enum class RealityClass { real, exceptional_boundary, complex };

inline std::string_view to_string(RealityClass c) {
    switch (c) {
        case RealityClass::real: return "real";
        case RealityClass::exceptional_boundary: return "exceptional-boundary";
        case RealityClass::complex: return "complex";
    }
    return "unknown";
}

// Lower end of the reality interval −(ω₁² + ω₂²)²/(4ω₁²ω₂²) < a²b < 0.
inline double reality_lower_bound(const PUParams& p) {
    const double s = p.omega1 * p.omega1 + p.omega2 * p.omega2;
    return -(s * s) / (4.0 * p.omega1 * p.omega1 * p.omega2 * p.omega2);
}

inline RealityClass reality_class(const PUParams& p, const ToleranceConfig& tol = {}) {
    p.validate();
    const complex k = p.a2b();
    if (std::abs(k.imag()) > tol.eq_tol * (1.0 + std::abs(k))) {
        throw unsupported_parameter_error(
            "reality_class: a^2 b must be real; the reality interval is a condition on the real line");
    }
    const double v = k.real();
    const double lo = reality_lower_bound(p);
    const double thr = tol.coalesce_tol * (1.0 + std::abs(lo));
    if (std::abs(v - lo) <= thr || std::abs(v) <= thr) return RealityClass::exceptional_boundary;
    return (lo < v && v < 0.0) ? RealityClass::real : RealityClass::complex;
}

// Ladder operators for a²b = −1 with every c_j = 1, labelled by λ = −ω₁, −ω₂, ω₂, ω₁:
//   Z₁ = ω₂²y/a + p_x − i(ω₁²x + a p_y)/ω₁     Z₂ = ω₁²y/a + p_x − i(ω₂²x + a p_y)/ω₂
//   Z₃ = ω₁²y/a + p_x + i(ω₂x + a p_y/ω₂)      Z₄ = ω₂²y/a + p_x + i(ω₁x + a p_y/ω₁)
inline std::array<LinearForm, 4> pu_reference_ladders(const PUParams& p) {
    p.validate();
    const double w1 = p.omega1;
    const double w2 = p.omega2;
    const complex a = p.a;
    const OperatorBasis basis = pu_basis();
    auto make = [&](complex cx, complex cy, complex cpx, complex cpy) {
        Vector c(4);
        c << cx, cy, cpx, cpy;
        return LinearForm(basis, std::move(c));
    };
    return {make(-I * w1, w2 * w2 / a, 1.0, -I * a / w1), make(-I * w2, w1 * w1 / a, 1.0, -I * a / w2),
            make(I * w2, w1 * w1 / a, 1.0, I * a / w2), make(I * w1, w2 * w2 / a, 1.0, I * a / w1)};
}

// ---------------------------- coupled masses --------------------------------

// H = ½(p₁² + p₂²) + (ω₁²/4)(x₁ − x₂)² + (ω₂²/4)(x₁ + x₂)²
inline QuadraticHamiltonian coupled_masses(double w1, double w2) {
    if (!(w1 > 0.0) || !(w2 > 0.0)) throw invalid_argument("coupled_masses: frequencies must be > 0");
    const double w1sq = w1 * w1;
    const double w2sq = w2 * w2;
    Matrix g = Matrix::Zero(4, 4);
    g(0, 0) = g(1, 1) = 0.25 * (w1sq + w2sq);
    g(0, 1) = g(1, 0) = 0.25 * (w2sq - w1sq);
    g(2, 2) = g(3, 3) = 0.5;
    return {two_mass_basis(), std::move(g)};
}

// New coordinates x' = R x, p' = R p for orthogonal R; γ' = B γ Bᵗ with B = diag(R, R).
inline QuadraticHamiltonian normal_mode_transform(const QuadraticHamiltonian& q, const RealMatrix& r,
                                                  const ToleranceConfig& tol = {}) {
    const int k = q.dof();
    if (r.rows() != k || r.cols() != k) throw invalid_argument("normal_mode_transform: R must be K x K");
    const RealMatrix id = RealMatrix::Identity(k, k);
    if (!nearly_equal(RealMatrix(r * r.transpose()), id, tol.eq_tol)) {
        throw invalid_argument("normal_mode_transform: R is not orthogonal");
    }
    Matrix b = Matrix::Zero(2 * k, 2 * k);
    b.topLeftCorner(k, k) = r.cast<complex>();
    b.bottomRightCorner(k, k) = r.cast<complex>();
    return {q.basis(), b * q.gamma() * b.transpose(), q.offset()};
}

struct Level {
    int n1;
    int n2;
    double energy;
};

// E = ω₁(n₁ + ½) + ω₂(n₂ + ½) for 0 ≤ n₁, n₂ ≤ nmax, ascending; ties by (n₁, n₂).
inline std::vector<Level> separable_spectrum(double w1, double w2, int nmax) {
    if (!(w1 > 0.0) || !(w2 > 0.0)) throw invalid_argument("separable_spectrum: frequencies must be > 0");
    if (nmax < 0) throw invalid_argument("separable_spectrum: nmax must be >= 0");
    std::vector<Level> out;
    for (int n1 = 0; n1 <= nmax; ++n1) {
        for (int n2 = 0; n2 <= nmax; ++n2) {
            out.push_back({n1, n2, w1 * (n1 + 0.5) + w2 * (n2 + 0.5)});
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Level& a, const Level& b) { return a.energy < b.energy; });
    return out;
}

// Normal-mode annihilation operators
//   a₁ = (√ω₁/2)(x₁ − x₂) + (i/(2√ω₁))(p₁ − p₂)
//   a₂ = (√ω₂/2)(x₁ + x₂) + (i/(2√ω₂))(p₁ + p₂)
// so that [a_j, a_j†] = 1 and [H, a_j] = −ω_j a_j.
inline std::pair<LinearForm, LinearForm> annihilation_ops(double w1, double w2) {
    if (!(w1 > 0.0) || !(w2 > 0.0)) throw invalid_argument("annihilation_ops: frequencies must be > 0");
    const double r1 = std::sqrt(w1);
    const double r2 = std::sqrt(w2);
    Vector c1(4), c2(4);
    c1 << r1 / 2.0, -r1 / 2.0, I / (2.0 * r1), -I / (2.0 * r1);
    c2 << r2 / 2.0, r2 / 2.0, I / (2.0 * r2), I / (2.0 * r2);
    return {LinearForm(two_mass_basis(), std::move(c1)), LinearForm(two_mass_basis(), std::move(c2))};
}

// ---------------------------- single oscillator -----------------------------

inline QuadraticHamiltonian single_oscillator(double w) {
    if (!(w > 0.0)) throw invalid_argument("single_oscillator: omega must be > 0");
    Matrix g = Matrix::Zero(2, 2);
    g(0, 0) = 0.5 * w * w;
    g(1, 1) = 0.5;
    return {oscillator_basis(), std::move(g)};
}

}  // namespace qadj::models
