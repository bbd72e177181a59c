// dynamics.hpp — Heisenberg evolution of linear observables and the order-2K equation
//
// The row vector of basis operators evolves as O(t) = O e^{itH}, so an observable
// Σ c_i O_i has coefficient column c(t) = e^{itH} c(0). Cayley–Hamilton gives
// P(H) = 0 and therefore P(−i d/dt) c(t) = 0: a linear ODE of order 2K.

#pragma once

#include "qadj/algebra.hpp"
#include "qadj/core.hpp"
#include "qadj/spectral.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace qadj {

// |t|·‖H‖₁ above this would overflow e^{itH} in double precision.
inline constexpr double kPropagatorBound = 700.0;

namespace detail {

template <typename Real>
using MatrixT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using VectorT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

inline double one_norm(const Matrix& h) {
    return h.cwiseAbs().colwise().sum().maxCoeff();
}

// Scaling-and-squaring Padé exponential of itH in the requested precision.
template <typename Real>
MatrixT<Real> propagator_in(const Matrix& h, Real t) {
    const MatrixT<Real> a = h.template cast<std::complex<Real>>() * std::complex<Real>(Real(0), t);
    return a.exp();
}

}  // namespace detail

inline Matrix propagator(const Matrix& h, double t) {
    if (h.rows() != h.cols()) throw invalid_argument("propagator: matrix must be square");
    if (!std::isfinite(t)) throw invalid_argument("propagator: time must be finite");
    if (std::abs(t) * detail::one_norm(h) > kPropagatorBound) {
        throw range_error("propagator: |t|*||H||_1 exceeds " + std::to_string(kPropagatorBound) +
                          "; exp(itH) would overflow");
    }
    if (t == 0.0) return Matrix::Identity(h.rows(), h.cols());
    return detail::propagator_in<double>(h, t);
}

struct EvolutionTrace {
    std::vector<double> times;
    std::vector<Vector> coeff_samples;
    LinearForm observable;
};

inline void require_increasing(std::span<const double> times, const char* who) {
    if (times.empty()) throw invalid_argument(std::string(who) + ": need at least one sample time");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i])) throw invalid_argument(std::string(who) + ": sample times must be finite");
        if (i > 0 && !(times[i] > times[i - 1])) {
            throw invalid_argument(std::string(who) + ": sample times must be strictly increasing");
        }
    }
}

inline EvolutionTrace evolve_observable(const LinearForm& l, const Matrix& h, std::span<const double> times) {
    if (h.rows() != l.basis().dim() || h.cols() != l.basis().dim()) {
        throw invalid_argument("evolve_observable: matrix and observable dimensions differ");
    }
    require_increasing(times, "evolve_observable");
    EvolutionTrace out{std::vector<double>(times.begin(), times.end()), {}, l};
    out.coeff_samples.reserve(times.size());
    for (double t : times) {
        // The t = 0 sample is the initial observable, copied exactly.
        out.coeff_samples.push_back(t == 0.0 ? l.coeffs() : Vector(propagator(h, t) * l.coeffs()));
    }
    return out;
}

inline EvolutionTrace evolve_observable(const LinearForm& l, const QuadraticHamiltonian& q,
                                        std::span<const double> times) {
    require_same_basis(l.basis(), q.basis(), "evolve_observable");
    return evolve_observable(l, adjoint_matrix(q), times);
}

// Evenly spaced sample times t_i = t0 + i·(t1 − t0)/(n − 1).
inline std::vector<double> uniform_times(double t0, double t1, int count) {
    if (count < 1) throw invalid_argument("uniform_times: need at least one sample");
    std::vector<double> t(static_cast<std::size_t>(count));
    if (count == 1) {
        t[0] = t0;
        return t;
    }
    const double h = (t1 - t0) / static_cast<double>(count - 1);
    for (int i = 0; i < count; ++i) t[static_cast<std::size_t>(i)] = t0 + h * static_cast<double>(i);
    return t;
}

// ------------------------- finite-difference check --------------------------

// Fornberg weights for the derivative of order `order` on the symmetric nodes
// −m..m with m = ⌈order/2⌉ (second-order accurate central stencil).
inline std::vector<long double> central_difference_weights(int order) {
    if (order < 0) throw invalid_argument("central_difference_weights: order must be >= 0");
    if (order == 0) return {1.0L};
    const int m = (order + 1) / 2;
    const int npts = 2 * m + 1;
    std::vector<long double> x(static_cast<std::size_t>(npts));
    for (int i = 0; i < npts; ++i) x[static_cast<std::size_t>(i)] = static_cast<long double>(i - m);

    // c[j][k]: weight of node j for derivative k (Fornberg 1988, expansion point 0).
    std::vector<std::vector<long double>> c(static_cast<std::size_t>(npts),
                                            std::vector<long double>(static_cast<std::size_t>(order + 1), 0.0L));
    long double c1 = 1.0L;
    long double c4 = x[0];
    c[0][0] = 1.0L;
    for (int i = 1; i < npts; ++i) {
        const int mn = std::min(i, order);
        long double c2 = 1.0L;
        const long double c5 = c4;
        c4 = x[static_cast<std::size_t>(i)];
        for (int j = 0; j < i; ++j) {
            const long double c3 = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) {
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<long double> w(static_cast<std::size_t>(npts));
    for (int i = 0; i < npts; ++i) w[static_cast<std::size_t>(i)] = c[i][order];
    return w;
}

struct OdeCheckReport {
    double cayley_hamilton_residual = 0.0;  // ‖P(H)‖_max
    double stencil_residual = 0.0;          // max_i ‖P(−i d/dt) c(t_i)‖ over interior samples
    double max_sample_norm = 0.0;           // max_i ‖c(t_i)‖
    double step = 0.0;
    int order = 0;
};

// The combined central stencil for Σ_k p_k (−i d/dt)^k, with p the ascending-power
// reading of `poly` (given in descending order), acting on c(t) = e^{itH}c.
// Since c(t + j·step) = e^{ij·step·H}c(t), applying the stencil to exact samples
// around t equals S·c(t) with S = Σ_j w_j e^{ij·step·H}. S is accumulated in
// extended precision: its terms are of size step^{−2K} and cancel to O(step²).
inline Matrix stencil_operator(std::span<const complex> poly, const Matrix& h, double step) {
    using Real = long double;
    using C = std::complex<Real>;
    const int degree = static_cast<int>(poly.size()) - 1;
    if (degree < 0) throw invalid_argument("stencil_operator: empty polynomial");
    if (!(step > 0.0) || !std::isfinite(step)) throw invalid_argument("stencil_operator: step must be positive");
    const int half = (degree + 1) / 2;

    // weight[j] multiplies the sample at offset (j − half)·step.
    std::vector<C> weight(static_cast<std::size_t>(2 * half + 1), C{});
    for (int k = 0; k <= degree; ++k) {
        const complex pk = poly[static_cast<std::size_t>(degree - k)];
        if (pk == complex{}) continue;
        C factor = C(pk.real(), pk.imag());
        for (int p = 0; p < k; ++p) factor *= C(0.0L, -1.0L) / static_cast<Real>(step);
        const std::vector<Real> w = central_difference_weights(k);
        const int m = (static_cast<int>(w.size()) - 1) / 2;
        for (int j = -m; j <= m; ++j) weight[static_cast<std::size_t>(half + j)] += factor * w[static_cast<std::size_t>(j + m)];
    }

    const auto n = h.rows();
    detail::MatrixT<Real> s = detail::MatrixT<Real>::Zero(n, n);
    for (int j = -half; j <= half; ++j) {
        const C wj = weight[static_cast<std::size_t>(j + half)];
        if (wj == C{}) continue;
        if (j == 0) {
            s += wj * detail::MatrixT<Real>::Identity(n, n);
        } else {
            s += wj * detail::propagator_in<Real>(h, static_cast<Real>(step) * static_cast<Real>(j));
        }
    }
    return s.template cast<complex>();
}

// Max over interior samples c(t0 + i·step), i = half..count−1−half, of the
// stencil residual ‖S·c‖, with half the stencil half-width.
inline double stencil_residual(std::span<const complex> poly, const Matrix& h, const Vector& c0, double t0,
                               double step, int count) {
    const int half = static_cast<int>(poly.size()) / 2;
    if (poly.empty()) throw invalid_argument("stencil_residual: empty polynomial");
    if (count < 2 * half + 1) throw invalid_argument("stencil_residual: too few samples for the stencil");
    const Matrix s = stencil_operator(poly, h, step);
    double worst = 0.0;
    for (int i = half; i < count - half; ++i) {
        const double t = t0 + step * static_cast<double>(i);
        const Vector c = t == 0.0 ? c0 : Vector(propagator(h, t) * c0);
        worst = std::max(worst, (s * c).norm());
    }
    return worst;
}

inline OdeCheckReport ode_check(const QuadraticHamiltonian& q, const LinearForm& l, std::span<const double> times,
                                const ToleranceConfig& tol = {}) {
    require_same_basis(q.basis(), l.basis(), "ode_check");
    require_increasing(times, "ode_check");
    const int order = q.dim();
    if (static_cast<int>(times.size()) < order + 1) {
        throw invalid_argument("ode_check: need at least 2K+1 samples, got " + std::to_string(times.size()));
    }
    const double step = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (std::abs((times[i] - times[i - 1]) - step) > 1e-9 * step + 1e-15 * std::abs(times[i])) {
            throw invalid_argument("ode_check: sample times must be uniformly spaced");
        }
    }

    const Matrix h = adjoint_matrix(q);
    const CharPoly poly = characteristic_polynomial(h, tol);

    OdeCheckReport out;
    out.order = order;
    out.step = step;
    out.cayley_hamilton_residual = max_abs(evaluate(poly.coeffs, h));
    out.stencil_residual = stencil_residual(poly.coeffs, h, l.coeffs(), times.front(), step, static_cast<int>(times.size()));
    for (double t : times) {
        const Vector c = t == 0.0 ? l.coeffs() : Vector(propagator(h, t) * l.coeffs());
        out.max_sample_norm = std::max(out.max_sample_norm, c.norm());
    }
    return out;
}

}  // namespace qadj
