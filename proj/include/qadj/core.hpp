// core.hpp — scalar and matrix aliases, error types, and the tolerance policy

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace qadj {

using complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr complex I{0.0, 1.0};

// ------------------------------- errors -------------------------------------

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad dimensions, basis mismatches, out-of-domain parameters.
class invalid_argument : public error {
public:
    using error::error;
};

// The matrix handed in cannot be the adjoint matrix of a quadratic Hamiltonian.
class structure_error : public error {
public:
    using error::error;
};

// Ladder construction requested on a spectrum with coalesced eigenvalues.
class degenerate_spectrum_error : public error {
public:
    using error::error;
};

// Eigenspace dimension differs from the algebraic multiplicity.
class defective_error : public error {
public:
    using error::error;
};

// A pairing commutator sigma_j vanished: the ladder pair no longer spans a mode.
class exceptional_point_error : public error {
public:
    using error::error;
};

// Transform matrix or subspace is too ill-conditioned for the configured tolerances.
class numerical_degeneracy_error : public error {
public:
    using error::error;
};

class range_error : public error {
public:
    using error::error;
};

class unsupported_parameter_error : public error {
public:
    using error::error;
};

class parse_error : public error {
public:
    using error::error;
};

// ------------------------------ tolerances ----------------------------------

struct ToleranceConfig {
    double eq_tol = 1e-10;       // matrix/scalar equality, scaled by (1 + max entry)
    double rank_tol = 1e-9;      // singular-value cutoff relative to the largest one
    double coalesce_tol = 1e-8;  // eigenvalue coalescence relative to the spectral radius

    void validate() const {
        auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
        if (!ok(eq_tol) || !ok(rank_tol) || !ok(coalesce_tol)) {
            throw invalid_argument("ToleranceConfig: all tolerances must be finite and > 0");
        }
    }
};

// ------------------------------ helpers -------------------------------------

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

// ‖a − b‖_max ≤ tol·(1 + max(‖a‖_max, ‖b‖_max))
template <typename A, typename B>
bool nearly_equal(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    const double scale = 1.0 + std::max(max_abs(a), max_abs(b));
    return max_abs(a - b) <= tol * scale;
}

inline bool nearly_equal(complex a, complex b, double tol) {
    return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

inline void require_square_even(const Matrix& h, const char* who) {
    if (h.rows() != h.cols() || h.rows() == 0 || h.rows() % 2 != 0) {
        throw invalid_argument(std::string(who) + ": matrix must be square with even, nonzero dimension");
    }
}

}  // namespace qadj
