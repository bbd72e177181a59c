// algebra.hpp — quadratic and linear forms over the Heisenberg basis {x_1..x_K, p_1..p_K}
//
// A quadratic Hamiltonian H = Σ_ij γ_ij O_i O_j acts on the linear span of the
// basis through its adjoint matrix: [H, O_i] = Σ_j H_ji O_j with H = (γ + γᵗ)U,
// where [O_i, O_j] = U_ij is the symplectic form. Units: ħ = 1, masses absorbed.

#pragma once

#include "qadj/core.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qadj {

// --------------------------- operator basis ---------------------------------

class OperatorBasis {
public:
    // Default labels x1..xK, p1..pK.
    explicit OperatorBasis(int dof) : dof_(dof) {
        if (dof < 1) throw invalid_argument("OperatorBasis: K must be >= 1");
        labels_.reserve(static_cast<std::size_t>(2 * dof));
        for (int m = 1; m <= dof; ++m) labels_.push_back("x" + std::to_string(m));
        for (int m = 1; m <= dof; ++m) labels_.push_back("p" + std::to_string(m));
    }

    OperatorBasis(int dof, std::vector<std::string> labels) : dof_(dof), labels_(std::move(labels)) {
        if (dof < 1) throw invalid_argument("OperatorBasis: K must be >= 1");
        if (labels_.size() != static_cast<std::size_t>(2 * dof)) {
            throw invalid_argument("OperatorBasis: expected exactly 2K labels");
        }
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (labels_[i].empty()) throw invalid_argument("OperatorBasis: labels must be non-empty");
            for (std::size_t j = 0; j < i; ++j) {
                if (labels_[i] == labels_[j]) throw invalid_argument("OperatorBasis: duplicate label '" + labels_[i] + "'");
            }
        }
    }

    int dof() const noexcept { return dof_; }
    int dim() const noexcept { return 2 * dof_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    // Zero-based: indices [0, K) are coordinates, [K, 2K) momenta.
    bool is_coordinate(int i) const noexcept { return i >= 0 && i < dof_; }
    bool is_momentum(int i) const noexcept { return i >= dof_ && i < 2 * dof_; }

    std::optional<int> index_of(const std::string& label) const {
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (labels_[i] == label) return static_cast<int>(i);
        }
        return std::nullopt;
    }

    friend bool operator==(const OperatorBasis&, const OperatorBasis&) = default;

private:
    int dof_;
    std::vector<std::string> labels_;
};

// --------------------------- forms ------------------------------------------

class QuadraticHamiltonian {
public:
    QuadraticHamiltonian(OperatorBasis basis, Matrix gamma, complex offset = {})
        : basis_(std::move(basis)), gamma_(std::move(gamma)), offset_(offset) {
        if (gamma_.rows() != basis_.dim() || gamma_.cols() != basis_.dim()) {
            throw invalid_argument("QuadraticHamiltonian: gamma must be 2K x 2K");
        }
    }

    static QuadraticHamiltonian zero(const OperatorBasis& basis) {
        return {basis, Matrix::Zero(basis.dim(), basis.dim())};
    }

    const OperatorBasis& basis() const noexcept { return basis_; }
    const Matrix& gamma() const noexcept { return gamma_; }
    complex offset() const noexcept { return offset_; }
    int dof() const noexcept { return basis_.dof(); }
    int dim() const noexcept { return basis_.dim(); }

private:
    OperatorBasis basis_;
    Matrix gamma_;
    complex offset_;
};

class LinearForm {
public:
    LinearForm(OperatorBasis basis, Vector coeffs) : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != basis_.dim()) {
            throw invalid_argument("LinearForm: coefficient vector must have length 2K");
        }
    }

    // The observable O_i itself.
    static LinearForm unit(const OperatorBasis& basis, int i) {
        if (i < 0 || i >= basis.dim()) throw invalid_argument("LinearForm::unit: index out of range");
        Vector c = Vector::Zero(basis.dim());
        c(i) = 1.0;
        return {basis, std::move(c)};
    }

    const OperatorBasis& basis() const noexcept { return basis_; }
    const Vector& coeffs() const noexcept { return coeffs_; }

    // Basis operators are Hermitian, so L† has conjugated coefficients.
    LinearForm adjoint() const { return {basis_, coeffs_.conjugate()}; }

    LinearForm scaled(complex s) const { return {basis_, coeffs_ * s}; }

private:
    OperatorBasis basis_;
    Vector coeffs_;
};

struct SymplecticForm {
    Matrix matrix;
};

// --------------------------- operations -------------------------------------

// U = i [[0, I], [-I, 0]]
inline SymplecticForm symplectic_matrix(int dof) {
    if (dof < 1) throw invalid_argument("symplectic_matrix: K must be >= 1");
    Matrix u = Matrix::Zero(2 * dof, 2 * dof);
    for (int m = 0; m < dof; ++m) {
        u(m, dof + m) = I;
        u(dof + m, m) = -I;
    }
    return {std::move(u)};
}

// Symmetrize gamma; the antisymmetric part a contributes the c-number ½ Σ a_ij U_ij.
inline QuadraticHamiltonian canonicalize(const QuadraticHamiltonian& q) {
    const Matrix& g = q.gamma();
    const int k = q.dof();
    Matrix sym = (g + g.transpose()) * 0.5;
    // Only U_{m,K+m} = i and U_{K+m,m} = -i are nonzero.
    complex shift{};
    for (int m = 0; m < k; ++m) {
        const complex a_xp = (g(m, k + m) - g(k + m, m)) * 0.5;
        const complex a_px = -a_xp;
        shift += 0.5 * (a_xp * I + a_px * (-I));
    }
    return {q.basis(), std::move(sym), q.offset() + shift};
}

// H = (γ + γᵗ)U. Right-multiplying by U maps column K+m to column m (times -i)
// and column m to column K+m (times i), so the product is formed entrywise.
inline Matrix adjoint_matrix(const QuadraticHamiltonian& q) {
    const Matrix s = q.gamma() + q.gamma().transpose();
    const int k = q.dof();
    Matrix h(2 * k, 2 * k);
    for (int m = 0; m < k; ++m) {
        h.col(m) = s.col(k + m) * (-I);
        h.col(k + m) = s.col(m) * I;
    }
    return h;
}

inline void require_same_basis(const OperatorBasis& a, const OperatorBasis& b, const char* who) {
    if (!(a == b)) throw invalid_argument(std::string(who) + ": operands live in different bases");
}

// [L1, L2] = c1ᵗ U c2 (a multiple of the identity)
inline complex commute_linear(const LinearForm& l1, const LinearForm& l2) {
    require_same_basis(l1.basis(), l2.basis(), "commute_linear");
    const int k = l1.basis().dof();
    const Vector& a = l1.coeffs();
    const Vector& b = l2.coeffs();
    complex acc{};
    for (int m = 0; m < k; ++m) acc += a(m) * b(k + m) - a(k + m) * b(m);
    return I * acc;
}

// [H, L] as a linear form: coefficients H·c.
inline LinearForm commute_h_linear(const QuadraticHamiltonian& q, const LinearForm& l) {
    require_same_basis(q.basis(), l.basis(), "commute_h_linear");
    return {l.basis(), adjoint_matrix(q) * l.coeffs()};
}

// L1·L2 as an (unsymmetrized) quadratic form; canonicalize before comparing operators.
inline QuadraticHamiltonian product(const LinearForm& l1, const LinearForm& l2) {
    require_same_basis(l1.basis(), l2.basis(), "product");
    return {l1.basis(), l1.coeffs() * l2.coeffs().transpose()};
}

inline QuadraticHamiltonian operator+(const QuadraticHamiltonian& a, const QuadraticHamiltonian& b) {
    require_same_basis(a.basis(), b.basis(), "QuadraticHamiltonian::operator+");
    return {a.basis(), a.gamma() + b.gamma(), a.offset() + b.offset()};
}

inline QuadraticHamiltonian operator*(complex s, const QuadraticHamiltonian& q) {
    return {q.basis(), q.gamma() * s, q.offset() * s};
}

// UHᵗU = −H holds for every quadratic Hamiltonian (Jacobi identity); a failure
// means the matrix did not come from (γ + γᵗ)U.
inline bool check_structure(const Matrix& h, const ToleranceConfig& tol = {}) {
    require_square_even(h, "check_structure");
    const Matrix u = symplectic_matrix(static_cast<int>(h.rows() / 2)).matrix;
    const Matrix lhs = u * h.transpose() * u;
    return nearly_equal(lhs, Matrix(-h), tol.eq_tol);
}

inline bool check_structure(const QuadraticHamiltonian& q, const ToleranceConfig& tol = {}) {
    return check_structure(adjoint_matrix(q), tol);
}

// H† = UHU
inline bool is_pseudo_hermitian(const Matrix& h, const ToleranceConfig& tol = {}) {
    require_square_even(h, "is_pseudo_hermitian");
    const Matrix u = symplectic_matrix(static_cast<int>(h.rows() / 2)).matrix;
    return nearly_equal(Matrix(h.adjoint()), Matrix(u * h * u), tol.eq_tol);
}

inline bool is_pseudo_hermitian(const QuadraticHamiltonian& q, const ToleranceConfig& tol = {}) {
    return is_pseudo_hermitian(adjoint_matrix(q), tol);
}

// Antiunitary map O_i → s_i O_i composed with i → −i. At the coefficient level
// the operator is invariant iff D γ* D = γ (and the constant is real) for the
// canonical representative.
inline bool antiunitary_invariant(const QuadraticHamiltonian& q, std::span<const double> signs,
                                  const ToleranceConfig& tol = {}) {
    if (signs.size() != static_cast<std::size_t>(q.dim())) {
        throw invalid_argument("antiunitary_invariant: need one sign per basis operator");
    }
    for (double s : signs) {
        if (s != 1.0 && s != -1.0) throw invalid_argument("antiunitary_invariant: signs must be +1 or -1");
    }
    const QuadraticHamiltonian c = canonicalize(q);
    Matrix mapped = c.gamma().conjugate();
    for (int i = 0; i < q.dim(); ++i) {
        for (int j = 0; j < q.dim(); ++j) mapped(i, j) *= signs[i] * signs[j];
    }
    return nearly_equal(mapped, c.gamma(), tol.eq_tol) && nearly_equal(std::conj(c.offset()), c.offset(), tol.eq_tol);
}

// Coordinate reflection (−x, p) and momentum reflection (x, −p), each with conjugation.
inline std::vector<double> coordinate_reflection_signs(int dof) {
    std::vector<double> s(static_cast<std::size_t>(2 * dof), 1.0);
    std::fill(s.begin(), s.begin() + dof, -1.0);
    return s;
}

inline std::vector<double> momentum_reflection_signs(int dof) {
    std::vector<double> s(static_cast<std::size_t>(2 * dof), 1.0);
    std::fill(s.begin() + dof, s.end(), -1.0);
    return s;
}

// γ† = γ on the canonical representative, with a real constant.
inline bool is_hermitian(const QuadraticHamiltonian& q, const ToleranceConfig& tol = {}) {
    const QuadraticHamiltonian c = canonicalize(q);
    return nearly_equal(Matrix(c.gamma().adjoint()), c.gamma(), tol.eq_tol) &&
           std::abs(c.offset().imag()) <= tol.eq_tol * (1.0 + std::abs(c.offset()));
}

}  // namespace qadj
