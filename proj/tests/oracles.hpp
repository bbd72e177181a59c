// oracles.hpp — independent reference computations used only by tests
//
// None of these go through adjoint_matrix/canonicalize: operators are built as
// explicit matrices in a truncated harmonic-oscillator (Fock) basis, eigenvalues
// come from a dense eigensolver, and determinants from LU factorization.

#pragma once

#include "qadj/qadj.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <random>
#include <vector>

namespace qadj::oracle {

// ------------------------- truncated Fock space -----------------------------

// Per-mode x = (a + a†)/√2 and p = i(a† − a)/√2 on `levels` Fock states; the
// product of two such matrices is exact on the first levels−1 states.
struct FockSpace {
    int dof;
    int levels;
    std::vector<Matrix> ops;  // x_1..x_K, p_1..p_K acting on the tensor product

    FockSpace(int k, int n) : dof(k), levels(n) {
        Matrix a = Matrix::Zero(n, n);
        for (int j = 1; j < n; ++j) a(j - 1, j) = std::sqrt(static_cast<double>(j));
        const Matrix ad = a.adjoint();
        const Matrix x = (a + ad) / std::sqrt(2.0);
        const Matrix p = complex(0.0, 1.0) * (ad - a) / std::sqrt(2.0);
        const Matrix id = Matrix::Identity(n, n);
        auto embed = [&](const Matrix& single, int mode) {
            Matrix out = Matrix::Identity(1, 1);
            for (int m = 0; m < k; ++m) {
                const Matrix& f = m == mode ? single : id;
                out = Matrix(Eigen::kroneckerProduct(out, f));
            }
            return out;
        };
        for (int m = 0; m < k; ++m) ops.push_back(embed(x, m));
        for (int m = 0; m < k; ++m) ops.push_back(embed(p, m));
    }

    Eigen::Index size() const { return ops.front().rows(); }

    Matrix quadratic(const QuadraticHamiltonian& q) const {
        Matrix out = q.offset() * Matrix::Identity(size(), size());
        for (int i = 0; i < 2 * dof; ++i) {
            for (int j = 0; j < 2 * dof; ++j) {
                if (q.gamma()(i, j) != complex{}) out += q.gamma()(i, j) * ops[i] * ops[j];
            }
        }
        return out;
    }

    Matrix linear(const Vector& c) const {
        Matrix out = Matrix::Zero(size(), size());
        for (int i = 0; i < 2 * dof; ++i) out += c(i) * ops[i];
        return out;
    }

    // Indices of product states with every mode occupation ≤ cutoff.
    std::vector<Eigen::Index> low_states(int cutoff) const {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index s = 0; s < size(); ++s) {
            Eigen::Index rem = s;
            bool ok = true;
            for (int m = 0; m < dof; ++m) {
                if (rem % levels > cutoff) ok = false;
                rem /= levels;
            }
            if (ok) idx.push_back(s);
        }
        return idx;
    }

    // Max-norm difference restricted to states where quadratic products are exact.
    double low_block_diff(const Matrix& a, const Matrix& b, int cutoff) const {
        const auto idx = low_states(cutoff);
        double worst = 0.0;
        for (Eigen::Index r : idx) {
            for (Eigen::Index c : idx) worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
        }
        return worst;
    }
};

// ------------------------- dense eigen / det --------------------------------

inline std::vector<complex> dense_eigenvalues(const Matrix& h) {
    Eigen::ComplexEigenSolver<Matrix> es(h, false);
    std::vector<complex> out(static_cast<std::size_t>(h.rows()));
    for (Eigen::Index i = 0; i < h.rows(); ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    return out;
}

inline complex det_shifted(const Matrix& h, complex lambda) {
    return (h - lambda * Matrix::Identity(h.rows(), h.cols())).fullPivLu().determinant();
}

// Greedy matching distance between two multisets of complex numbers.
inline double multiset_distance(std::vector<complex> a, std::vector<complex> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (complex x : a) {
        auto it = std::min_element(b.begin(), b.end(), [&](complex u, complex v) { return std::abs(u - x) < std::abs(v - x); });
        worst = std::max(worst, std::abs(*it - x));
        b.erase(it);
    }
    return worst;
}

// ------------------------- seeded generators --------------------------------

class Generator {
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    complex cplx(double scale = 1.0) { return {uniform(-scale, scale), uniform(-scale, scale)}; }

    Matrix complex_matrix(int n, double scale = 1.0) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) m(i, j) = cplx(scale);
        }
        return m;
    }

    Vector complex_vector(int n, double scale = 1.0) {
        Vector v(n);
        for (int i = 0; i < n; ++i) v(i) = cplx(scale);
        return v;
    }

    // Arbitrary (non-symmetric, non-Hermitian) γ.
    QuadraticHamiltonian any_hamiltonian(int k, double scale = 1.0) {
        return {OperatorBasis(k), complex_matrix(2 * k, scale), cplx(scale)};
    }

    // Hermitian γ: the Hamiltonian operator is Hermitian.
    QuadraticHamiltonian hermitian_hamiltonian(int k, double scale = 1.0) {
        const Matrix m = complex_matrix(2 * k, scale);
        return {OperatorBasis(k), (m + m.adjoint()) * 0.5, uniform(-scale, scale)};
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace qadj::oracle
