// jordan.hpp — exceptional points, multiplicities, and the Jordan canonical form
//
// At an exceptional point the adjoint matrix is defective: some eigenvalue has
// fewer independent eigenvectors than its algebraic multiplicity. Clustering
// comes first (eigenvalues within coalesce_tol are treated as equal), then each
// cluster's generalized eigenspace is split into Jordan chains.

#pragma once

#include "qadj/core.hpp"
#include "qadj/linalg.hpp"
#include "qadj/spectral.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace qadj {

struct MultiplicityCluster {
    complex eigenvalue;
    int algebraic = 0;
    int geometric = 0;
};

struct DefectReport {
    std::vector<MultiplicityCluster> clusters;
    bool is_defective = false;
};

struct JordanBlock {
    complex eigenvalue;
    int size = 1;
};

inline Matrix jordan_matrix(const std::vector<JordanBlock>& blocks) {
    int n = 0;
    for (const auto& b : blocks) n += b.size;
    Matrix j = Matrix::Zero(n, n);
    int at = 0;
    for (const auto& b : blocks) {
        for (int r = 0; r < b.size; ++r) {
            j(at + r, at + r) = b.eigenvalue;
            if (r + 1 < b.size) j(at + r, at + r + 1) = 1.0;
        }
        at += b.size;
    }
    return j;
}

struct JordanDecomposition {
    Matrix transform;  // columns are Jordan chains v_1, …, v_s with (H − λI)v_{k+1} = v_k
    std::vector<JordanBlock> blocks;
    double similarity_residual = 0.0;  // ‖P⁻¹HP − J‖_max
    double chain_residual = 0.0;       // max ‖(H − λI)v_{k+1} − v_k‖ and ‖(H − λI)v_1‖

    Matrix jordan() const { return jordan_matrix(blocks); }
};

namespace detail {

inline int geometric_multiplicity(const Matrix& h, complex lambda, int algebraic, const ToleranceConfig& tol) {
    const Eigen::Index n = h.rows();
    const Matrix shifted = h - lambda * Matrix::Identity(n, n);
    const double smax = linalg::largest_singular(shifted);
    if (smax == 0.0) return algebraic;
    const auto nullity = static_cast<int>(n - linalg::numerical_rank(shifted, tol.rank_tol * smax));
    return std::clamp(nullity, 1, algebraic);
}

}  // namespace detail

inline DefectReport multiplicities(const Matrix& h, const ToleranceConfig& tol = {}) {
    const FrequencySpectrum spectrum = natural_frequencies(h, tol);
    DefectReport out;
    for (const EigenCluster& c : cluster_eigenvalues(spectrum.lambdas, tol)) {
        MultiplicityCluster mc;
        mc.eigenvalue = c.representative;
        mc.algebraic = static_cast<int>(c.members.size());
        mc.geometric = detail::geometric_multiplicity(h, c.representative, mc.algebraic, tol);
        out.is_defective = out.is_defective || mc.geometric < mc.algebraic;
        out.clusters.push_back(mc);
    }
    return out;
}

inline bool is_exceptional(const Matrix& h, const ToleranceConfig& tol = {}) {
    return multiplicities(h, tol).is_defective;
}

namespace detail {

// Jordan chains of a (numerically) nilpotent m×m matrix, built top-down: at each
// length k the chain tops are taken from ker(Nᵏ) after orthogonalizing against
// ker(Nᵏ⁻¹) and against the level-k members of longer chains.
inline std::vector<Matrix> nilpotent_chains(const Matrix& nil, double scale, const ToleranceConfig& tol) {
    const Eigen::Index m = nil.rows();
    const double s = std::max(scale, 1e-300);

    std::vector<Matrix> kernels{Matrix(m, 0)};  // kernels[k] = basis of ker(Nᵏ)
    Matrix power = Matrix::Identity(m, m);
    while (kernels.back().cols() < m) {
        const auto k = static_cast<double>(kernels.size());
        power = nil * power;
        if (static_cast<Eigen::Index>(kernels.size()) == m) {
            kernels.push_back(Matrix::Identity(m, m));  // Nᵐ = 0 for an m×m nilpotent
            break;
        }
        Matrix ker = linalg::null_space(power, tol.rank_tol * std::pow(s, k));
        if (ker.cols() <= kernels.back().cols()) {
            // Numerically the kernel must grow; take one more vector than before.
            ker = linalg::smallest_right_singular(power, kernels.back().cols() + 1);
        }
        kernels.push_back(std::move(ker));
    }
    const auto top = static_cast<int>(kernels.size()) - 1;
    auto dim = [&](int k) { return static_cast<int>(kernels[static_cast<std::size_t>(k)].cols()); };

    struct Chain {
        Vector top;
        int length;
    };
    std::vector<Chain> chains;
    for (int k = top; k >= 1; --k) {
        const int at_least_k = dim(k) - dim(k - 1);
        const int at_least_k1 = k + 1 <= top ? dim(k + 1) - dim(k) : 0;
        int needed = at_least_k - at_least_k1;
        if (needed <= 0) continue;

        // Orthonormal basis of ker(Nᵏ⁻¹) + images of longer chains at level k.
        Matrix span = kernels[static_cast<std::size_t>(k - 1)];
        for (const Chain& c : chains) {
            Vector v = c.top;
            for (int p = 0; p < c.length - k; ++p) v = nil * v;
            span.conservativeResize(m, span.cols() + 1);
            span.col(span.cols() - 1) = v;
        }
        auto orthonormal = [&](const Matrix& a) -> Matrix {
            if (a.cols() == 0) return a;
            Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
            const Eigen::Index r = linalg::numerical_rank(a, tol.rank_tol * std::max(1.0, svd.singularValues()(0)));
            return svd.matrixU().leftCols(r);
        };
        Matrix q = orthonormal(span);
        const Matrix& candidates = kernels[static_cast<std::size_t>(k)];
        while (needed-- > 0) {
            double best = 0.0;
            Vector pick;
            for (Eigen::Index c = 0; c < candidates.cols(); ++c) {
                Vector r = candidates.col(c);
                if (q.cols() > 0) r -= q * (q.adjoint() * r);
                if (r.norm() > best) {
                    best = r.norm();
                    pick = r;
                }
            }
            if (best <= std::sqrt(tol.rank_tol)) {
                throw numerical_degeneracy_error(
                    "jordan_form: could not separate Jordan chains; try adjusting rank_tol or coalesce_tol");
            }
            pick /= best;
            chains.push_back({pick, k});
            q.conservativeResize(m, q.cols() + 1);
            q.col(q.cols() - 1) = pick;
        }
    }

    std::vector<Matrix> out;
    for (const Chain& c : chains) {
        Matrix cols(m, c.length);
        cols.col(c.length - 1) = c.top;
        for (int j = c.length - 2; j >= 0; --j) cols.col(j) = nil * cols.col(j + 1);
        const double n1 = cols.col(0).norm();
        if (n1 > 0.0) cols /= n1;
        out.push_back(std::move(cols));
    }
    return out;
}

}  // namespace detail

inline JordanDecomposition jordan_form(const Matrix& h, const ToleranceConfig& tol = {}) {
    require_square_even(h, "jordan_form");
    const Eigen::Index n = h.rows();
    const FrequencySpectrum spectrum = natural_frequencies(h, tol);
    const std::vector<EigenCluster> clusters = cluster_eigenvalues(spectrum.lambdas, tol);

    struct Piece {
        complex lambda;
        Matrix columns;
    };
    std::vector<Piece> pieces;
    for (const EigenCluster& c : clusters) {
        const auto m = static_cast<Eigen::Index>(c.members.size());
        const Matrix shifted = h - c.representative * Matrix::Identity(n, n);
        Matrix power = Matrix::Identity(n, n);
        for (Eigen::Index p = 0; p < m; ++p) power = shifted * power;
        // Generalized eigenspace: the m smallest right singular vectors of (H − λI)ᵐ.
        const Matrix g = linalg::smallest_right_singular(power, m);
        const Matrix nil = g.adjoint() * shifted * g;
        for (Matrix& chain : detail::nilpotent_chains(nil, linalg::largest_singular(shifted), tol)) {
            pieces.push_back({c.representative, g * chain});
        }
    }
    std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
        if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
        if (a.lambda.imag() != b.lambda.imag()) return a.lambda.imag() < b.lambda.imag();
        return a.columns.cols() > b.columns.cols();
    });

    JordanDecomposition out;
    out.transform.resize(n, n);
    Eigen::Index at = 0;
    for (const Piece& p : pieces) {
        out.transform.middleCols(at, p.columns.cols()) = p.columns;
        out.blocks.push_back({p.lambda, static_cast<int>(p.columns.cols())});
        const Matrix shifted = h - p.lambda * Matrix::Identity(n, n);
        out.chain_residual = std::max(out.chain_residual, (shifted * p.columns.col(0)).norm());
        for (Eigen::Index j = 1; j < p.columns.cols(); ++j) {
            out.chain_residual =
                std::max(out.chain_residual, (shifted * p.columns.col(j) - p.columns.col(j - 1)).norm());
        }
        at += p.columns.cols();
    }
    if (at != n) throw numerical_degeneracy_error("jordan_form: chain lengths do not add up to 2K");

    Eigen::JacobiSVD<Matrix> svd(out.transform);
    const RealVector& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= tol.rank_tol * sv(0)) {
        throw numerical_degeneracy_error(
            "jordan_form: transform matrix is numerically singular; try adjusting rank_tol or coalesce_tol");
    }
    const Matrix similar = out.transform.fullPivLu().solve(h * out.transform);
    out.similarity_residual = max_abs(similar - out.jordan());
    return out;
}

}  // namespace qadj
