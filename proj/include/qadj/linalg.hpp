// linalg.hpp — small dense helpers shared by the spectral and Jordan code

#pragma once

#include "qadj/core.hpp"

#include <Eigen/SVD>

#include <vector>

namespace qadj::linalg {

// Right singular vectors whose singular values fall at or below `threshold`,
// returned as columns (smallest singular value first).
inline Matrix null_space(const Matrix& a, double threshold) {
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
    const RealVector& s = svd.singularValues();
    const Matrix& v = svd.matrixV();
    const Eigen::Index n = a.cols();
    // Columns beyond the row count have an implicit zero singular value.
    std::vector<Eigen::Index> picked;
    for (Eigen::Index j = n - 1; j >= 0; --j) {
        const double sj = j < s.size() ? s(j) : 0.0;
        if (sj <= threshold) picked.push_back(j);
    }
    Matrix out(a.cols(), static_cast<Eigen::Index>(picked.size()));
    for (std::size_t c = 0; c < picked.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = v.col(picked[c]);
    return out;
}

// The `count` right singular vectors with the smallest singular values.
inline Matrix smallest_right_singular(const Matrix& a, Eigen::Index count) {
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
    const Matrix& v = svd.matrixV();
    Matrix out(a.cols(), count);
    for (Eigen::Index c = 0; c < count; ++c) out.col(c) = v.col(a.cols() - 1 - c);
    return out;
}

inline double largest_singular(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

inline Eigen::Index numerical_rank(const Matrix& a, double threshold) {
    if (a.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(a);
    const RealVector& s = svd.singularValues();
    Eigen::Index r = 0;
    for (Eigen::Index j = 0; j < s.size(); ++j) {
        if (s(j) > threshold) ++r;
    }
    return r;
}

// Unit Euclidean norm with the first component above `floor` rotated to the
// positive real axis.
inline Vector fix_gauge(const Vector& v, double floor) {
    const double n = v.norm();
    if (n == 0.0) return v;
    Vector u = v / n;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        if (std::abs(u(i)) > floor) {
            u *= std::conj(u(i)) / std::abs(u(i));
            u(i) = std::abs(u(i));
            break;
        }
    }
    return u;
}

}  // namespace qadj::linalg
