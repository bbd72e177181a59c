// spectral.hpp — natural frequencies, ladder operators, pairing commutators, normal form
//
// Eigenvalues of the adjoint matrix come in ± pairs (P(λ) is a polynomial in λ²).
// Each eigenvector C gives a ladder operator Z = Σ c_i O_i with [H, Z] = λZ, and
// H = −Σ_j (λ_j/σ_j) Z_{2K−j+1} Z_j + E₀ with σ_j = [Z_j, Z_{2K−j+1}].

#pragma once

#include "qadj/algebra.hpp"
#include "qadj/core.hpp"
#include "qadj/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qadj {

// --------------------------- characteristic polynomial ----------------------

struct CharPoly {
    std::vector<complex> coeffs;     // det(H − λI), descending degree, size 2K+1
    std::vector<complex> even_part;  // same polynomial in μ = λ², descending, size K+1

    int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
};

// Horner evaluation of a descending coefficient list.
inline complex evaluate(std::span<const complex> coeffs, complex x) {
    complex acc{};
    for (complex c : coeffs) acc = acc * x + c;
    return acc;
}

inline Matrix evaluate(std::span<const complex> coeffs, const Matrix& h) {
    Matrix acc = Matrix::Zero(h.rows(), h.cols());
    const Matrix id = Matrix::Identity(h.rows(), h.cols());
    for (complex c : coeffs) acc = acc * h + c * id;
    return acc;
}

// Faddeev–LeVerrier: M_1 = I, c_{n−k} = −tr(H M_k)/k, M_{k+1} = H M_k + c_{n−k} I.
// For even n, det(H − λI) = det(λI − H), so the recurrence output is used as is.
inline CharPoly characteristic_polynomial(const Matrix& h, const ToleranceConfig& tol = {}) {
    require_square_even(h, "characteristic_polynomial");
    const Eigen::Index n = h.rows();
    const Matrix id = Matrix::Identity(n, n);

    CharPoly out;
    out.coeffs.assign(static_cast<std::size_t>(n + 1), complex{});
    out.coeffs[0] = 1.0;
    Matrix m = id;
    for (Eigen::Index k = 1; k <= n; ++k) {
        const Matrix hm = h * m;
        const complex c = -hm.trace() / static_cast<double>(k);
        out.coeffs[static_cast<std::size_t>(k)] = c;
        m = hm + c * id;
    }

    // Coefficient of λ^{n−j} scales like ‖H‖^j.
    const double norm = h.norm();
    for (Eigen::Index j = 1; j <= n; j += 2) {
        const double bound = tol.eq_tol * (1.0 + std::pow(norm, static_cast<double>(j)));
        if (std::abs(out.coeffs[static_cast<std::size_t>(j)]) > bound) {
            throw structure_error("characteristic_polynomial: odd-degree coefficient of lambda^" +
                                  std::to_string(n - j) +
                                  " does not vanish; input is not the adjoint matrix of a quadratic Hamiltonian");
        }
    }
    for (Eigen::Index j = 0; j <= n; j += 2) out.even_part.push_back(out.coeffs[static_cast<std::size_t>(j)]);
    return out;
}

// --------------------------- frequency spectrum -----------------------------

enum class SpectrumClass { all_real, complex_pairs, degenerate };

inline std::string_view to_string(SpectrumClass c) {
    switch (c) {
        case SpectrumClass::all_real: return "all-real";
        case SpectrumClass::complex_pairs: return "complex-pairs";
        case SpectrumClass::degenerate: return "degenerate";
    }
    return "unknown";
}

struct FrequencySpectrum {
    // λ_j = −λ_{2K−j+1}; the lower half is sorted by (Re λ, Im λ). For an all-real
    // spectrum this gives λ_1 < … < λ_K < 0 < λ_{K+1} < … < λ_{2K}.
    std::vector<complex> lambdas;
    std::vector<complex> mu_roots;  // roots of the even part, in the order of the lower half
    SpectrumClass classification = SpectrumClass::all_real;
    std::vector<std::pair<int, int>> pairing;  // zero-based (j, 2K−1−j)

    int dof() const noexcept { return static_cast<int>(lambdas.size() / 2); }
    double spectral_radius() const {
        double r = 0.0;
        for (complex l : lambdas) r = std::max(r, std::abs(l));
        return r;
    }
};

namespace detail {

inline bool lex_less(complex a, complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// Roots of μ^K + e_1 μ^{K−1} + … + e_K.
inline std::vector<complex> even_part_roots(const std::vector<complex>& e) {
    const std::size_t k = e.size() - 1;
    if (k == 1) return {-e[1]};
    if (k == 2) {
        const complex b = e[1];
        const complex c = e[2];
        complex disc = b * b - 4.0 * c;
        // A discriminant at rounding level means the two roots coincide.
        const double eps = std::numeric_limits<double>::epsilon();
        if (std::abs(disc) <= 64.0 * eps * (std::norm(b) + 4.0 * std::abs(c))) disc = 0.0;
        const complex sq = std::sqrt(disc);
        // Pick the sign that avoids cancellation, then use the product of roots.
        const complex q = (std::real(std::conj(b) * sq) >= 0.0) ? -0.5 * (b + sq) : -0.5 * (b - sq);
        if (q == complex{}) return {complex{}, complex{}};
        return {q, c / q};
    }
    const auto n = static_cast<Eigen::Index>(k);
    Matrix companion = Matrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) companion(0, j) = -e[static_cast<std::size_t>(j + 1)];
    for (Eigen::Index j = 1; j < n; ++j) companion(j, j - 1) = 1.0;
    Eigen::ComplexEigenSolver<Matrix> solver(companion, false);
    if (solver.info() != Eigen::Success) throw numerical_degeneracy_error("even_part_roots: companion eigensolve failed");
    std::vector<complex> out(k);
    for (std::size_t j = 0; j < k; ++j) out[j] = solver.eigenvalues()(static_cast<Eigen::Index>(j));
    return out;
}

inline double coalesce_threshold(double radius, const ToleranceConfig& tol) {
    return tol.coalesce_tol * (radius > 0.0 ? radius : 1.0);
}

}  // namespace detail

inline FrequencySpectrum spectrum_from_charpoly(const CharPoly& poly, const ToleranceConfig& tol = {}) {
    std::vector<complex> mus = detail::even_part_roots(poly.even_part);
    const std::size_t k = mus.size();

    for (complex& mu : mus) {
        if (std::abs(mu.imag()) <= tol.eq_tol * (1.0 + std::abs(mu))) mu = {mu.real(), 0.0};
    }

    // Principal root is the positive member; the lower half holds the negations.
    std::vector<std::pair<complex, complex>> lower;  // (λ, μ)
    lower.reserve(k);
    for (complex mu : mus) lower.emplace_back(-std::sqrt(mu), mu);

    double radius = 0.0;
    for (const auto& [l, mu] : lower) radius = std::max(radius, std::abs(l));
    const double thr = detail::coalesce_threshold(radius, tol);

    FrequencySpectrum out;
    std::vector<complex> all;
    for (const auto& [l, mu] : lower) {
        all.push_back(l);
        all.push_back(-l);
    }
    bool degenerate = false;
    for (std::size_t a = 0; a < all.size() && !degenerate; ++a) {
        for (std::size_t b = a + 1; b < all.size(); ++b) {
            if (std::abs(all[a] - all[b]) <= thr) {
                degenerate = true;
                break;
            }
        }
    }
    const bool real = std::all_of(lower.begin(), lower.end(),
                                  [&](const auto& e) { return std::abs(e.first.imag()) <= thr; });
    if (real) {
        for (auto& e : lower) e.first = {e.first.real(), 0.0};
    }
    out.classification = degenerate ? SpectrumClass::degenerate
                         : real     ? SpectrumClass::all_real
                                    : SpectrumClass::complex_pairs;

    std::stable_sort(lower.begin(), lower.end(),
                     [](const auto& x, const auto& y) { return detail::lex_less(x.first, y.first); });
    out.lambdas.assign(2 * k, complex{});
    for (std::size_t j = 0; j < k; ++j) {
        out.lambdas[j] = lower[j].first;
        out.lambdas[2 * k - 1 - j] = -lower[j].first;
        out.mu_roots.push_back(lower[j].second);
        out.pairing.emplace_back(static_cast<int>(j), static_cast<int>(2 * k - 1 - j));
    }
    return out;
}

inline FrequencySpectrum natural_frequencies(const Matrix& h, const ToleranceConfig& tol = {}) {
    return spectrum_from_charpoly(characteristic_polynomial(h, tol), tol);
}

inline FrequencySpectrum natural_frequencies(const QuadraticHamiltonian& q, const ToleranceConfig& tol = {}) {
    return natural_frequencies(adjoint_matrix(q), tol);
}

// --------------------------- eigenvalue clusters ----------------------------

struct EigenCluster {
    complex representative;
    std::vector<int> members;  // indices into the eigenvalue list
};

// Single-linkage grouping within coalesce_tol·(spectral radius); representatives are means.
inline std::vector<EigenCluster> cluster_eigenvalues(const std::vector<complex>& lambdas, const ToleranceConfig& tol = {}) {
    double radius = 0.0;
    for (complex l : lambdas) radius = std::max(radius, std::abs(l));
    const double thr = detail::coalesce_threshold(radius, tol);

    const std::size_t n = lambdas.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (std::abs(lambdas[a] - lambdas[b]) <= thr) parent[find(a)] = find(b);
        }
    }
    std::vector<EigenCluster> out;
    std::vector<std::ptrdiff_t> slot(n, -1);
    for (std::size_t a = 0; a < n; ++a) {
        const std::size_t r = find(a);
        if (slot[r] < 0) {
            slot[r] = static_cast<std::ptrdiff_t>(out.size());
            out.push_back({});
        }
        out[static_cast<std::size_t>(slot[r])].members.push_back(static_cast<int>(a));
    }
    for (auto& c : out) {
        complex sum{};
        for (int m : c.members) sum += lambdas[static_cast<std::size_t>(m)];
        c.representative = sum / static_cast<double>(c.members.size());
    }
    std::stable_sort(out.begin(), out.end(), [](const EigenCluster& a, const EigenCluster& b) {
        return detail::lex_less(a.representative, b.representative);
    });
    return out;
}

// --------------------------- ladder operators -------------------------------

struct LadderOperator {
    LinearForm form;
    complex lambda;
};

struct SpectralDecomposition {
    FrequencySpectrum spectrum;
    std::vector<LadderOperator> ladders;  // ordered like spectrum.lambdas
    std::vector<complex> sigmas;          // σ_j = [Z_j, Z_{2K−j+1}], j = 1..K
    complex ground_energy{};
};

struct Reconstruction {
    QuadraticHamiltonian hamiltonian;  // canonical; offset includes E₀
    complex ground_energy;
    double gamma_residual;  // ‖γ_rec − γ_canon‖_max
};

inline double sigma_threshold(const SpectralDecomposition& d, int j, const ToleranceConfig& tol) {
    const int k = d.spectrum.dof();
    return tol.rank_tol * d.ladders[static_cast<std::size_t>(j)].form.coeffs().norm() *
           d.ladders[static_cast<std::size_t>(2 * k - 1 - j)].form.coeffs().norm();
}

// Expands −Σ_j (λ_j/σ_j) Z_{2K−j+1} Z_j and reads E₀ off the constant term.
inline Reconstruction reconstruct(const QuadraticHamiltonian& q, const SpectralDecomposition& d,
                                  const ToleranceConfig& tol = {}) {
    const int k = q.dof();
    if (static_cast<int>(d.ladders.size()) != 2 * k || static_cast<int>(d.sigmas.size()) != k) {
        throw invalid_argument("reconstruct: decomposition does not match the Hamiltonian dimension");
    }
    QuadraticHamiltonian sum = QuadraticHamiltonian::zero(q.basis());
    for (int j = 0; j < k; ++j) {
        const complex sigma = d.sigmas[static_cast<std::size_t>(j)];
        if (std::abs(sigma) <= sigma_threshold(d, j, tol)) {
            throw exceptional_point_error("reconstruct: sigma_" + std::to_string(j + 1) +
                                          " vanishes (commutator breaking at an exceptional point)");
        }
        const LadderOperator& zj = d.ladders[static_cast<std::size_t>(j)];
        const LadderOperator& zp = d.ladders[static_cast<std::size_t>(2 * k - 1 - j)];
        sum = sum + (-zj.lambda / sigma) * product(zp.form, zj.form);
    }
    const QuadraticHamiltonian rec = canonicalize(sum);
    const QuadraticHamiltonian target = canonicalize(q);
    const complex e0 = target.offset() - rec.offset();
    const double residual = max_abs(rec.gamma() - target.gamma());
    return {QuadraticHamiltonian(q.basis(), rec.gamma(), rec.offset() + e0), e0, residual};
}

// One ladder operator per eigenvalue (nullspace of H − λI), gauge-fixed to unit
// norm with the first nonzero component real positive.
inline SpectralDecomposition ladder_operators(const QuadraticHamiltonian& q, const FrequencySpectrum& spectrum,
                                              const ToleranceConfig& tol = {}) {
    if (spectrum.classification == SpectrumClass::degenerate) {
        throw degenerate_spectrum_error(
            "ladder_operators: spectrum is degenerate; use the Jordan decomposition for this case");
    }
    const Matrix h = adjoint_matrix(q);
    const Eigen::Index n = h.rows();
    if (static_cast<Eigen::Index>(spectrum.lambdas.size()) != n) {
        throw invalid_argument("ladder_operators: spectrum does not match the Hamiltonian dimension");
    }

    SpectralDecomposition out;
    out.spectrum = spectrum;
    for (complex lambda : spectrum.lambdas) {
        const Matrix shifted = h - lambda * Matrix::Identity(n, n);
        const double smax = linalg::largest_singular(shifted);
        Matrix ns = linalg::null_space(shifted, tol.rank_tol * (smax > 0.0 ? smax : 1.0));
        if (ns.cols() > 1) {
            throw defective_error("ladder_operators: eigenspace dimension exceeds algebraic multiplicity 1");
        }
        if (ns.cols() == 0) ns = linalg::smallest_right_singular(shifted, 1);
        Vector c = linalg::fix_gauge(ns.col(0), tol.rank_tol);
        const double resid = (h * c - lambda * c).norm();
        if (resid > tol.eq_tol * (1.0 + h.norm())) {
            throw numerical_degeneracy_error("ladder_operators: eigenvector residual exceeds eq_tol");
        }
        out.ladders.push_back({LinearForm(q.basis(), std::move(c)), lambda});
    }
    const int k = q.dof();
    for (int j = 0; j < k; ++j) {
        out.sigmas.push_back(commute_linear(out.ladders[static_cast<std::size_t>(j)].form,
                                            out.ladders[static_cast<std::size_t>(2 * k - 1 - j)].form));
    }
    out.ground_energy = reconstruct(q, out, tol).ground_energy;
    return out;
}

inline SpectralDecomposition ladder_operators(const QuadraticHamiltonian& q, const ToleranceConfig& tol = {}) {
    return ladder_operators(q, natural_frequencies(q, tol), tol);
}

// Rescale a ladder so its coefficients best match `reference` (least squares).
inline LinearForm rescale_to_reference(const LinearForm& z, const Vector& reference) {
    const complex s = z.coeffs().dot(reference) / z.coeffs().squaredNorm();
    return z.scaled(s);
}

// max_ij |a_i b_j − a_j b_i| / (‖a‖‖b‖): zero iff a and b are parallel.
inline double proportionality_residual(const Vector& a, const Vector& b) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        for (Eigen::Index j = i + 1; j < a.size(); ++j) {
            worst = std::max(worst, std::abs(a(i) * b(j) - a(j) * b(i)));
        }
    }
    const double scale = a.norm() * b.norm();
    return scale > 0.0 ? worst / scale : worst;
}

// Basis-independent pairing strengths |σ| for unit eigenvectors, K values in
// total. Within a coalesced cluster the strengths are the singular values of
// W₊ᵗ U W₋ for orthonormal eigenspace bases W±, padded with zeros for every
// missing eigenvector, so a defective cluster always reports a vanishing pair.
inline std::vector<double> pairing_strengths(const Matrix& h, const FrequencySpectrum& spectrum,
                                             const ToleranceConfig& tol = {}) {
    require_square_even(h, "pairing_strengths");
    const Eigen::Index n = h.rows();
    const Matrix u = symplectic_matrix(static_cast<int>(n / 2)).matrix;
    const std::vector<EigenCluster> clusters = cluster_eigenvalues(spectrum.lambdas, tol);

    auto eigenspace = [&](complex lambda) {
        const Matrix shifted = h - lambda * Matrix::Identity(n, n);
        const double smax = linalg::largest_singular(shifted);
        Matrix ns = linalg::null_space(shifted, tol.rank_tol * (smax > 0.0 ? smax : 1.0));
        if (ns.cols() == 0) ns = linalg::smallest_right_singular(shifted, 1);
        return ns;
    };

    const double thr = detail::coalesce_threshold(spectrum.spectral_radius(), tol);
    std::vector<double> out;
    std::vector<bool> used(clusters.size(), false);
    for (std::size_t a = 0; a < clusters.size(); ++a) {
        if (used[a]) continue;
        std::size_t partner = a;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t b = 0; b < clusters.size(); ++b) {
            const double d = std::abs(clusters[a].representative + clusters[b].representative);
            if (d < best) {
                best = d;
                partner = b;
            }
        }
        if (best > thr) continue;  // unpaired cluster cannot occur for a valid adjoint matrix
        used[a] = used[partner] = true;
        const Matrix wa = eigenspace(clusters[a].representative);
        const Matrix wb = eigenspace(clusters[partner].representative);
        const Matrix pairing = wa.transpose() * u * wb;
        Eigen::JacobiSVD<Matrix> svd(pairing);
        const RealVector& s = svd.singularValues();
        // A self-paired cluster (λ ≈ 0) holds both partners, so it yields half as many pairs.
        const std::size_t expect = partner == a ? clusters[a].members.size() / 2 : clusters[a].members.size();
        for (std::size_t i = 0; i < expect; ++i) {
            out.push_back(static_cast<Eigen::Index>(i) < s.size() ? s(static_cast<Eigen::Index>(i)) : 0.0);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace qadj
