#include "partalg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace partalg {

Complex hs_inner(const CMat& a, const CMat& b) {
    return (a.adjoint() * b).trace();
}

double hs_norm(const CMat& a) { return a.norm(); }

CVec vectorize(const CMat& m) {
    return Eigen::Map<const CVec>(m.data(), m.size());
}

CMat unvectorize(const CVec& v, int rows, int cols) {
    return Eigen::Map<const CMat>(v.data(), rows, cols);
}

std::vector<CMat> orthonormalize_against(const std::vector<CMat>& seed,
                                         const std::vector<CMat>& mats,
                                         const Config& cfg) {
    std::vector<CMat> out;
    if (mats.empty()) return out;

    double scale = 1.0;
    for (const auto& m : mats) scale = std::max(scale, m.norm());
    const double dim = static_cast<double>(mats.front().size());
    const double cutoff = cfg.tol * scale * std::sqrt(dim);

    for (const auto& m : mats) {
        CMat r = m;
        // two passes of modified Gram-Schmidt for numerical stability
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : seed) r -= hs_inner(b, r) * b;
            for (const auto& b : out) r -= hs_inner(b, r) * b;
        }
        const double n = r.norm();
        if (n > cutoff) out.push_back(r / n);
    }
    return out;
}

std::vector<CMat> orthonormalize(const std::vector<CMat>& mats,
                                 const Config& cfg) {
    return orthonormalize_against({}, mats, cfg);
}

CMat nullspace(const CMat& m, const Config& cfg, double scale) {
    if (m.rows() == 0)  // no constraints: everything is in the kernel
        return CMat::Identity(m.cols(), m.cols());
    Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    // `scale` anchors the cutoff when the whole matrix may consist of
    // rounding noise (all constraints trivially satisfied); without it the
    // relative cutoff would promote that noise to full rank
    const double smax = std::max(sv.size() ? sv(0) : 0.0, scale);
    const double cutoff =
        cfg.tol * smax * std::sqrt(double(std::max(m.rows(), m.cols())));
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;
    return svd.matrixV().rightCols(m.cols() - rank);
}

int numerical_rank(const CMat& m, const Config& cfg) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<CMat> svd(m);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    const double cutoff =
        cfg.tol * smax * std::sqrt(double(std::max(m.rows(), m.cols())));
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;
    return rank;
}

SpectralClusters spectral_clusters(const CMat& h, const Config& cfg) {
    if ((h - h.adjoint()).norm() > cfg.tol * std::max(1.0, h.norm()))
        throw std::invalid_argument("spectral_clusters: matrix not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("spectral_clusters: eigensolver failed");

    const auto& ev = es.eigenvalues();  // ascending
    const int n = int(ev.size());

    // ambiguity guard: any gap within a factor 2 of gap_tol is unsafe to
    // classify either way
    for (int i = 0; i + 1 < n; ++i) {
        const double gap = ev(i + 1) - ev(i);
        if (gap >= 0.5 * cfg.gap_tol && gap <= 2.0 * cfg.gap_tol)
            throw std::runtime_error("spectral_clusters: ambiguous clustering");
    }

    SpectralClusters out;
    int i = 0;
    while (i < n) {
        int j = i;
        while (j + 1 < n && ev(j + 1) - ev(j) < cfg.gap_tol) ++j;
        double mean = 0.0;
        CMat proj = CMat::Zero(h.rows(), h.cols());
        for (int k = i; k <= j; ++k) {
            mean += ev(k);
            proj += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
        }
        out.values.push_back(mean / double(j - i + 1));
        out.projectors.push_back(proj);
        i = j + 1;
    }
    // descending eigenvalue order
    std::reverse(out.values.begin(), out.values.end());
    std::reverse(out.projectors.begin(), out.projectors.end());
    return out;
}

SchmidtTerms operator_schmidt(const CMat& f, int da, int db,
                              const Config& cfg) {
    if (f.rows() != da * db || f.cols() != da * db)
        throw std::invalid_argument("operator_schmidt: shape mismatch");
    // reshuffle: R[(i,i'), (j,j')] = f[(i,j), (i',j')] with row index (i,j)
    // for kron(A, B)[(i,j), (i',j')] = A(i,i') B(j,j')
    CMat r(da * da, db * db);
    for (int i = 0; i < da; ++i)
        for (int ip = 0; ip < da; ++ip)
            for (int j = 0; j < db; ++j)
                for (int jp = 0; jp < db; ++jp)
                    r(i * da + ip, j * db + jp) = f(i * db + j, ip * db + jp);

    Eigen::JacobiSVD<CMat> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    const double cutoff =
        cfg.tol * smax * std::sqrt(double(std::max(r.rows(), r.cols())));

    SchmidtTerms out;
    for (int k = 0; k < sv.size(); ++k) {
        if (sv(k) <= cutoff) break;
        out.weights.push_back(sv(k));
        out.left.push_back(unvectorize(svd.matrixU().col(k), da, da).transpose());
        out.right.push_back(
            unvectorize(svd.matrixV().col(k).conjugate(), db, db).transpose());
    }
    return out;
}

CMat polar_isometry(const CMat& m, const Config& cfg) {
    Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    const double cutoff =
        cfg.tol * smax * std::sqrt(double(std::max(m.rows(), m.cols())));
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;
    return svd.matrixU().leftCols(rank) * svd.matrixV().leftCols(rank).adjoint();
}

CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
    return out;
}

CMat ptrace_first(const CMat& f, int da, int db) {
    CMat out = CMat::Zero(db, db);
    for (int i = 0; i < da; ++i)
        out += f.block(i * db, i * db, db, db);
    return out;
}

CMat ptrace_second(const CMat& f, int da, int db) {
    CMat out = CMat::Zero(da, da);
    for (int i = 0; i < da; ++i)
        for (int ip = 0; ip < da; ++ip) {
            Complex s = 0.0;
            for (int j = 0; j < db; ++j) s += f(i * db + j, ip * db + j);
            out(i, ip) = s;
        }
    return out;
}

CMat project_span(const std::vector<CMat>& basis, const CMat& x) {
    CMat out = CMat::Zero(x.rows(), x.cols());
    for (const auto& b : basis) out += hs_inner(b, x) * b;
    return out;
}

double subspace_distance(const std::vector<CMat>& a,
                         const std::vector<CMat>& b) {
    // ||P_a - P_b||_F, but accumulated from projection residuals instead of
    // the trace identity dim a + dim b - 2 sum |<a_i, b_j>|^2: the latter
    // cancels catastrophically and leaves a ~1e-8 noise floor on equal spans
    auto residuals = [](const std::vector<CMat>& xs,
                        const std::vector<CMat>& onb) {
        double r2 = 0.0;
        for (const auto& x : xs) {
            CMat r = x;
            for (const auto& y : onb) r -= hs_inner(y, x) * y;
            r2 += r.squaredNorm();
        }
        return r2;
    };
    return std::sqrt(residuals(a, b) + residuals(b, a));
}

bool same_subspace(const std::vector<CMat>& a, const std::vector<CMat>& b,
                   const Config& cfg) {
    return subspace_distance(a, b) < 10.0 * cfg.tol;
}

bool in_span(const std::vector<CMat>& basis, const CMat& x,
             const Config& cfg) {
    auto on = orthonormalize(basis, cfg);
    const double resid = (x - project_span(on, x)).norm();
    return resid <= 10.0 * cfg.tol * std::max(1.0, x.norm());
}

CMat random_matrix(int rows, int cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    CMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const double re = g(rng);
            const double im = g(rng);
            m(i, j) = Complex(re, im);
        }
    return m;
}

CMat random_hermitian(int dim, std::uint64_t seed) {
    CMat m = random_matrix(dim, dim, seed);
    return 0.5 * (m + m.adjoint());
}

} // namespace partalg
