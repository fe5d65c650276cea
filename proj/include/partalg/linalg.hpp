#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "partalg/config.hpp"

namespace partalg {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Eigenvalue clusters of a Hermitian matrix: one representative value and one
// spectral projector per cluster, ordered by descending eigenvalue.
struct SpectralClusters {
    std::vector<double> values;
    std::vector<CMat> projectors;
};

// Operator Schmidt decomposition of f acting on C^{da*db}:
//   f = sum_k weights[k] * kron(left[k], right[k])
// with both operator families orthonormal in Hilbert-Schmidt norm and
// weights strictly positive, descending.
struct SchmidtTerms {
    std::vector<double> weights;
    std::vector<CMat> left;
    std::vector<CMat> right;
};

// Hilbert-Schmidt inner product, conjugate-linear in the first slot.
Complex hs_inner(const CMat& a, const CMat& b);

double hs_norm(const CMat& a);

// Column-major vectorization (Eigen's natural layout).
CVec vectorize(const CMat& m);
CMat unvectorize(const CVec& v, int rows, int cols);

// Gram-Schmidt in the Hilbert-Schmidt geometry, processing `mats` in input
// order against the (already orthonormal) `seed` family.  Vectors whose
// residual falls below the rank threshold are dropped.  Returns the *new*
// orthonormal elements only.
std::vector<CMat> orthonormalize_against(const std::vector<CMat>& seed,
                                         const std::vector<CMat>& mats,
                                         const Config& cfg = {});

std::vector<CMat> orthonormalize(const std::vector<CMat>& mats,
                                 const Config& cfg = {});

// Orthonormal basis of the kernel of m (columns of the result).  The rank
// cutoff is tol * sigma_max * sqrt(max(rows, cols)).
CMat nullspace(const CMat& m, const Config& cfg = {}, double scale = 0.0);

// Numerical rank with the same cutoff as nullspace().
int numerical_rank(const CMat& m, const Config& cfg = {});

// Cluster the spectrum of a Hermitian matrix, merging eigenvalues closer
// than gap_tol.  Throws std::runtime_error on ambiguous clustering, i.e.
// when a gap falls inside [gap_tol/2, 2*gap_tol] so the split would be
// seed-sensitive.
SpectralClusters spectral_clusters(const CMat& h, const Config& cfg = {});

// Operator Schmidt decomposition across the (da, db) tensor split.
SchmidtTerms operator_schmidt(const CMat& f, int da, int db,
                              const Config& cfg = {});

// Isometry part of the polar decomposition (U from m = U P restricted to the
// support of m).
CMat polar_isometry(const CMat& m, const Config& cfg = {});

// --- small helpers shared across modules ---

CMat kron(const CMat& a, const CMat& b);

// Partial trace of f on C^{da*db} over the first / second tensor factor.
CMat ptrace_first(const CMat& f, int da, int db);
CMat ptrace_second(const CMat& f, int da, int db);

// Orthogonal projector (in HS space) onto span of an orthonormal family,
// applied to x.
CMat project_span(const std::vector<CMat>& basis, const CMat& x);

// Frobenius distance between the HS projectors onto two spans; the standard
// "same subspace" test used throughout (threshold 10*tol by convention).
double subspace_distance(const std::vector<CMat>& a,
                         const std::vector<CMat>& b);

bool same_subspace(const std::vector<CMat>& a, const std::vector<CMat>& b,
                   const Config& cfg = {});

// Is x in span(basis)?  basis need not be orthonormal.
bool in_span(const std::vector<CMat>& basis, const CMat& x,
             const Config& cfg = {});

// Deterministic PRNG stream for randomized constructions.
CMat random_matrix(int rows, int cols, std::uint64_t seed);
CMat random_hermitian(int dim, std::uint64_t seed);

} // namespace partalg
