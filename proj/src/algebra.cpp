#include "partalg/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace partalg {

namespace {

// Hermitian spanning family of a *-closed span.
std::vector<CMat> hermitian_family(const std::vector<CMat>& basis) {
    std::vector<CMat> fam;
    fam.reserve(2 * basis.size());
    const Complex I(0.0, 1.0);
    for (const auto& b : basis) {
        fam.push_back(0.5 * (b + CMat(b.adjoint())));
        fam.push_back(0.5 * I * (b - CMat(b.adjoint())));
    }
    return fam;
}

// seeded real coefficients
std::vector<double> random_coeffs(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> c(n);
    for (auto& x : c) x = g(rng);
    return c;
}

} // namespace

OperatorAlgebra full_algebra(int ambient_dim) {
    OperatorAlgebra a;
    a.ambient_dim = ambient_dim;
    a.unit = CMat::Identity(ambient_dim, ambient_dim);
    const double inv = 1.0;  // matrix units are already HS-orthonormal
    a.basis.reserve(std::size_t(ambient_dim) * ambient_dim);
    for (int i = 0; i < ambient_dim; ++i)
        for (int j = 0; j < ambient_dim; ++j) {
            CMat e = CMat::Zero(ambient_dim, ambient_dim);
            e(i, j) = inv;
            a.basis.push_back(e);
        }
    return a;
}

OperatorAlgebra trivial_algebra(int ambient_dim) {
    OperatorAlgebra a;
    a.ambient_dim = ambient_dim;
    a.unit = CMat::Identity(ambient_dim, ambient_dim);
    a.basis.push_back(a.unit / std::sqrt(double(ambient_dim)));
    return a;
}

OperatorAlgebra generate(int ambient_dim, const std::vector<CMat>& generators,
                         const Config& cfg, const OperatorAlgebra* ambient,
                         int cap) {
    if (cap < 0) cap = ambient_dim * ambient_dim;
    for (const auto& g : generators)
        if (g.rows() != ambient_dim || g.cols() != ambient_dim)
            throw std::invalid_argument("generate: generator shape mismatch");
    if (ambient)
        for (const auto& g : generators)
            if (!in_span(ambient->basis, g, cfg))
                throw std::invalid_argument(
                    "generate: generator outside ambient algebra");

    std::vector<CMat> start;
    start.push_back(CMat::Identity(ambient_dim, ambient_dim));
    for (const auto& g : generators) {
        start.push_back(g);
        start.push_back(g.adjoint());
    }

    std::vector<CMat> basis = orthonormalize(start, cfg);
    std::vector<CMat> fresh = basis;
    while (!fresh.empty()) {
        std::vector<CMat> cand;
        cand.reserve(2 * fresh.size() * basis.size());
        for (const auto& f : fresh)
            for (const auto& b : basis) {
                cand.push_back(f * b);
                cand.push_back(b * f);
            }
        fresh = orthonormalize_against(basis, cand, cfg);
        basis.insert(basis.end(), fresh.begin(), fresh.end());
        if (int(basis.size()) > cap)
            throw std::runtime_error("generate: closure exceeded cap");
    }

    OperatorAlgebra a;
    a.ambient_dim = ambient_dim;
    a.basis = std::move(basis);
    a.unit = CMat::Identity(ambient_dim, ambient_dim);
    return a;
}

OperatorAlgebra commutant(const OperatorAlgebra& a,
                          const OperatorAlgebra& within, const Config& cfg) {
    const int D = a.ambient_dim;
    if (within.ambient_dim != D)
        throw std::invalid_argument("commutant: ambient mismatch");
    for (const auto& b : a.basis)
        if (!in_span(within.basis, b, cfg))
            throw std::invalid_argument("commutant: algebra not inside scope");

    const int m = within.dim();
    CMat constraints(std::int64_t(a.dim()) * D * D, m);
    for (int j = 0; j < m; ++j) {
        const CMat& w = within.basis[j];
        for (int i = 0; i < a.dim(); ++i) {
            const CMat c = w * a.basis[i] - a.basis[i] * w;
            constraints.block(std::int64_t(i) * D * D, j, D * D, 1) =
                vectorize(c);
        }
    }
    // scale anchor 1: the basis elements are HS-normalized, so genuine
    // non-commutation shows up at order one
    CMat null = nullspace(constraints, cfg, 1.0);

    std::vector<CMat> mats;
    mats.reserve(null.cols());
    for (int k = 0; k < null.cols(); ++k) {
        CMat f = CMat::Zero(D, D);
        for (int j = 0; j < m; ++j) f += null(j, k) * within.basis[j];
        mats.push_back(f);
    }

    OperatorAlgebra out;
    out.ambient_dim = D;
    out.basis = orthonormalize(mats, cfg);
    out.unit = within.unit;
    return out;
}

OperatorAlgebra commutant(const OperatorAlgebra& a, const Config& cfg) {
    return commutant(a, full_algebra(a.ambient_dim), cfg);
}

OperatorAlgebra centre(const OperatorAlgebra& a, const Config& cfg) {
    return commutant(a, a, cfg);
}

std::vector<CMat> atomic_projectors(const OperatorAlgebra& z,
                                    const Config& cfg) {
    const auto herm = orthonormalize(hermitian_family(z.basis), cfg);
    if (int(herm.size()) != z.dim())
        throw std::invalid_argument(
            "atomic_projectors: algebra is not *-closed");

    for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
        const auto c = random_coeffs(int(herm.size()), cfg.seed + attempt);
        CMat h = CMat::Zero(z.ambient_dim, z.ambient_dim);
        for (size_t i = 0; i < herm.size(); ++i) h += c[i] * herm[i];

        SpectralClusters sc;
        try {
            sc = spectral_clusters(h, cfg);
        } catch (const std::runtime_error&) {
            continue;  // ambiguous split: reseed and redraw
        }

        // keep only support clusters (drop the kernel of the unit, present
        // when the unit is a proper projector)
        std::vector<CMat> projs;
        bool ok = true;
        for (const auto& p : sc.projectors) {
            const CMat up = z.unit * p;
            if (up.norm() < 0.5) continue;       // kernel block
            if ((up - p).norm() > 1e-6) { ok = false; break; }
            if (!in_span(z.basis, p, cfg)) { ok = false; break; }
            projs.push_back(p);
        }
        if (!ok || projs.empty()) continue;

        CMat sum = CMat::Zero(z.ambient_dim, z.ambient_dim);
        for (const auto& p : projs) sum += p;
        if ((sum - z.unit).norm() > 1e-6) continue;
        if (int(projs.size()) != z.dim()) continue;  // not yet atomic

        std::sort(projs.begin(), projs.end(), [&](const CMat& a,
                                                  const CMat& b) {
            const double ta = a.trace().real();
            const double tb = b.trace().real();
            if (std::abs(ta - tb) > 1e-9) return ta > tb;
            for (int i = 0; i < a.rows(); ++i) {
                const double da = a(i, i).real();
                const double db = b(i, i).real();
                if (std::abs(da - db) > 1e-9) return da > db;
            }
            return false;
        });
        return projs;
    }
    throw std::runtime_error("atomic_projectors: no generic element found");
}

OperatorAlgebra lattice_join(const OperatorAlgebra& a,
                             const OperatorAlgebra& b, const Config& cfg) {
    if (a.ambient_dim != b.ambient_dim)
        throw std::invalid_argument("lattice_join: ambient mismatch");
    std::vector<CMat> gens = a.basis;
    gens.insert(gens.end(), b.basis.begin(), b.basis.end());
    return generate(a.ambient_dim, gens, cfg);
}

OperatorAlgebra lattice_meet(const OperatorAlgebra& a,
                             const OperatorAlgebra& b, const Config& cfg) {
    const int D = a.ambient_dim;
    if (b.ambient_dim != D)
        throw std::invalid_argument("lattice_meet: ambient mismatch");
    const int n = D * D;
    CMat va(n, a.dim()), vb(n, b.dim());
    for (int i = 0; i < a.dim(); ++i) va.col(i) = vectorize(a.basis[i]);
    for (int i = 0; i < b.dim(); ++i) vb.col(i) = vectorize(b.basis[i]);
    // kernel of [(I - P_a); (I - P_b)] = intersection of the two spans
    CMat k(2 * n, n);
    k.topRows(n) = CMat::Identity(n, n) - va * va.adjoint();
    k.bottomRows(n) = CMat::Identity(n, n) - vb * vb.adjoint();
    CMat null = nullspace(k, cfg, 1.0);

    std::vector<CMat> mats;
    for (int c = 0; c < null.cols(); ++c)
        mats.push_back(unvectorize(null.col(c), D, D));

    OperatorAlgebra out;
    out.ambient_dim = D;
    out.basis = orthonormalize(mats, cfg);
    out.unit = a.unit;
    return out;
}

OperatorAlgebra compress(const CMat& pi, const OperatorAlgebra& a,
                         const Config& cfg) {
    const int D = a.ambient_dim;
    if (pi.rows() != D || pi.cols() != D)
        throw std::invalid_argument("compress: projector shape mismatch");
    if ((pi * pi - pi).norm() > 1e-7 || (pi - pi.adjoint()).norm() > 1e-7)
        throw std::invalid_argument("compress: not a projector");
    for (const auto& b : a.basis)
        if ((pi * b - b * pi).norm() > 1e-6 * std::max(1.0, b.norm()))
            throw std::invalid_argument("compress: projector not central");

    std::vector<CMat> mats;
    mats.reserve(a.basis.size());
    for (const auto& b : a.basis) mats.push_back(pi * b);

    OperatorAlgebra out;
    out.ambient_dim = D;
    out.basis = orthonormalize(mats, cfg);
    out.unit = pi;
    return out;
}

BlockStructure block_structure(const OperatorAlgebra& a, const Config& cfg) {
    BlockStructure out;
    out.central_projectors = atomic_projectors(centre(a, cfg), cfg);
    for (const auto& pi : out.central_projectors) {
        const OperatorAlgebra c = compress(pi, a, cfg);
        const int m = int(std::lround(std::sqrt(double(c.dim()))));
        if (m * m != c.dim())
            throw std::runtime_error("block_structure: block is not a factor");
        const double tr = pi.trace().real();
        const int rank = int(std::lround(tr));
        if (rank % m != 0)
            throw std::runtime_error(
                "block_structure: rank not divisible by factor dimension");
        out.factor_dims.push_back(m);
        out.multiplicities.push_back(rank / m);
    }
    return out;
}

FactorSplit tensor_factorize(const OperatorAlgebra& f, const Config& cfg) {
    const int D = f.ambient_dim;
    const int m = int(std::lround(std::sqrt(double(f.dim()))));
    if (m * m != f.dim())
        throw std::invalid_argument("tensor_factorize: not a factor");
    if (D % m != 0)
        throw std::invalid_argument(
            "tensor_factorize: ambient dimension not divisible");
    const int n = D / m;
    if ((f.unit - CMat::Identity(D, D)).norm() > 1e-7)
        throw std::invalid_argument("tensor_factorize: algebra not unital");

    const auto herm = orthonormalize(hermitian_family(f.basis), cfg);

    for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
        const std::uint64_t seed = cfg.seed + attempt;
        const auto c = random_coeffs(int(herm.size()), seed ^ 0x9e3779b9u);
        CMat h = CMat::Zero(D, D);
        for (size_t i = 0; i < herm.size(); ++i) h += c[i] * herm[i];

        SpectralClusters sc;
        try {
            sc = spectral_clusters(h, cfg);
        } catch (const std::runtime_error&) {
            continue;
        }
        if (int(sc.projectors.size()) != m) continue;
        bool ranks_ok = true;
        for (const auto& p : sc.projectors)
            if (std::lround(p.trace().real()) != n) { ranks_ok = false; break; }
        if (!ranks_ok) continue;

        const auto& e = sc.projectors;

        // orthonormal basis of range(e[0])
        Eigen::SelfAdjointEigenSolver<CMat> es(e[0]);
        CMat u0(D, n);
        int col = 0;
        for (int i = 0; i < D && col < n; ++i)
            if (es.eigenvalues()(D - 1 - i) > 0.5)
                u0.col(col++) = es.eigenvectors().col(D - 1 - i);
        if (col != n) continue;

        // partial isometries v_i : range(e_i) -> range(e_0)
        std::vector<CMat> v(m);
        v[0] = e[0];
        bool v_ok = true;
        const auto mix = random_coeffs(f.dim(), seed ^ 0x517cc1b7u);
        for (int i = 1; i < m; ++i) {
            CMat w = CMat::Zero(D, D);
            for (int j = 0; j < f.dim(); ++j)
                w += mix[j] * (e[0] * f.basis[j] * e[i]);
            if (numerical_rank(w, cfg) != n) { v_ok = false; break; }
            v[i] = polar_isometry(w, cfg);
        }
        if (!v_ok) continue;

        CMat u(D, D);
        for (int i = 0; i < m; ++i) {
            const CMat rows = (v[i].adjoint() * u0).adjoint();  // n x D
            u.middleRows(i * n, n) = rows;
        }
        if ((u * u.adjoint() - CMat::Identity(D, D)).norm() > 1e-7) continue;

        // audit: every basis element must become g (x) I_n
        double resid = 0.0;
        for (const auto& b : f.basis) {
            const CMat bb = u * b * u.adjoint();
            const CMat g = ptrace_second(bb, m, n) / double(n);
            resid = std::max(resid, (bb - kron(g, CMat::Identity(n, n))).norm());
        }
        if (resid > 1e-7) continue;

        FactorSplit out;
        out.unitary = u;
        out.left_dim = m;
        out.right_dim = n;
        return out;
    }
    throw std::runtime_error("tensor_factorize: no splitting found");
}

bool contains(const OperatorAlgebra& a, const CMat& x, const Config& cfg) {
    const double resid = (x - project_span(a.basis, x)).norm();
    return resid <= 10.0 * cfg.tol * std::max(1.0, x.norm());
}

bool equal_algebras(const OperatorAlgebra& a, const OperatorAlgebra& b,
                    const Config& cfg) {
    return same_subspace(a.basis, b.basis, cfg);
}

double algebra_distance(const OperatorAlgebra& a, const OperatorAlgebra& b) {
    return subspace_distance(a.basis, b.basis);
}

} // namespace partalg
