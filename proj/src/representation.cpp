#include "partalg/representation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace partalg {

namespace {

constexpr double kLooseTol = 1e-7;

CMat kron_chain(const std::vector<CMat>& factors) {
    CMat out = CMat::Identity(1, 1);
    for (const auto& f : factors) out = kron(out, f);
    return out;
}

// isometry onto the range of a projector (columns = eigenvectors with
// eigenvalue 1)
CMat range_isometry(const CMat& pi, int rank) {
    Eigen::SelfAdjointEigenSolver<CMat> es(pi);
    CMat v(pi.rows(), rank);
    int col = 0;
    for (int i = 0; i < pi.rows() && col < rank; ++i)
        if (es.eigenvalues()(pi.rows() - 1 - i) > 0.5)
            v.col(col++) = es.eigenvectors().col(pi.rows() - 1 - i);
    if (col != rank)
        throw std::runtime_error("range_isometry: rank mismatch");
    return v;
}

// Unitary splitting a chain of mutually commuting factor subalgebras of
// Lin(C^r) (with product of their dimensions = r) into consecutive tensor
// legs: U b U† = I (x) ... (x) g_i (x) ... (x) I for b in the i-th algebra.
CMat chain_split(const std::vector<std::vector<CMat>>& bases,
                 const std::vector<int>& dims, int r, const Config& cfg) {
    int first = -1;
    for (size_t i = 0; i < dims.size(); ++i)
        if (dims[i] > 1) { first = int(i); break; }
    if (first < 0) {
        if (r != 1)
            throw std::runtime_error("chain_split: leftover dimension");
        return CMat::Identity(1, 1);
    }
    const int m = dims[first];
    if (m == r) return CMat::Identity(r, r);  // single factor fills the space

    OperatorAlgebra f;
    f.ambient_dim = r;
    f.basis = bases[first];
    f.unit = CMat::Identity(r, r);
    const FactorSplit split = tensor_factorize(f, cfg);
    const int rest = r / m;

    std::vector<std::vector<CMat>> tail_bases;
    std::vector<int> tail_dims;
    for (size_t i = first + 1; i < dims.size(); ++i) {
        tail_dims.push_back(dims[i]);
        std::vector<CMat> gs;
        if (dims[i] > 1) {
            for (const auto& b : bases[i]) {
                const CMat bb = split.unitary * b * split.unitary.adjoint();
                gs.push_back(ptrace_first(bb, m, rest) / double(m));
            }
            gs = orthonormalize(gs, cfg);
        }
        tail_bases.push_back(std::move(gs));
    }
    const CMat u_rest = chain_split(tail_bases, tail_dims, rest, cfg);
    return kron(CMat::Identity(m, m), u_rest) * split.unitary;
}

// extended-space index bookkeeping for a subset S of the sites
struct SplitIndex {
    std::vector<int> s_pos;       // positions of S sites in family order
    std::vector<int> c_pos;       // complement positions
    SectorSpace s_space, c_space;
    int dim_s = 1, dim_c = 1;
    std::vector<int> g_of;        // (gS * dim_c + gC) -> extended index
    std::vector<int> s_tuple_of;  // gS -> S-sector-tuple id
    std::vector<int> c_tuple_of;  // gC -> complement-sector-tuple id
};

SplitIndex make_split(const Representation& rep,
                      const std::vector<std::string>& S) {
    SplitIndex sp;
    const auto& sites = rep.sites;
    for (size_t n = 0; n < sites.size(); ++n) {
        if (std::find(S.begin(), S.end(), sites[n]) != S.end())
            sp.s_pos.push_back(int(n));
        else
            sp.c_pos.push_back(int(n));
    }
    for (int n : sp.s_pos) sp.s_space.dims.push_back(rep.space.dims[n]);
    for (int n : sp.c_pos) sp.c_space.dims.push_back(rep.space.dims[n]);
    sp.dim_s = sp.s_space.dims.empty() ? 1 : sp.s_space.total_dim();
    sp.dim_c = sp.c_space.dims.empty() ? 1 : sp.c_space.total_dim();

    const int sites_n = int(sites.size());
    std::vector<int> stride(sites_n, 1);
    for (int n = sites_n - 2; n >= 0; --n)
        stride[n] = stride[n + 1] * rep.space.site_dim(n + 1);

    sp.g_of.assign(std::size_t(sp.dim_s) * sp.dim_c, 0);
    for (int gs = 0; gs < sp.dim_s; ++gs) {
        // per-site components of gs
        std::vector<int> xs(sp.s_pos.size());
        int rem = gs;
        for (int i = int(sp.s_pos.size()) - 1; i >= 0; --i) {
            const int d = rep.space.site_dim(sp.s_pos[i]);
            xs[i] = rem % d;
            rem /= d;
        }
        for (int gc = 0; gc < sp.dim_c; ++gc) {
            std::vector<int> xc(sp.c_pos.size());
            int remc = gc;
            for (int i = int(sp.c_pos.size()) - 1; i >= 0; --i) {
                const int d = rep.space.site_dim(sp.c_pos[i]);
                xc[i] = remc % d;
                remc /= d;
            }
            int g = 0;
            for (size_t i = 0; i < sp.s_pos.size(); ++i)
                g += xs[i] * stride[sp.s_pos[i]];
            for (size_t i = 0; i < sp.c_pos.size(); ++i)
                g += xc[i] * stride[sp.c_pos[i]];
            sp.g_of[std::size_t(gs) * sp.dim_c + gc] = g;
        }
    }
    sp.s_tuple_of = sp.s_space.dims.empty() ? std::vector<int>{0}
                                            : sp.s_space.tuple_of_global();
    sp.c_tuple_of = sp.c_space.dims.empty() ? std::vector<int>{0}
                                            : sp.c_space.tuple_of_global();
    return sp;
}

std::vector<std::string> family_ordered(const Representation& rep,
                                        std::vector<std::string> S) {
    std::vector<std::string> out;
    for (const auto& s : rep.sites)
        if (std::find(S.begin(), S.end(), s) != S.end()) out.push_back(s);
    return out;
}

// permutation matrix moving the listed qubit sites (of an N-site, all-C^2
// space) to the front, preserving relative order otherwise
CMat qubit_permutation(int modes, const std::vector<int>& front) {
    std::vector<int> order = front;
    for (int i = 0; i < modes; ++i)
        if (std::find(front.begin(), front.end(), i) == front.end())
            order.push_back(i);
    const int dim = 1 << modes;
    CMat p = CMat::Zero(dim, dim);
    for (int g = 0; g < dim; ++g) {
        int h = 0;
        for (int pos = 0; pos < modes; ++pos) {
            const int bit = (g >> (modes - 1 - order[pos])) & 1;
            h |= bit << (modes - 1 - pos);
        }
        p(h, g) = 1.0;
    }
    return p;
}

} // namespace

CMat Representation::apply(const CMat& f) const {
    return intertwiner * f * intertwiner.adjoint();
}

CMat Representation::pullback(const CMat& g) const {
    return intertwiner.adjoint() * g * intertwiner;
}

Representation construct_representation(const Partition& p, const Config& cfg) {
    const int D = p.ambient_dim;
    Representation rep;
    rep.sites = p.labels;

    // per-site sector data
    std::vector<std::vector<CMat>> site_projs;
    IndexFamily family;
    family.sites = p.labels;
    for (const auto& n : p.labels) {
        site_projs.push_back(atomic_projectors(centre(p.site(n), cfg), cfg));
        family.counts.push_back(int(site_projs.back().size()));
        std::vector<int> dims;
        for (const auto& pi : site_projs.back()) {
            const OperatorAlgebra block = compress(pi, p.site(n), cfg);
            const int m = int(std::lround(std::sqrt(double(block.dim()))));
            if (m * m != block.dim())
                throw std::runtime_error(
                    "construct_representation: non-factor site block");
            dims.push_back(m);
        }
        rep.space.dims.push_back(std::move(dims));
    }

    rep.sigma = build_sigma(site_projs, family, cfg);
    rep.eta_x = build_eta_x(rep.sigma, site_projs,
                            atomic_projectors(centre(p.global, cfg), cfg), cfg);

    const int sites_n = int(p.labels.size());
    const int tuples = family.tuple_count();

    // per supported tuple: the block unitary u = U_chain * V†
    std::vector<CMat> u_of(tuples);
    std::vector<int> rank_of(tuples, 0);
    for (int t = 0; t < tuples; ++t) {
        if (rep.sigma.mat(t, t) == 0) continue;
        const auto tuple = family.tuple_at(t);

        CMat pi = CMat::Identity(D, D);
        for (int n = 0; n < sites_n; ++n) pi = pi * site_projs[n][tuple[n]];
        const int r = int(std::lround(pi.trace().real()));
        int r_expect = 1;
        for (int n = 0; n < sites_n; ++n)
            r_expect *= rep.space.dims[n][tuple[n]];
        if (r != r_expect)
            throw std::runtime_error(
                "construct_representation: block rank does not factor");
        rank_of[t] = r;

        const CMat v = range_isometry(pi, r);
        std::vector<std::vector<CMat>> bases(sites_n);
        std::vector<int> dims(sites_n);
        for (int n = 0; n < sites_n; ++n) {
            dims[n] = rep.space.dims[n][tuple[n]];
            if (dims[n] == 1) continue;
            std::vector<CMat> bs;
            for (const auto& b : p.site(p.labels[n]).basis)
                bs.push_back(v.adjoint() * b * v);
            bases[n] = orthonormalize(bs, cfg);
            if (int(bases[n].size()) != dims[n] * dims[n])
                throw std::runtime_error(
                    "construct_representation: compressed site block has "
                    "wrong dimension");
        }
        const CMat chain = chain_split(bases, dims, r, cfg);
        u_of[t] = chain * v.adjoint();
    }

    // cross-sector gauge alignment: for each site sector, conjugate every
    // block so the site factor carries the same matrix as in the reference
    // tuple (the first supported tuple with that sector)
    std::vector<std::vector<CMat>> corrections(tuples);
    for (int t = 0; t < tuples; ++t) {
        if (rep.sigma.mat(t, t) == 0) continue;
        corrections[t].resize(sites_n);
        const auto tuple = family.tuple_at(t);
        for (int n = 0; n < sites_n; ++n)
            corrections[t][n] = CMat::Identity(rep.space.dims[n][tuple[n]],
                                               rep.space.dims[n][tuple[n]]);
    }
    for (int n = 0; n < sites_n; ++n) {
        for (int k = 0; k < family.counts[n]; ++k) {
            const int mk = rep.space.dims[n][k];
            if (mk == 1) continue;
            std::vector<int> q_list;
            for (int t = 0; t < tuples; ++t)
                if (rep.sigma.mat(t, t) != 0 && family.tuple_at(t)[n] == k)
                    q_list.push_back(t);
            if (q_list.size() < 2) continue;
            const int ref = q_list[0];

            auto site_factor = [&](int t, const CMat& b) {
                const auto tuple = family.tuple_at(t);
                int dl = 1, dr = 1;
                for (int m2 = 0; m2 < n; ++m2)
                    dl *= rep.space.dims[m2][tuple[m2]];
                for (int m2 = n + 1; m2 < sites_n; ++m2)
                    dr *= rep.space.dims[m2][tuple[m2]];
                const CMat x = u_of[t] * b * u_of[t].adjoint();
                const CMat y = ptrace_second(x, dl * mk, dr);
                return CMat(ptrace_first(y, dl, mk) / double(dl * dr));
            };

            const auto& site_basis = p.site(p.labels[n]).basis;
            std::vector<CMat> g_ref;
            for (const auto& b : site_basis)
                g_ref.push_back(site_factor(ref, site_projs[n][k] * b));

            for (size_t qi = 1; qi < q_list.size(); ++qi) {
                const int q = q_list[qi];
                std::vector<CMat> g_q;
                for (const auto& b : site_basis)
                    g_q.push_back(site_factor(q, site_projs[n][k] * b));

                // v g_ref = g_q v for the whole spanning family
                CMat constraints(int(site_basis.size()) * mk * mk, mk * mk);
                const CMat eye = CMat::Identity(mk, mk);
                for (size_t b = 0; b < site_basis.size(); ++b)
                    constraints.middleRows(int(b) * mk * mk, mk * mk) =
                        kron(eye, g_q[b]) - kron(g_ref[b].transpose(), eye);
                const CMat null = nullspace(constraints, cfg);
                if (null.cols() < 1)
                    throw std::runtime_error(
                        "construct_representation: gauge alignment has no "
                        "solution");
                CMat v = unvectorize(null.col(0), mk, mk);
                v *= std::sqrt(double(mk)) / v.norm();
                // deterministic phase: largest entry made real positive
                int bi = 0, bj = 0;
                double best = -1.0;
                for (int i = 0; i < mk; ++i)
                    for (int j = 0; j < mk; ++j)
                        if (std::abs(v(i, j)) > best)
                            best = std::abs(v(i, j)), bi = i, bj = j;
                v *= std::conj(v(bi, bj)) / std::abs(v(bi, bj));
                if ((v * v.adjoint() - eye).norm() > kLooseTol)
                    throw std::runtime_error(
                        "construct_representation: gauge unitary not unitary");
                double resid = 0.0;
                for (size_t b = 0; b < site_basis.size(); ++b)
                    resid = std::max(resid,
                                     (v * g_ref[b] * v.adjoint() - g_q[b]).norm());
                if (resid > kLooseTol)
                    throw std::runtime_error(
                        "construct_representation: gauge alignment residual "
                        "too large");
                corrections[q][n] = v;
            }
        }
    }
    for (int t = 0; t < tuples; ++t) {
        if (rep.sigma.mat(t, t) == 0) continue;
        u_of[t] = kron_chain(corrections[t]).adjoint() * u_of[t];
    }

    // assemble the intertwiner
    const int dim_ext = rep.space.total_dim();
    std::vector<int> stride(sites_n, 1);
    for (int n = sites_n - 2; n >= 0; --n)
        stride[n] = stride[n + 1] * rep.space.site_dim(n + 1);

    rep.intertwiner = CMat::Zero(dim_ext, D);
    for (int t = 0; t < tuples; ++t) {
        if (rep.sigma.mat(t, t) == 0) continue;
        const auto tuple = family.tuple_at(t);
        std::vector<int> offset(sites_n, 0);
        for (int n = 0; n < sites_n; ++n)
            for (int k = 0; k < tuple[n]; ++k)
                offset[n] += rep.space.dims[n][k];

        const int r = rank_of[t];
        // local tensor index -> extended index
        for (int l = 0; l < r; ++l) {
            int rem = l;
            int g = 0;
            for (int n = sites_n - 1; n >= 0; --n) {
                const int mn = rep.space.dims[n][tuple[n]];
                g += (offset[n] + rem % mn) * stride[n];
                rem /= mn;
            }
            rep.intertwiner.row(g) += u_of[t].row(l);
        }
    }

    if ((rep.intertwiner.adjoint() * rep.intertwiner - CMat::Identity(D, D))
            .norm() > kLooseTol)
        throw std::runtime_error(
            "construct_representation: intertwiner is not an isometry");
    rep.correlation_projector = rep.intertwiner * rep.intertwiner.adjoint();
    return rep;
}

std::vector<CMat> well_localised_basis(const Representation& rep,
                                       const std::vector<std::string>& S,
                                       const Config& cfg) {
    (void)cfg;
    const auto Sf = family_ordered(rep, S);
    const SplitIndex sp = make_split(rep, Sf);

    const Route eta_s = partial_trace_route(rep.eta_x, Sf);
    const auto tog = rep.space.tuple_of_global();

    // supported flag per extended index
    std::vector<char> supported(rep.space.total_dim(), 0);
    for (int g = 0; g < rep.space.total_dim(); ++g)
        supported[g] = char(rep.sigma.mat(tog[g], tog[g]) != 0);

    std::vector<CMat> out;
    const int dim_ext = rep.space.total_dim();
    for (int ls = 0; ls < int(eta_s.mat.rows()); ++ls)
        for (int ks = 0; ks < int(eta_s.mat.cols()); ++ks) {
            if (eta_s.mat(ls, ks) == 0) continue;
            for (int prow = 0; prow < sp.dim_s; ++prow) {
                if (sp.s_tuple_of[prow] != ls) continue;
                for (int qcol = 0; qcol < sp.dim_s; ++qcol) {
                    if (sp.s_tuple_of[qcol] != ks) continue;
                    CMat op = CMat::Zero(dim_ext, dim_ext);
                    int nnz = 0;
                    for (int gc = 0; gc < sp.dim_c; ++gc) {
                        const int col = sp.g_of[std::size_t(qcol) * sp.dim_c + gc];
                        if (!supported[col]) continue;
                        const int row = sp.g_of[std::size_t(prow) * sp.dim_c + gc];
                        op(row, col) = 1.0;
                        ++nnz;
                    }
                    if (nnz == 0) continue;
                    out.push_back(op / std::sqrt(double(nnz)));
                }
            }
        }
    return out;
}

RepresentationAudit audit_representation(const Partition& p,
                                         const Representation& rep,
                                         const Config& cfg) {
    RepresentationAudit audit;
    audit.fully_localised = true;
    for (const auto& S : p.subsets()) {
        SubsetAudit sa;
        sa.subset_key = subset_key(S);
        std::vector<CMat> image;
        for (const auto& b : p.at(sa.subset_key).basis)
            image.push_back(rep.apply(b));
        const auto wl = well_localised_basis(rep, S, cfg);
        sa.distance = subspace_distance(image, wl);
        sa.localised = sa.distance < std::max(kLooseTol, 10.0 * cfg.tol);
        audit.fully_localised = audit.fully_localised && sa.localised;
        audit.subsets.push_back(std::move(sa));
    }
    return audit;
}

DephasingFunction extract_dephasing(const Partition& p,
                                    const Representation& rep,
                                    const std::vector<std::string>& S,
                                    const Config& cfg) {
    DephasingFunction out;
    const auto Sf = family_ordered(rep, S);
    out.subset_key = subset_key(Sf);
    const IndexFamily& family = rep.sigma.domain;
    out.phases.assign(family.tuple_count(), 0.0);

    const SplitIndex sp = make_split(rep, Sf);
    const Route eta_s = partial_trace_route(rep.eta_x, Sf);
    const auto classes = per_classes(eta_s);

    // positions of S / complement sites inside the full family tuple
    auto full_tuple = [&](int ks, int lc) {
        std::vector<int> t(family.counts.size());
        const auto ts = sp.s_space.dims.empty()
                            ? std::vector<int>{}
                            : sp.s_space.family(std::vector<std::string>(
                                  sp.s_pos.size(), "")).tuple_at(ks);
        const auto tc = sp.c_space.dims.empty()
                            ? std::vector<int>{}
                            : sp.c_space.family(std::vector<std::string>(
                                  sp.c_pos.size(), "")).tuple_at(lc);
        for (size_t i = 0; i < sp.s_pos.size(); ++i) t[sp.s_pos[i]] = ts[i];
        for (size_t i = 0; i < sp.c_pos.size(); ++i) t[sp.c_pos[i]] = tc[i];
        return family.index_of(t);
    };

    const int n_ctuples =
        sp.c_space.dims.empty() ? 1 : [&] {
            int n = 1;
            for (const auto& d : sp.c_space.dims) n *= int(d.size());
            return n;
        }();

    // precompute images of a spanning family
    std::vector<CMat> images;
    for (const auto& b : p.at(out.subset_key).basis)
        images.push_back(rep.apply(b));

    // gS index lists per S-sector-tuple, gC lists per complement tuple
    std::vector<std::vector<int>> s_members(
        sp.s_space.dims.empty() ? 1 : [&] {
            int n = 1;
            for (const auto& d : sp.s_space.dims) n *= int(d.size());
            return n;
        }());
    for (int gs = 0; gs < sp.dim_s; ++gs)
        s_members[sp.s_tuple_of[gs]].push_back(gs);
    std::vector<std::vector<int>> c_members(n_ctuples);
    for (int gc = 0; gc < sp.dim_c; ++gc)
        c_members[sp.c_tuple_of[gc]].push_back(gc);

    for (const auto& cls : classes.classes) {
        // supported complement tuples, identical across the class
        std::vector<int> comp;
        for (int lc = 0; lc < n_ctuples; ++lc)
            if (rep.sigma.mat(full_tuple(cls[0], lc), full_tuple(cls[0], lc)) !=
                0)
                comp.push_back(lc);
        if (comp.empty() || cls.size() < 2) continue;
        const int l0 = comp[0];

        // block of image b between (S-tuple krow x lc) and (S-tuple kcol x lc)
        auto block = [&](const CMat& img, int krow, int kcol, int lc) {
            const auto& rows = s_members[krow];
            const auto& cols = s_members[kcol];
            const auto& cs = c_members[lc];
            CMat m(int(rows.size()) * int(cs.size()),
                   int(cols.size()) * int(cs.size()));
            for (size_t i = 0; i < rows.size(); ++i)
                for (size_t ci = 0; ci < cs.size(); ++ci)
                    for (size_t j = 0; j < cols.size(); ++j)
                        for (size_t cj = 0; cj < cs.size(); ++cj)
                            m(int(i * cs.size() + ci), int(j * cs.size() + cj)) =
                                img(sp.g_of[std::size_t(rows[i]) * sp.dim_c +
                                            cs[ci]],
                                    sp.g_of[std::size_t(cols[j]) * sp.dim_c +
                                            cs[cj]]);
            return m;
        };

        for (size_t li = 1; li < comp.size(); ++li) {
            const int lc = comp[li];
            const int dc = int(c_members[lc].size());
            const int dc0 = int(c_members[l0].size());
            // per tuple in the class, phase relative to the class head
            std::vector<double> theta(cls.size(), 0.0);
            std::vector<char> known(cls.size(), 0);
            known[0] = 1;
            bool progress = true;
            while (progress) {
                progress = false;
                for (size_t a = 0; a < cls.size(); ++a)
                    for (size_t b = 0; b < cls.size(); ++b) {
                        if (a == b || !(known[a] ^ known[b])) continue;
                        // measure theta[a] - theta[b] from the best entry
                        Complex best_ref = 0.0, best_val = 0.0;
                        for (const auto& img : images) {
                            const CMat m0 = block(img, cls[a], cls[b], l0);
                            const CMat ml = block(img, cls[a], cls[b], lc);
                            // reference factor from the l0 block
                            const int ra = int(s_members[cls[a]].size());
                            const int rb = int(s_members[cls[b]].size());
                            CMat f_ref = CMat::Zero(ra, rb);
                            for (int i = 0; i < ra; ++i)
                                for (int j = 0; j < rb; ++j) {
                                    Complex s = 0.0;
                                    for (int cidx = 0; cidx < dc0; ++cidx)
                                        s += m0(i * dc0 + cidx, j * dc0 + cidx);
                                    f_ref(i, j) = s / double(dc0);
                                }
                            int bi = 0, bj = 0;
                            double bestmod = -1.0;
                            for (int i = 0; i < ra; ++i)
                                for (int j = 0; j < rb; ++j)
                                    if (std::abs(f_ref(i, j)) > bestmod)
                                        bestmod = std::abs(f_ref(i, j)), bi = i,
                                        bj = j;
                            if (bestmod <= std::abs(best_ref)) continue;
                            Complex s = 0.0;
                            for (int cidx = 0; cidx < dc; ++cidx)
                                s += ml(bi * dc + cidx, bj * dc + cidx);
                            best_ref = f_ref(bi, bj);
                            best_val = s / double(dc);
                        }
                        if (std::abs(best_ref) < 1e-8) continue;
                        const double delta = std::arg(best_val / best_ref);
                        if (known[a])
                            theta[b] = theta[a] - delta;
                        else
                            theta[a] = theta[b] + delta;
                        known[a] = known[b] = 1;
                        progress = true;
                    }
            }
            for (size_t a = 0; a < cls.size(); ++a)
                out.phases[full_tuple(cls[a], lc)] = theta[a];
        }
    }

    // normalization: zero phase on the lexicographically first supported
    // tuple of each η_X class (a free gauge per class)
    const auto x_classes = per_classes(rep.eta_x);
    for (const auto& cls : x_classes.classes) {
        const double base = out.phases[cls[0]];
        for (int t : cls) {
            double ph = out.phases[t] - base;
            ph = std::fmod(ph, 2.0 * M_PI);
            if (ph < 0) ph += 2.0 * M_PI;
            out.phases[t] = ph;
        }
    }

    // residual: conjugated well-localised form vs the actual image
    const CMat phi = dephasing_unitary(rep, out);
    std::vector<CMat> conj;
    for (const auto& b : well_localised_basis(rep, Sf, cfg))
        conj.push_back(phi * b * phi.adjoint());
    out.residual = subspace_distance(images, conj);
    return out;
}

std::vector<DephasingFunction> extract_dephasings(const Partition& p,
                                                  const Representation& rep,
                                                  const Config& cfg) {
    std::vector<DephasingFunction> out;
    for (const auto& S : p.subsets()) {
        if (S.size() < 2 || S.size() >= p.labels.size()) continue;
        out.push_back(extract_dephasing(p, rep, S, cfg));
    }
    return out;
}

CMat dephasing_unitary(const Representation& rep, const DephasingFunction& d) {
    const int dim = rep.space.total_dim();
    const auto tog = rep.space.tuple_of_global();
    CMat phi = CMat::Identity(dim, dim);
    const Complex I(0.0, 1.0);
    for (int g = 0; g < dim; ++g)
        if (rep.sigma.mat(tog[g], tog[g]) != 0)
            phi(g, g) = std::exp(I * d.phases[tog[g]]);
    return phi;
}

ObstructionCertificate fermionic_obstruction_check(
    const std::vector<std::vector<CMat>>& candidate, int modes,
    const CMat& support, const Config& cfg) {
    ObstructionCertificate cert;
    const int dim = 1 << modes;
    double scale = 1.0;
    for (int i = 0; i < modes; ++i)
        for (int j = 0; j < modes; ++j)
            if (i != j) scale = std::max(scale, candidate[i][j].norm());
    const double cut = std::max(kLooseTol, 100.0 * cfg.tol) * scale * scale;

    auto fail = [&](const std::string& what, double worst) {
        cert.obstruction_found = true;
        cert.violated = what;
        cert.worst = worst;
        return cert;
    };

    // locality: Schmidt factors on the complement of {i,j} proportional to id
    for (int i = 0; i < modes; ++i)
        for (int j = 0; j < modes; ++j) {
            if (i == j) continue;
            const CMat perm = qubit_permutation(modes, {i, j});
            const CMat b = perm * candidate[i][j] * perm.adjoint();
            const auto sch = operator_schmidt(b, 4, dim / 4, cfg);
            for (size_t l = 0; l < sch.weights.size(); ++l) {
                const CMat& r = sch.right[l];
                const CMat dev =
                    r - (r.trace() / double(r.rows())) *
                            CMat::Identity(r.rows(), r.cols());
                if (sch.weights[l] * dev.norm() > cut)
                    return fail("locality", sch.weights[l] * dev.norm());
            }
        }

    // sign rule: anticommute on one shared index, commute on none
    for (int i = 0; i < modes; ++i)
        for (int j = 0; j < modes; ++j) {
            if (i == j) continue;
            for (int k = 0; k < modes; ++k)
                for (int l = 0; l < modes; ++l) {
                    if (k == l) continue;
                    if (std::make_pair(i, j) >= std::make_pair(k, l)) continue;
                    int shared = int(i == k) + int(i == l) + int(j == k) +
                                 int(j == l);
                    if (shared == 2) continue;  // same or reversed pair
                    const CMat& b1 = candidate[i][j];
                    const CMat& b2 = candidate[k][l];
                    if (shared == 1) {
                        const double d = (b1 * b2 + b2 * b1).norm();
                        if (d > cut) return fail("anticommutation", d);
                    } else {
                        const double d = (b1 * b2 - b2 * b1).norm();
                        if (d > cut) return fail("commutation", d);
                    }
                }
        }

    // triple product = identity on the support
    for (int i = 0; i < modes; ++i)
        for (int j = 0; j < modes; ++j)
            for (int k = 0; k < modes; ++k) {
                if (i == j || j == k || k == i) continue;
                const double d = (candidate[i][j] * candidate[j][k] *
                                      candidate[k][i] -
                                  support)
                                     .norm();
                if (d > cut * scale) return fail("triple product", d);
            }

    // cross traces of the shared-site Schmidt factors must vanish once the
    // anticommutation relations hold
    for (int i = 0; i < modes; ++i)
        for (int j = 0; j < modes; ++j)
            for (int k = 0; k < modes; ++k) {
                if (i == j || j == k || k == i) continue;
                const CMat pj = qubit_permutation(modes, {j});
                const CMat b1 = pj * candidate[i][j] * pj.adjoint();
                const CMat b2 = pj * candidate[j][k] * pj.adjoint();
                const auto s1 = operator_schmidt(b1, 2, dim / 2, cfg);
                const auto s2 = operator_schmidt(b2, 2, dim / 2, cfg);
                for (size_t l = 0; l < s1.left.size(); ++l)
                    for (size_t m = 0; m < s2.left.size(); ++m) {
                        const double d =
                            s1.weights[l] * s2.weights[m] *
                            std::abs((s1.left[l] * s2.left[m]).trace());
                        if (d > cut) return fail("schmidt cross trace", d);
                    }
            }

    return cert;  // nothing violated (theoretically unreachable)
}

} // namespace partalg
