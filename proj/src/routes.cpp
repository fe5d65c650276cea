#include "partalg/routes.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace partalg {

int IndexFamily::tuple_count() const {
    int n = 1;
    for (int c : counts) n *= c;
    return n;
}

int IndexFamily::index_of(const std::vector<int>& tuple) const {
    if (tuple.size() != counts.size())
        throw std::invalid_argument("IndexFamily: tuple arity mismatch");
    int idx = 0;
    for (size_t n = 0; n < counts.size(); ++n) {
        if (tuple[n] < 0 || tuple[n] >= counts[n])
            throw std::out_of_range("IndexFamily: label out of range");
        idx = idx * counts[n] + tuple[n];
    }
    return idx;
}

std::vector<int> IndexFamily::tuple_at(int index) const {
    std::vector<int> tuple(counts.size());
    for (int n = int(counts.size()) - 1; n >= 0; --n) {
        tuple[n] = index % counts[n];
        index /= counts[n];
    }
    return tuple;
}

int SectorSpace::site_dim(int n) const {
    return std::accumulate(dims[n].begin(), dims[n].end(), 0);
}

int SectorSpace::total_dim() const {
    int d = 1;
    for (size_t n = 0; n < dims.size(); ++n) d *= site_dim(int(n));
    return d;
}

IndexFamily SectorSpace::family(const std::vector<std::string>& sites) const {
    if (sites.size() != dims.size())
        throw std::invalid_argument("SectorSpace: site name count mismatch");
    IndexFamily fam;
    fam.sites = sites;
    for (const auto& d : dims) fam.counts.push_back(int(d.size()));
    return fam;
}

std::vector<int> SectorSpace::tuple_of_global() const {
    const int sites = int(dims.size());
    std::vector<int> out;
    out.reserve(total_dim());
    std::vector<int> component(sites, 0);
    const int total = total_dim();
    for (int g = 0; g < total; ++g) {
        int rem = g;
        int tuple = 0;
        for (int n = 0; n < sites; ++n) {
            int stride = 1;
            for (int m = n + 1; m < sites; ++m) stride *= site_dim(m);
            int x = rem / stride;
            rem %= stride;
            // sector containing component x at site n
            int k = 0;
            while (x >= dims[n][k]) x -= dims[n][k], ++k;
            tuple = tuple * int(dims[n].size()) + k;
        }
        out.push_back(tuple);
    }
    return out;
}

int SectorSpace::tuple_dim(const std::vector<int>& tuple) const {
    int d = 1;
    for (size_t n = 0; n < dims.size(); ++n) d *= dims[n][tuple[n]];
    return d;
}

bool is_per(const Route& r) {
    if (r.domain.counts != r.codomain.counts) return false;
    const int n = r.domain.tuple_count();
    if (r.mat.rows() != n || r.mat.cols() != n) return false;
    // symmetric
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if ((r.mat(i, j) != 0) != (r.mat(j, i) != 0)) return false;
    // support-reflexive
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (r.mat(i, j) != 0 && (r.mat(i, i) == 0 || r.mat(j, j) == 0))
                return false;
    // transitive
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (r.mat(i, j) == 0) continue;
            for (int k = 0; k < n; ++k)
                if (r.mat(j, k) != 0 && r.mat(i, k) == 0) return false;
        }
    return true;
}

PERClasses per_classes(const Route& r) {
    if (!is_per(r))
        throw std::invalid_argument("per_classes: route is not a PER");
    const int n = r.domain.tuple_count();
    PERClasses out;
    out.class_of.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        if (r.mat(i, i) == 0 || out.class_of[i] >= 0) continue;
        std::vector<int> cls;
        const int id = int(out.classes.size());
        for (int j = i; j < n; ++j)
            if (r.mat(i, j) != 0) {
                cls.push_back(j);
                out.class_of[j] = id;
            }
        out.classes.push_back(std::move(cls));
    }
    return out;
}

Route build_sigma(const std::vector<std::vector<CMat>>& site_projectors,
                  const IndexFamily& family, const Config& cfg) {
    (void)cfg;
    const int n = family.tuple_count();
    Route r;
    r.domain = family;
    r.codomain = family;
    r.mat = Eigen::MatrixXi::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        const auto tuple = family.tuple_at(k);
        CMat p = site_projectors[0][tuple[0]];
        for (size_t s = 1; s < site_projectors.size(); ++s)
            p = p * site_projectors[s][tuple[s]];
        // commuting projectors: the product is a projector, norm 0 or >= 1
        if (p.norm() > 0.5) r.mat(k, k) = 1;
    }
    return r;
}

Route build_eta_x(const Route& sigma,
                  const std::vector<std::vector<CMat>>& site_projectors,
                  const std::vector<CMat>& global_centre_projectors,
                  const Config& cfg) {
    const IndexFamily& fam = sigma.domain;
    const int n = fam.tuple_count();
    std::vector<int> dominator(n, -1);
    for (int k = 0; k < n; ++k) {
        if (sigma.mat(k, k) == 0) continue;
        const auto tuple = fam.tuple_at(k);
        CMat p = site_projectors[0][tuple[0]];
        for (size_t s = 1; s < site_projectors.size(); ++s)
            p = p * site_projectors[s][tuple[s]];
        for (size_t m = 0; m < global_centre_projectors.size(); ++m) {
            if ((global_centre_projectors[m] * p - p).norm() <=
                1e-7 * std::max(1.0, p.norm())) {
                dominator[k] = int(m);
                break;
            }
        }
        if (dominator[k] < 0)
            throw std::runtime_error(
                "build_eta_x: tuple projector not dominated by a central "
                "block");
    }
    (void)cfg;
    Route r;
    r.domain = fam;
    r.codomain = fam;
    r.mat = Eigen::MatrixXi::Zero(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            if (dominator[k] >= 0 && dominator[k] == dominator[l])
                r.mat(l, k) = 1;
    return r;
}

Route partial_trace_route(const Route& r,
                          const std::vector<std::string>& keep) {
    const IndexFamily& fam = r.domain;
    if (fam.counts != r.codomain.counts)
        throw std::invalid_argument("partial_trace_route: route not square");

    std::vector<int> kept, traced;
    for (size_t n = 0; n < fam.sites.size(); ++n) {
        if (std::find(keep.begin(), keep.end(), fam.sites[n]) != keep.end())
            kept.push_back(int(n));
        else
            traced.push_back(int(n));
    }
    if (kept.size() != keep.size())
        throw std::invalid_argument("partial_trace_route: unknown site kept");

    IndexFamily sub;
    for (int n : kept) {
        sub.sites.push_back(fam.sites[n]);
        sub.counts.push_back(fam.counts[n]);
    }
    IndexFamily comp;
    for (int n : traced) comp.counts.push_back(fam.counts[n]);

    const int ns = sub.tuple_count();
    const int nc = comp.tuple_count();
    Route out;
    out.domain = sub;
    out.codomain = sub;
    out.mat = Eigen::MatrixXi::Zero(ns, ns);

    std::vector<int> full(fam.counts.size());
    for (int k = 0; k < ns; ++k) {
        const auto tk = sub.tuple_at(k);
        for (int l = 0; l < ns; ++l) {
            const auto tl = sub.tuple_at(l);
            for (int c = 0; c < nc; ++c) {
                const auto tc = comp.tuple_at(c);
                for (size_t i = 0; i < kept.size(); ++i) full[kept[i]] = tk[i];
                for (size_t i = 0; i < traced.size(); ++i)
                    full[traced[i]] = tc[i];
                const int fk = fam.index_of(full);
                for (size_t i = 0; i < kept.size(); ++i) full[kept[i]] = tl[i];
                const int fl = fam.index_of(full);
                if (r.mat(fl, fk) != 0) {
                    out.mat(l, k) = 1;
                    break;
                }
            }
        }
    }
    return out;
}

bool lin_eta_member(const CMat& f, const SectorSpace& space, const Route& r,
                    const Config& cfg) {
    const int d = space.total_dim();
    if (f.rows() != d || f.cols() != d)
        throw std::invalid_argument("lin_eta_member: shape mismatch");
    const auto tog = space.tuple_of_global();
    const double cutoff = 10.0 * cfg.tol * std::max(1.0, f.norm());
    double bad = 0.0;
    for (int col = 0; col < d; ++col)
        for (int row = 0; row < d; ++row)
            if (r.mat(tog[row], tog[col]) == 0)
                bad += std::norm(f(row, col));
    return std::sqrt(bad) <= cutoff;
}

} // namespace partalg
