#include "partalg/partition.hpp"

#include <algorithm>
#include <stdexcept>

namespace partalg {

namespace {

// verdict threshold: well above numerical noise, far below any real failure
double verdict_cutoff(const Config& cfg) { return 100.0 * cfg.tol; }

std::vector<std::string> set_union(std::vector<std::string> a,
                                   const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    return a;
}

bool disjoint(const std::vector<std::string>& a,
              const std::vector<std::string>& b) {
    for (const auto& x : a)
        if (std::find(b.begin(), b.end(), x) != b.end()) return false;
    return true;
}

} // namespace

std::string subset_key(std::vector<std::string> labels) {
    if (labels.empty()) return "empty";
    std::sort(labels.begin(), labels.end());
    std::string key = labels[0];
    for (size_t i = 1; i < labels.size(); ++i) key += "," + labels[i];
    return key;
}

const OperatorAlgebra& Partition::at(const std::string& key) const {
    auto it = algebras.find(key);
    if (it == algebras.end())
        throw std::invalid_argument("partition: powerset incomplete, missing subset \"" +
                                    key + "\"");
    return it->second;
}

const OperatorAlgebra& Partition::site(const std::string& label) const {
    return at(subset_key({label}));
}

std::vector<std::vector<std::string>> Partition::subsets() const {
    const int n = int(labels.size());
    std::vector<std::vector<std::string>> out;
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<std::string> s;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) s.push_back(labels[i]);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return subset_key(a) < subset_key(b);
    });
    return out;
}

BipartitionReport check_bipartition(const OperatorAlgebra& a1,
                                    const OperatorAlgebra& a2,
                                    const OperatorAlgebra& omega,
                                    const Config& cfg) {
    BipartitionReport rep;

    rep.containment_ok = true;
    for (const auto& b : a1.basis)
        if (!in_span(omega.basis, b, cfg)) rep.containment_ok = false;
    for (const auto& b : a2.basis)
        if (!in_span(omega.basis, b, cfg)) rep.containment_ok = false;
    if (!rep.containment_ok) {
        rep.verdict = false;
        return rep;
    }

    const auto projs = atomic_projectors(centre(omega, cfg), cfg);
    const OperatorAlgebra c1 = commutant(a1, omega, cfg);
    const OperatorAlgebra c2 = commutant(a2, omega, cfg);

    rep.block_distance = 0.0;
    for (const auto& pi : projs) {
        const double d1 = algebra_distance(compress(pi, c1, cfg),
                                           compress(pi, a2, cfg));
        const double d2 = algebra_distance(compress(pi, c2, cfg),
                                           compress(pi, a1, cfg));
        rep.block_distance = std::max({rep.block_distance, d1, d2});
    }

    const OperatorAlgebra join =
        lattice_join(centre(a1, cfg), centre(a2, cfg), cfg);
    rep.centre_distance = 0.0;
    for (const auto& z : centre(omega, cfg).basis) {
        const double d = (z - project_span(join.basis, z)).norm();
        rep.centre_distance = std::max(rep.centre_distance, d);
    }

    rep.verdict = rep.block_distance < verdict_cutoff(cfg) &&
                  rep.centre_distance < verdict_cutoff(cfg);
    return rep;
}

PartitionReport check_partition(const Partition& p, const Config& cfg) {
    PartitionReport rep;

    rep.boundary_empty_ok =
        equal_algebras(p.at("empty"), trivial_algebra(p.ambient_dim), cfg);
    rep.boundary_full_ok = equal_algebras(p.at(subset_key(p.labels)), p.global, cfg);

    const auto subs = p.subsets();
    for (size_t i = 0; i < subs.size(); ++i)
        for (size_t j = i; j < subs.size(); ++j) {
            if (!disjoint(subs[i], subs[j])) continue;
            PairReport pr;
            pr.s_key = subset_key(subs[i]);
            pr.t_key = subset_key(subs[j]);
            const auto& ambient = p.at(subset_key(set_union(subs[i], subs[j])));
            pr.report =
                check_bipartition(p.at(pr.s_key), p.at(pr.t_key), ambient, cfg);
            rep.pairs.push_back(std::move(pr));
        }

    rep.verdict = rep.boundary_empty_ok && rep.boundary_full_ok;
    for (const auto& pr : rep.pairs) rep.verdict = rep.verdict && pr.report.verdict;
    return rep;
}

CentreTable centres_via_routes(const Partition& p, const Config& cfg) {
    CentreTable table;

    std::vector<std::vector<CMat>> site_projs;
    table.family.sites = p.labels;
    for (const auto& n : p.labels) {
        site_projs.push_back(atomic_projectors(centre(p.site(n), cfg), cfg));
        table.family.counts.push_back(int(site_projs.back().size()));
    }

    table.sigma = build_sigma(site_projs, table.family, cfg);
    const auto global_projs = atomic_projectors(centre(p.global, cfg), cfg);
    table.eta_x = build_eta_x(table.sigma, site_projs, global_projs, cfg);

    table.ok = true;
    for (const auto& S : p.subsets()) {
        if (S.empty()) continue;
        CentreTable::Entry entry;
        entry.key = subset_key(S);
        entry.eta = partial_trace_route(table.eta_x, S);
        const auto classes = per_classes(entry.eta);

        std::vector<int> site_pos;  // positions of S's sites in label order
        for (const auto& n : S)
            site_pos.push_back(int(std::find(p.labels.begin(), p.labels.end(), n) -
                                   p.labels.begin()));

        for (const auto& cls : classes.classes) {
            CMat proj = CMat::Zero(p.ambient_dim, p.ambient_dim);
            for (int t : cls) {
                const auto tuple = entry.eta.domain.tuple_at(t);
                CMat prod = CMat::Identity(p.ambient_dim, p.ambient_dim);
                for (size_t i = 0; i < site_pos.size(); ++i)
                    prod = prod * site_projs[site_pos[i]][tuple[i]];
                proj += prod;
            }
            entry.route_projectors.push_back(proj);
        }

        entry.direct_projectors =
            atomic_projectors(centre(p.at(entry.key), cfg), cfg);

        // greedy matching route -> direct, nearest first
        std::vector<bool> used(entry.direct_projectors.size(), false);
        entry.matching.assign(entry.route_projectors.size(), -1);
        for (size_t r = 0; r < entry.route_projectors.size(); ++r) {
            double best = 1e300;
            int arg = -1;
            for (size_t d = 0; d < entry.direct_projectors.size(); ++d) {
                if (used[d]) continue;
                const double dist =
                    (entry.route_projectors[r] - entry.direct_projectors[d])
                        .norm();
                if (dist < best) best = dist, arg = int(d);
            }
            if (arg < 0) { table.ok = false; break; }
            used[arg] = true;
            entry.matching[r] = arg;
            entry.max_distance = std::max(entry.max_distance, best);
        }
        if (entry.route_projectors.size() != entry.direct_projectors.size() ||
            entry.max_distance >= 10.0 * cfg.tol)
            table.ok = false;
        table.entries.push_back(std::move(entry));
    }
    return table;
}

CentrePropsReport validate_centre_props(const Partition& p, const Config& cfg) {
    CentrePropsReport rep;

    const OperatorAlgebra z_global = centre(p.global, cfg);
    rep.factor_case = z_global.dim() == 1;

    for (const auto& S : p.subsets()) {
        std::vector<std::string> Sc;
        for (const auto& n : p.labels)
            if (std::find(S.begin(), S.end(), n) == S.end()) Sc.push_back(n);

        const OperatorAlgebra& a_s = p.at(subset_key(S));
        const OperatorAlgebra& a_sc = p.at(subset_key(Sc));
        const OperatorAlgebra z_s = centre(a_s, cfg);
        const OperatorAlgebra z_sc = centre(a_sc, cfg);

        // A_S' (within Ω) = Z(Ω) v A_{X\S}
        rep.d_commutants = std::max(
            rep.d_commutants,
            algebra_distance(commutant(a_s, p.global, cfg),
                             lattice_join(z_global, a_sc, cfg)));

        // Z_S = A_S ^ (Z(Ω) v Z_{X\S})
        rep.d_centre_pair = std::max(
            rep.d_centre_pair,
            algebra_distance(
                z_s, lattice_meet(a_s, lattice_join(z_global, z_sc, cfg), cfg)));

        // Z_S = (v_{n in S} Z_n) ^ (v_{m not in S} Z_m v Z(Ω))
        OperatorAlgebra join_in = trivial_algebra(p.ambient_dim);
        for (const auto& n : S)
            join_in = lattice_join(join_in, centre(p.site(n), cfg), cfg);
        OperatorAlgebra join_out = z_global;
        for (const auto& m : Sc)
            join_out = lattice_join(join_out, centre(p.site(m), cfg), cfg);
        rep.d_individual =
            std::max(rep.d_individual,
                     algebra_distance(z_s, lattice_meet(join_in, join_out, cfg)));

        if (rep.factor_case) {
            rep.d_common_centre =
                std::max(rep.d_common_centre, algebra_distance(z_s, z_sc));
            rep.d_folt = std::max(
                rep.d_folt, algebra_distance(lattice_join(a_s, a_sc, cfg),
                                             commutant(z_s, p.global, cfg)));
        }
    }

    const double cutoff = 10.0 * cfg.tol;
    rep.ok = rep.d_commutants < cutoff && rep.d_centre_pair < cutoff &&
             rep.d_individual < cutoff &&
             (!rep.factor_case ||
              (rep.d_common_centre < cutoff && rep.d_folt < cutoff));
    return rep;
}

Partition folt_mutation(const Partition& p, const Config& cfg) {
    Partition out = p;
    for (const auto& S : p.subsets()) {
        if (S.size() < 2) continue;
        OperatorAlgebra join = trivial_algebra(p.ambient_dim);
        for (const auto& n : S) join = lattice_join(join, p.site(n), cfg);
        out.algebras[subset_key(S)] = join;
    }
    return out;
}

} // namespace partalg
