#include "partalg/examples.hpp"

#include <algorithm>

namespace partalg {

namespace {

CMat unit_matrix(int d, int i, int j) {
    CMat e = CMat::Zero(d, d);
    e(i, j) = 1.0;
    return e;
}

Partition skeleton(std::vector<std::string> labels, int ambient_dim) {
    Partition p;
    p.labels = std::move(labels);
    p.ambient_dim = ambient_dim;
    p.global = full_algebra(ambient_dim);
    p.algebras["empty"] = trivial_algebra(ambient_dim);
    p.algebras[subset_key(p.labels)] = p.global;
    return p;
}

} // namespace

Partition factorisation_partition(int d1, int d2, const Config& cfg) {
    const int D = d1 * d2;
    Partition p = skeleton({"1", "2"}, D);

    std::vector<CMat> g1, g2;
    for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d1; ++j)
            g1.push_back(kron(unit_matrix(d1, i, j), CMat::Identity(d2, d2)));
    for (int i = 0; i < d2; ++i)
        for (int j = 0; j < d2; ++j)
            g2.push_back(kron(CMat::Identity(d1, d1), unit_matrix(d2, i, j)));
    p.algebras["1"] = generate(D, g1, cfg);
    p.algebras["2"] = generate(D, g2, cfg);
    return p;
}

Partition two_trajectories_partition(int d, const Config& cfg) {
    const int D = 2 * d;
    Partition p = skeleton({"1", "2"}, D);

    std::vector<CMat> g1;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            g1.push_back(kron(unit_matrix(2, 0, 0), unit_matrix(d, i, j)));
    g1.push_back(kron(unit_matrix(2, 1, 1), CMat::Identity(d, d)));
    p.algebras["1"] = generate(D, g1, cfg);
    p.algebras["2"] = commutant(p.algebras["1"], cfg);
    return p;
}

Partition tripartite_partition(int d, const Config& cfg) {
    const int D = 3 * d;
    Partition p = skeleton({"1", "2", "3"}, D);

    for (int n = 0; n < 3; ++n) {
        std::vector<CMat> gens;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                gens.push_back(kron(unit_matrix(3, n, n), unit_matrix(d, i, j)));
        CMat rest = CMat::Zero(3, 3);
        for (int m = 0; m < 3; ++m)
            if (m != n) rest(m, m) = 1.0;
        gens.push_back(kron(rest, CMat::Identity(d, d)));
        p.algebras[subset_key({std::to_string(n + 1)})] = generate(D, gens, cfg);
    }

    for (int n = 0; n < 3; ++n)
        for (int m = n + 1; m < 3; ++m) {
            std::vector<CMat> gens;
            for (int a : {n, m})
                for (int b : {n, m})
                    for (int i = 0; i < d; ++i)
                        for (int j = 0; j < d; ++j)
                            gens.push_back(
                                kron(unit_matrix(3, a, b), unit_matrix(d, i, j)));
            const int c = 3 - n - m;
            gens.push_back(kron(unit_matrix(3, c, c), CMat::Identity(d, d)));
            p.algebras[subset_key(
                {std::to_string(n + 1), std::to_string(m + 1)})] =
                generate(D, gens, cfg);
        }
    return p;
}

Partition fermionic_partition(int modes, const Config& cfg) {
    if (modes < 2 || modes > 5)
        throw std::invalid_argument("fermionic_partition: modes out of [2, 5]");
    const FermionSystem sys = jw_system(modes);

    Partition p;
    for (int i = 1; i <= modes; ++i) p.labels.push_back(std::to_string(i));
    std::sort(p.labels.begin(), p.labels.end());
    p.ambient_dim = sys.dim();

    for (int mask = 0; mask < (1 << modes); ++mask) {
        std::vector<int> S;
        std::vector<std::string> names;
        for (int i = 0; i < modes; ++i)
            if (mask & (1 << i)) {
                S.push_back(i);
                names.push_back(std::to_string(i + 1));
            }
        p.algebras[subset_key(names)] = physical_algebra(sys, S, cfg);
    }
    p.global = p.at(subset_key(p.labels));
    return p;
}

} // namespace partalg
