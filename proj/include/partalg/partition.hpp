#pragma once

#include <map>
#include <string>
#include <vector>

#include "partalg/algebra.hpp"
#include "partalg/routes.hpp"

namespace partalg {

// Canonical subset key: sorted labels joined by ","; the empty set is
// "empty" ("∅" is accepted on input).
std::string subset_key(std::vector<std::string> labels);

// Assignment of one algebra per subset of the site labels, all inside a
// common global algebra on C^D.
struct Partition {
    std::vector<std::string> labels;  // sorted site labels
    int ambient_dim = 0;
    OperatorAlgebra global;
    std::map<std::string, OperatorAlgebra> algebras;  // key = subset_key

    const OperatorAlgebra& at(const std::string& key) const;
    const OperatorAlgebra& site(const std::string& label) const;
    // subsets in canonical report order: by size, then key
    std::vector<std::vector<std::string>> subsets() const;
};

struct BipartitionReport {
    bool verdict = false;
    bool containment_ok = false;   // a1, a2 inside omega
    double block_distance = 0.0;   // worst compressed commutant mismatch
    double centre_distance = 0.0;  // residual of Z(omega) inside Z1 v Z2
};

struct PairReport {
    std::string s_key;
    std::string t_key;
    BipartitionReport report;
};

struct PartitionReport {
    bool verdict = false;
    bool boundary_empty_ok = false;  // 𝒜_∅ = C·I
    bool boundary_full_ok = false;   // 𝒜_X = Ω
    std::vector<PairReport> pairs;   // canonical order
};

struct CentreTable {
    IndexFamily family;
    Route sigma;
    Route eta_x;
    struct Entry {
        std::string key;
        Route eta;  // η_S
        std::vector<CMat> route_projectors;
        std::vector<CMat> direct_projectors;
        std::vector<int> matching;  // route index -> direct index
        double max_distance = 0.0;
    };
    std::vector<Entry> entries;  // nonempty subsets, canonical order
    bool ok = false;
};

struct CentrePropsReport {
    double d_commutants = 0.0;     // A_S' = Z(Ω) v A_{X\S}
    double d_centre_pair = 0.0;    // Z_S = A_S ^ (Z(Ω) v Z_{X\S})
    double d_individual = 0.0;     // Z_S = (v_{n∈S} Z_n) ^ (v_{m∉S} Z_m v Z(Ω))
    bool factor_case = false;      // Ω has trivial centre
    double d_common_centre = 0.0;  // Z_S = Z_{X\S} (factor case only)
    double d_folt = 0.0;           // A_S v A_{X\S} = Z_S' (factor case only)
    bool ok = false;
};

// Both directions of the per-block compressed-commutant condition plus the
// centre-spanning condition, inside `omega`.
BipartitionReport check_bipartition(const OperatorAlgebra& a1,
                                    const OperatorAlgebra& a2,
                                    const OperatorAlgebra& omega,
                                    const Config& cfg = {});

// Boundary checks plus check_bipartition for every unordered disjoint pair
// {S, T} inside the ambient 𝒜_{S⊔T}.
PartitionReport check_partition(const Partition& p, const Config& cfg = {});

// Joint-centre atomic projectors from per-site data via the sector routes,
// cross-checked against the direct computation.
CentreTable centres_via_routes(const Partition& p, const Config& cfg = {});

CentrePropsReport validate_centre_props(const Partition& p,
                                        const Config& cfg = {});

// Replaces every algebra on a subset with 2 or more sites by the join of its
// singletons; turns a valid partition over non-factor sites into an invalid
// one (the join misses the cross-sector correlations).
Partition folt_mutation(const Partition& p, const Config& cfg = {});

} // namespace partalg
