#include <doctest.h>

#include <set>
#include <sstream>

#include "partalg/examples.hpp"
#include "partalg/partition.hpp"

using namespace partalg;

namespace {

CMat diag_from(std::initializer_list<double> entries) {
    const int d = int(entries.size());
    CMat m = CMat::Zero(d, d);
    int i = 0;
    for (double v : entries) m(i, i) = v, ++i;
    return m;
}

std::vector<std::string> split_key(const std::string& key) {
    std::vector<std::string> out;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(part);
    return out;
}

} // namespace

TEST_CASE("subset_key canonicalizes") {
    CHECK(subset_key({"2", "1"}) == "1,2");
    CHECK(subset_key({}) == "empty");
    CHECK(subset_key({"3"}) == "3");
}

TEST_CASE("bipartition holds for a plain tensor split") {
    const auto p = factorisation_partition(2, 3);
    const auto r = check_bipartition(p.site("1"), p.site("2"), p.global);
    CHECK(r.verdict);
    CHECK(r.containment_ok);
    CHECK(r.block_distance < 1e-9);
    CHECK(r.centre_distance < 1e-9);
}

TEST_CASE("bipartition rejects a pair that is not mutually commutant") {
    // both arguments the same factor: the commutant of one is the *other*
    // tensor leg, so the compressed match fails while containment holds
    const auto p = factorisation_partition(2, 2);
    const auto r = check_bipartition(p.site("1"), p.site("1"), p.global);
    CHECK(!r.verdict);
    CHECK(r.containment_ok);
    CHECK(r.block_distance > 1e-3);
}

TEST_CASE("bipartition rejects operators outside the ambient algebra") {
    const auto p = two_trajectories_partition(2);
    // ambient restricted to one site's algebra cannot contain the other
    const auto r = check_bipartition(p.site("1"), p.site("2"), p.site("1"));
    CHECK(!r.verdict);
    CHECK(!r.containment_ok);
}

TEST_CASE("built-in examples are valid partitions") {
    for (const Partition& p :
         {factorisation_partition(2, 2), two_trajectories_partition(2),
          tripartite_partition(2), fermionic_partition(2)}) {
        const auto rep = check_partition(p);
        CHECK(rep.verdict);
        CHECK(rep.boundary_empty_ok);
        CHECK(rep.boundary_full_ok);
        for (const auto& pr : rep.pairs) CHECK(pr.report.verdict);
    }
}

TEST_CASE("singleton-join mutation breaks the fermionic partition") {
    const auto p = fermionic_partition(3);
    const auto bad = folt_mutation(p);
    const auto rep = check_partition(bad);
    CHECK(!rep.verdict);
    // the mutation rewrites every multi-site subset consistently, so the
    // defect surfaces at the boundary: the joined singletons no longer span
    // the global algebra
    CHECK(!rep.boundary_full_ok);
    CHECK(rep.boundary_empty_ok);
}

TEST_CASE("a single mutated subset only breaks pairs that touch it") {
    Partition p = fermionic_partition(3);
    p.algebras["1,2"] = lattice_join(p.site("1"), p.site("2"));
    const auto rep = check_partition(p);
    CHECK(!rep.verdict);
    int failures = 0;
    for (const auto& pr : rep.pairs) {
        if (pr.report.verdict) continue;
        ++failures;
        auto u = split_key(pr.s_key);
        if (pr.t_key != "empty")
            for (auto& l : split_key(pr.t_key)) u.push_back(l);
        const bool touches = pr.s_key == "1,2" || pr.t_key == "1,2" ||
                             subset_key(u) == "1,2";
        CHECK(touches);
    }
    CHECK(failures > 0);
}

TEST_CASE("joint-centre projectors via routes match the direct computation") {
    SUBCASE("fermionic two modes") {
        const auto p = fermionic_partition(2);
        const auto table = centres_via_routes(p);
        CHECK(table.ok);
        for (const auto& e : table.entries) CHECK(e.max_distance < 1e-8);

        // site 1 occupation: basis ordered |00>, |01>, |10>, |11> with the
        // first mode most significant
        const CMat n1 = diag_from({0, 0, 1, 1});
        const CMat hole1 = diag_from({1, 1, 0, 0});
        const auto* site1 = &table.entries.front();
        for (const auto& e : table.entries)
            if (e.key == "1") site1 = &e;
        REQUIRE(site1->key == "1");
        REQUIRE(site1->direct_projectors.size() == 2);
        CHECK((site1->direct_projectors[0] - hole1).norm() < 1e-9);
        CHECK((site1->direct_projectors[1] - n1).norm() < 1e-9);

        // full system: centre is the parity grading
        const auto* full = site1;
        for (const auto& e : table.entries)
            if (e.key == "1,2") full = &e;
        REQUIRE(full->key == "1,2");
        REQUIRE(full->direct_projectors.size() == 2);
        CHECK((full->direct_projectors[0] - diag_from({1, 0, 0, 1})).norm() <
              1e-9);
        CHECK((full->direct_projectors[1] - diag_from({0, 1, 1, 0})).norm() <
              1e-9);
    }

    SUBCASE("tripartite positions") {
        const auto p = tripartite_partition(2);
        const auto table = centres_via_routes(p);
        CHECK(table.ok);
        const CentreTable::Entry* pair = nullptr;
        for (const auto& e : table.entries)
            if (e.key == "1,2") pair = &e;
        REQUIRE(pair != nullptr);
        REQUIRE(pair->direct_projectors.size() == 2);
        // "here" (positions 1 or 2) versus "elsewhere" (position 3)
        CHECK((pair->direct_projectors[0] - diag_from({1, 1, 1, 1, 0, 0}))
                  .norm() < 1e-9);
        CHECK((pair->direct_projectors[1] - diag_from({0, 0, 0, 0, 1, 1}))
                  .norm() < 1e-9);
    }
}

TEST_CASE("centre identities hold on the examples") {
    SUBCASE("factor ambient") {
        const auto r = validate_centre_props(two_trajectories_partition(2));
        CHECK(r.ok);
        CHECK(r.factor_case);
        CHECK(r.d_commutants < 1e-8);
        CHECK(r.d_centre_pair < 1e-8);
        CHECK(r.d_individual < 1e-8);
        CHECK(r.d_common_centre < 1e-8);
        CHECK(r.d_folt < 1e-8);
    }
    SUBCASE("non-factor ambient") {
        const auto r = validate_centre_props(fermionic_partition(2));
        CHECK(r.ok);
        CHECK(!r.factor_case);
        CHECK(r.d_commutants < 1e-8);
        CHECK(r.d_centre_pair < 1e-8);
        CHECK(r.d_individual < 1e-8);
    }
}

TEST_CASE("subsets are reported by size then key") {
    const auto p = tripartite_partition(2);
    const auto subs = p.subsets();
    REQUIRE(subs.size() == 8);
    CHECK(subs.front().empty());
    CHECK(subset_key(subs[1]) == "1");
    CHECK(subset_key(subs[4]) == "1,2");
    CHECK(subset_key(subs.back()) == "1,2,3");
}

TEST_CASE("missing subset algebras are reported by name") {
    Partition p = factorisation_partition(2, 2);
    p.algebras.erase("1");
    CHECK_THROWS_WITH_AS(p.at("1"),
                         doctest::Contains("powerset incomplete"),
                         std::invalid_argument);
}
