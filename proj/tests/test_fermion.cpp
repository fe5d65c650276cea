#include <doctest.h>

#include "partalg/examples.hpp"
#include "partalg/fermion.hpp"

using namespace partalg;

namespace {

// independent oracle: odd-parity diagonal projector on the occupation basis
CMat parity_oracle(int modes, const std::vector<int>& S) {
    const int dim = 1 << modes;
    CMat p = CMat::Zero(dim, dim);
    for (int b = 0; b < dim; ++b) {
        int k = 0;
        for (int i : S) k += (b >> (modes - 1 - i)) & 1;
        if (k % 2 == 1) p(b, b) = 1.0;
    }
    return p;
}

} // namespace

TEST_CASE("canonical anticommutation relations") {
    for (int modes = 1; modes <= 4; ++modes) {
        const auto sys = jw_system(modes);
        const CMat id = CMat::Identity(sys.dim(), sys.dim());
        for (int i = 0; i < modes; ++i)
            for (int j = 0; j < modes; ++j) {
                const CMat& ai = sys.a[i];
                const CMat& aj = sys.a[j];
                CHECK((ai * aj + aj * ai).norm() < 1e-12);
                const CMat mixed = ai * aj.adjoint() + aj.adjoint() * ai;
                CHECK((mixed - (i == j ? id : CMat(CMat::Zero(sys.dim(),
                                                              sys.dim()))))
                          .norm() < 1e-12);
            }
    }
}

TEST_CASE("single-mode convention: <0|a|1> = 1") {
    const auto sys = jw_system(1);
    CHECK(std::abs(sys.a[0](0, 1) - 1.0) < 1e-15);
    CHECK(std::abs(sys.a[0](1, 0)) < 1e-15);
    CHECK_THROWS_AS(jw_system(0), std::invalid_argument);
    CHECK_THROWS_AS(jw_system(13), std::invalid_argument);
}

TEST_CASE("physical algebra dimensions") {
    const auto sys3 = jw_system(3);
    CHECK(physical_algebra(sys3, {0}).dim() == 2);
    CHECK(physical_algebra(sys3, {0, 1}).dim() == 8);
    CHECK(physical_algebra(sys3, {0, 1, 2}).dim() == 32);  // 2^{2N-1}
    for (int modes = 1; modes <= 3; ++modes) {
        const auto sys = jw_system(modes);
        std::vector<int> all(modes);
        for (int i = 0; i < modes; ++i) all[i] = i;
        CHECK(physical_algebra(sys, all).dim() == (1 << (2 * modes - 1)));
    }
}

TEST_CASE("parity projector closed form matches the diagonal oracle") {
    for (int modes = 1; modes <= 4; ++modes) {
        const auto sys = jw_system(modes);
        for (int mask = 1; mask < (1 << modes); ++mask) {
            std::vector<int> S;
            for (int i = 0; i < modes; ++i)
                if (mask & (1 << i)) S.push_back(i);
            CHECK((parity_projector(sys, S) - parity_oracle(modes, S)).norm() <
                  1e-12);
        }
    }
}

TEST_CASE("parity projector small cases") {
    const auto sys = jw_system(3);
    const CMat n1 = sys.a[0].adjoint() * sys.a[0];
    const CMat n2 = sys.a[1].adjoint() * sys.a[1];
    CHECK((parity_projector(sys, {0}) - n1).norm() < 1e-12);
    CHECK((parity_projector(sys, {0, 1}) - (n1 + n2 - 2.0 * n1 * n2)).norm() <
          1e-12);
    // |110> has an even count in S = {1,2,3}
    const CMat pi = parity_projector(sys, {0, 1, 2});
    CHECK(std::abs(pi(6, 6)) < 1e-12);
}

TEST_CASE("conjunction law for disjoint regions") {
    const int modes = 3;
    const auto sys = jw_system(modes);
    for (int ms = 1; ms < (1 << modes); ++ms)
        for (int mt = 1; mt < (1 << modes); ++mt) {
            if (ms & mt) continue;
            std::vector<int> S, T, U;
            for (int i = 0; i < modes; ++i) {
                if (ms & (1 << i)) S.push_back(i), U.push_back(i);
                if (mt & (1 << i)) T.push_back(i), U.push_back(i);
            }
            std::sort(U.begin(), U.end());
            const CMat ps = parity_projector(sys, S);
            const CMat pt = parity_projector(sys, T);
            CHECK((parity_projector(sys, U) - (ps + pt - 2.0 * ps * pt))
                      .norm() < 1e-12);
        }
}

TEST_CASE("canonical decomposition") {
    const auto sys = jw_system(3);
    const int dim = sys.dim();

    auto terms = canonical_decompose(sys, CMat::Identity(dim, dim));
    REQUIRE(terms.size() == 1);
    CHECK(terms[0].codes == std::vector<int>{0, 0, 0});
    CHECK(std::abs(terms[0].coeff - 1.0) < 1e-12);

    // a1 a1† = id - n1
    terms = canonical_decompose(sys, CMat(sys.a[0] * sys.a[0].adjoint()));
    REQUIRE(terms.size() == 2);
    CHECK(terms[0].codes == std::vector<int>{0, 0, 0});
    CHECK(std::abs(terms[0].coeff - 1.0) < 1e-12);
    CHECK(terms[1].codes == std::vector<int>{3, 0, 0});
    CHECK(std::abs(terms[1].coeff + 1.0) < 1e-12);

    terms = canonical_decompose(sys, CMat(sys.a[0] * sys.a[1]));
    REQUIRE(terms.size() == 1);
    CHECK(terms[0].codes == std::vector<int>{2, 2, 0});

    // round-trip on a random operator
    const CMat y = random_matrix(dim, dim, 77);
    CMat rec = CMat::Zero(dim, dim);
    for (const auto& t : canonical_decompose(sys, y))
        rec += t.coeff * word_operator(sys, t.codes);
    CHECK((rec - y).norm() < 1e-10 * y.norm());
}

TEST_CASE("b operators: triple product, sign rule, membership") {
    const auto sys = jw_system(4);
    const CMat id = CMat::Identity(sys.dim(), sys.dim());
    CHECK((b_operator(sys, 0, 1) * b_operator(sys, 1, 2) *
               b_operator(sys, 2, 0) -
           id)
              .norm() < 1e-12);
    // one shared index: anticommute
    const CMat b01 = b_operator(sys, 0, 1);
    const CMat b12 = b_operator(sys, 1, 2);
    CHECK((b01 * b12 + b12 * b01).norm() < 1e-12);
    // no shared index: commute
    const CMat b23 = b_operator(sys, 2, 3);
    CHECK((b01 * b23 - b23 * b01).norm() < 1e-12);
    CHECK_THROWS_AS(b_operator(sys, 1, 1), std::invalid_argument);
}

TEST_CASE("fermionic partition assembly") {
    const auto p = fermionic_partition(2);
    CHECK(p.labels == std::vector<std::string>{"1", "2"});
    CHECK(p.algebras.size() == 4);
    CHECK(p.at("1,2").dim() == 8);
    CHECK(p.at("empty").dim() == 1);
    CHECK_THROWS_AS(fermionic_partition(1), std::invalid_argument);
    CHECK_THROWS_AS(fermionic_partition(6), std::invalid_argument);
}
