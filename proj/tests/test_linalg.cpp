#include <doctest.h>

#include "partalg/linalg.hpp"

using namespace partalg;

namespace {
const Complex I1(0.0, 1.0);
}

TEST_CASE("hs_inner is conjugate-linear in the first slot") {
    const CMat a = random_matrix(3, 3, 1);
    const CMat b = random_matrix(3, 3, 2);
    CHECK(std::abs(hs_inner(I1 * a, b) - (-I1) * hs_inner(a, b)) < 1e-12);
    CHECK(std::abs(hs_inner(a, I1 * b) - I1 * hs_inner(a, b)) < 1e-12);
    // agreement with the trace definition
    const Complex direct = (a.adjoint() * b).trace();
    CHECK(std::abs(hs_inner(a, b) - direct) < 1e-12);
}

TEST_CASE("orthonormalize drops near-duplicates") {
    CMat id = CMat::Identity(2, 2);
    CMat nearly = id;
    nearly(0, 1) = 1e-15;
    Config cfg;
    cfg.tol = 1e-8;
    const auto basis = orthonormalize({id, nearly}, cfg);
    CHECK(basis.size() == 1);
}

TEST_CASE("orthonormalize produces an orthonormal family spanning the input") {
    std::vector<CMat> mats;
    for (int s = 0; s < 6; ++s) mats.push_back(random_matrix(3, 3, 10 + s));
    mats.push_back(mats[0] + mats[1]);  // dependent
    const auto basis = orthonormalize(mats);
    CHECK(basis.size() == 6);
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < basis.size(); ++j) {
            const Complex g = hs_inner(basis[i], basis[j]);
            CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-10);
        }
    for (const auto& m : mats)
        CHECK((m - project_span(basis, m)).norm() < 1e-9 * m.norm());
}

TEST_CASE("nullspace finds the kernel") {
    CMat m(2, 3);
    m << 1, 0, 0, 0, 1, 0;
    const CMat k = nullspace(m);
    REQUIRE(k.cols() == 1);
    CHECK((m * k).norm() < 1e-12);
    CHECK(std::abs(k.col(0).norm() - 1.0) < 1e-12);

    // zero matrix: everything is in the kernel
    const CMat z = nullspace(CMat::Zero(2, 2));
    CHECK(z.cols() == 2);
}

TEST_CASE("spectral_clusters merges close eigenvalues and orders descending") {
    CMat h = CMat::Zero(3, 3);
    h(0, 0) = 2.0;
    h(1, 1) = 1.0;
    h(2, 2) = 1.0 + 1e-9;  // within gap_tol of 1.0
    const auto sc = spectral_clusters(h);
    REQUIRE(sc.values.size() == 2);
    CHECK(sc.values[0] == doctest::Approx(2.0));
    CHECK(sc.values[1] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(sc.projectors[1].trace().real() - 2.0) < 1e-10);
}

TEST_CASE("spectral_clusters flags ambiguous gaps") {
    CMat h = CMat::Zero(2, 2);
    h(1, 1) = 1e-6;  // exactly at gap_tol: seed-sensitive split
    CHECK_THROWS_AS(spectral_clusters(h), std::runtime_error);
}

TEST_CASE("operator_schmidt reconstructs and detects product operators") {
    const int da = 2, db = 3;
    const CMat a = random_matrix(da, da, 3);
    const CMat b = random_matrix(db, db, 4);
    const auto one = operator_schmidt(kron(a, b), da, db);
    CHECK(one.weights.size() == 1);

    const CMat f = random_matrix(da * db, da * db, 5);
    const auto sch = operator_schmidt(f, da, db);
    CMat rec = CMat::Zero(da * db, da * db);
    for (size_t k = 0; k < sch.weights.size(); ++k)
        rec += sch.weights[k] * kron(sch.left[k], sch.right[k]);
    CHECK((rec - f).norm() < 1e-9 * f.norm());
    for (size_t k = 0; k < sch.weights.size(); ++k) {
        CHECK(std::abs(hs_inner(sch.left[k], sch.left[k]) - 1.0) < 1e-10);
        if (k > 0) {
            CHECK(std::abs(hs_inner(sch.left[k], sch.left[k - 1])) < 1e-9);
            CHECK(sch.weights[k] <= sch.weights[k - 1] + 1e-12);
        }
    }
}

TEST_CASE("polar_isometry returns the unitary factor") {
    const CMat m = random_matrix(4, 4, 6);
    const CMat u = polar_isometry(m);
    CHECK((u.adjoint() * u - CMat::Identity(4, 4)).norm() < 1e-9);
    // m u† is positive semidefinite (Hermitian with nonnegative spectrum)
    const CMat p = m * u.adjoint();
    CHECK((p - p.adjoint()).norm() < 1e-9);
}

TEST_CASE("partial traces agree with kron structure") {
    const CMat a = random_matrix(2, 2, 7);
    const CMat b = random_matrix(3, 3, 8);
    const CMat f = kron(a, b);
    CHECK((ptrace_first(f, 2, 3) - a.trace() * b).norm() < 1e-12);
    CHECK((ptrace_second(f, 2, 3) - b.trace() * a).norm() < 1e-12);
}

TEST_CASE("subspace distance separates and identifies spans") {
    const auto ba = orthonormalize({random_matrix(2, 2, 9),
                                    random_matrix(2, 2, 10)});
    CHECK(subspace_distance(ba, ba) < 1e-9);
    std::vector<CMat> rotated;
    // same span, different basis
    rotated.push_back((ba[0] + ba[1]) / std::sqrt(2.0));
    rotated.push_back((ba[0] - ba[1]) / std::sqrt(2.0));
    CHECK(subspace_distance(ba, rotated) < 1e-9);
    CHECK(same_subspace(ba, rotated));
}
