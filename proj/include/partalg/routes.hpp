#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "partalg/linalg.hpp"

namespace partalg {

// A product of per-site sector label sets.  Tuples are enumerated
// lexicographically with the first site most significant.
struct IndexFamily {
    std::vector<std::string> sites;
    std::vector<int> counts;  // sector count per site

    int tuple_count() const;
    int index_of(const std::vector<int>& tuple) const;
    std::vector<int> tuple_at(int index) const;
};

// Boolean matrix between tuple sets; mat(l, k) = 1 means domain tuple k is
// routed to codomain tuple l.
struct Route {
    IndexFamily domain;
    IndexFamily codomain;
    Eigen::MatrixXi mat;
};

struct PERClasses {
    std::vector<std::vector<int>> classes;  // sorted members, sorted by head
    std::vector<int> class_of;              // -1 outside the support
};

// A Hilbert space sectorised site by site: dims[n][k] is the dimension of
// sector k at site n.  The global space is the tensor product over sites of
// the direct sums, indexed site-major.
struct SectorSpace {
    std::vector<std::vector<int>> dims;

    int site_dim(int n) const;
    int total_dim() const;
    IndexFamily family(const std::vector<std::string>& sites) const;
    // tuple id of each global basis index
    std::vector<int> tuple_of_global() const;
    int tuple_dim(const std::vector<int>& tuple) const;
};

// Symmetric + transitive (partial equivalence relation) with
// support-reflexivity.
bool is_per(const Route& r);

PERClasses per_classes(const Route& r);

// Diagonal sectorial-correlation indicator: entry (k, k) = 1 iff the product
// of the per-site sector projectors at tuple k is nonzero.
Route build_sigma(const std::vector<std::vector<CMat>>& site_projectors,
                  const IndexFamily& family, const Config& cfg = {});

// Relates two supported tuples iff the same minimal global-centre projector
// dominates both tuple-product projectors.
Route build_eta_x(const Route& sigma,
                  const std::vector<std::vector<CMat>>& site_projectors,
                  const std::vector<CMat>& global_centre_projectors,
                  const Config& cfg = {});

// Existential marginal onto the `keep` sites (OR over the traced-out ones).
Route partial_trace_route(const Route& r,
                          const std::vector<std::string>& keep);

// Does f respect the route, i.e. every block (row tuple l, column tuple k)
// with r.mat(l, k) == 0 vanishes?
bool lin_eta_member(const CMat& f, const SectorSpace& space, const Route& r,
                    const Config& cfg = {});

} // namespace partalg
