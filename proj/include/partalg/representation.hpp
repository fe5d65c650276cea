#pragma once

#include "partalg/partition.hpp"
#include "partalg/routes.hpp"

namespace partalg {

// Concrete realization of the structure theorem for a valid partition: an
// isometry from the carrier space C^D into the extended tensor product of
// per-site sectorised spaces, whose range is the supported subspace.
struct Representation {
    std::vector<std::string> sites;
    SectorSpace space;      // dims[n][k] = dim of sector k at site n
    Route sigma;
    Route eta_x;
    CMat intertwiner;       // W : C^D -> extended space; W† W = I_D
    CMat correlation_projector;  // Π̃ = W W†, diagonal per sector tuple

    CMat apply(const CMat& f) const;      // ι(f) = W f W†
    CMat pullback(const CMat& g) const;   // W† g W
};

// Phase per supported sector tuple; conjugating the well-localised form of
// subset S by the induced diagonal unitary reproduces ι(𝒜_S).
struct DephasingFunction {
    std::string subset_key;
    std::vector<double> phases;  // per tuple of the full family, in [0, 2pi)
    double residual = 0.0;       // subspace distance after conjugation
};

struct SubsetAudit {
    std::string subset_key;
    double distance = 0.0;  // ι(𝒜_S) vs the plain well-localised form
    bool localised = false;
};

struct RepresentationAudit {
    std::vector<SubsetAudit> subsets;
    bool fully_localised = false;
};

struct ObstructionCertificate {
    bool obstruction_found = false;
    std::string violated;  // name of the first failed identity, empty if none
    double worst = 0.0;
};

Representation construct_representation(const Partition& p,
                                        const Config& cfg = {});

// One entry per subset S with 1 < |S| < |X|.
std::vector<DephasingFunction> extract_dephasings(const Partition& p,
                                                  const Representation& rep,
                                                  const Config& cfg = {});

// Dephasing extraction for a single subset (any S works; boundary subsets
// and singletons come out with zero phases).
DephasingFunction extract_dephasing(const Partition& p,
                                    const Representation& rep,
                                    const std::vector<std::string>& S,
                                    const Config& cfg = {});

RepresentationAudit audit_representation(const Partition& p,
                                         const Representation& rep,
                                         const Config& cfg = {});

// The diagonal unitary induced by a phase function (identity outside the
// support).
CMat dephasing_unitary(const Representation& rep,
                       const DephasingFunction& d);

// Orthonormal basis of the well-localised candidate space of S:
// { (f (x) id) Π̃ | f ∈ Lin_{η_S} }.
std::vector<CMat> well_localised_basis(const Representation& rep,
                                       const std::vector<std::string>& S,
                                       const Config& cfg = {});

// Checks whether candidate operators B(i,j) on the extended space of an
// N-mode system (each site C^1 ⊕ C^1) could realize the pair-exchange
// relations: locality on sites {i,j}, the shared-index sign rule, the triple
// product b_ij b_jk b_ki = identity-on-support, and the Schmidt cross-trace
// consistency.  Returns the first violated identity.
ObstructionCertificate fermionic_obstruction_check(
    const std::vector<std::vector<CMat>>& candidate, int modes,
    const CMat& support, const Config& cfg = {});

} // namespace partalg
