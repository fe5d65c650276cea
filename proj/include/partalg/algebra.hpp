#pragma once

#include <optional>
#include <string>
#include <vector>

#include "partalg/linalg.hpp"

namespace partalg {

// A *-closed, unital operator subspace of Lin(C^D) given by an orthonormal
// (Hilbert-Schmidt) basis.  `unit` is the identity of the algebra: I_D in
// the ambient case, the compressing projector for compressed algebras.
struct OperatorAlgebra {
    int ambient_dim = 0;
    std::vector<CMat> basis;
    CMat unit;

    int dim() const { return int(basis.size()); }
};

// Wedderburn block data: per central block a factor dimension m_l and the
// multiplicity n_l it carries inside the ambient space (m_l * n_l = rank of
// the central projector).
struct BlockStructure {
    std::vector<CMat> central_projectors;
    std::vector<int> factor_dims;     // m_l
    std::vector<int> multiplicities;  // n_l
};

// Result of splitting Lin(C^D) across a factor subalgebra: a unitary u with
// u f u^† = g (x) I_n for f in the factor, plus the two tensor dimensions.
struct FactorSplit {
    CMat unitary;
    int left_dim = 0;   // m: dimension the factor acts on
    int right_dim = 0;  // n = D / m
};

// Smallest *-algebra containing the generators and the identity.  When
// `ambient` is given, generators must lie in its span and the closure stays
// inside it.  Throws if the closure exceeds `cap` dimensions (default D^2).
OperatorAlgebra generate(int ambient_dim, const std::vector<CMat>& generators,
                         const Config& cfg = {},
                         const OperatorAlgebra* ambient = nullptr,
                         int cap = -1);

OperatorAlgebra full_algebra(int ambient_dim);
OperatorAlgebra trivial_algebra(int ambient_dim);

// Commutant of `a` relative to `within` (everything in `within` commuting
// with all of `a`).  `a`'s basis must lie in span(within).
OperatorAlgebra commutant(const OperatorAlgebra& a,
                          const OperatorAlgebra& within,
                          const Config& cfg = {});

// Commutant within full Lin(C^D).
OperatorAlgebra commutant(const OperatorAlgebra& a, const Config& cfg = {});

OperatorAlgebra centre(const OperatorAlgebra& a, const Config& cfg = {});

// Minimal projectors of a commutative algebra, ordered by descending trace
// (ties broken by the first differing diagonal entry, descending).  They sum
// to the algebra's unit.  Uses a seeded random Hermitian combination; on an
// ambiguous spectral split the seed is bumped and the draw retried.
std::vector<CMat> atomic_projectors(const OperatorAlgebra& z,
                                    const Config& cfg = {});

OperatorAlgebra lattice_join(const OperatorAlgebra& a,
                             const OperatorAlgebra& b,
                             const Config& cfg = {});

OperatorAlgebra lattice_meet(const OperatorAlgebra& a,
                             const OperatorAlgebra& b,
                             const Config& cfg = {});

// pi * a for a central projector pi of a; the result's unit is pi.
OperatorAlgebra compress(const CMat& pi, const OperatorAlgebra& a,
                         const Config& cfg = {});

BlockStructure block_structure(const OperatorAlgebra& a,
                               const Config& cfg = {});

// Splits Lin(C^D) across a *factor* subalgebra f (trivial centre) whose
// commutant restores the full space: returns u with u f u^† = Lin(C^m) (x) I_n.
FactorSplit tensor_factorize(const OperatorAlgebra& f, const Config& cfg = {});

// convenience: is x an element of the algebra's span?
bool contains(const OperatorAlgebra& a, const CMat& x, const Config& cfg = {});

// subspace equality of two algebras (HS projector distance < 10*tol)
bool equal_algebras(const OperatorAlgebra& a, const OperatorAlgebra& b,
                    const Config& cfg = {});

double algebra_distance(const OperatorAlgebra& a, const OperatorAlgebra& b);

} // namespace partalg
