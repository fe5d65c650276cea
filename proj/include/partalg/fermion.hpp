#pragma once

#include <vector>

#include "partalg/algebra.hpp"

namespace partalg {

// N fermionic modes on C^{2^N}, occupation basis ordered lexicographically
// (mode 0 most significant), annihilators realized with Z-strings on the
// lower-index modes.
struct FermionSystem {
    int modes = 0;
    std::vector<CMat> a;  // annihilators, one per mode

    int dim() const { return 1 << modes; }
};

// One term of the normal-form expansion of an operator over the per-mode
// word family {id, a^dag, a, n}.  codes[i] in {0, 1, 2, 3} in that order.
struct CanonicalTerm {
    std::vector<int> codes;
    Complex coeff;
};

// Build the system; modes must lie in [1, 12].
FermionSystem jw_system(int modes);

// Algebra generated by all quadratic monomials a_i^# a_j^# with i, j in S.
OperatorAlgebra physical_algebra(const FermionSystem& sys,
                                 const std::vector<int>& S,
                                 const Config& cfg = {});

// Odd-parity projector of the region S, computed from number operators via
// inclusion-exclusion: sum over nonempty Y subset S of (-2)^{|Y|-1} prod n_i.
CMat parity_projector(const FermionSystem& sys, const std::vector<int>& S);

// Expand y in the (linearly independent) word basis prod_i x_i(codes[i]),
// modes in ascending order.  Terms with coefficient below the cutoff are
// dropped; terms come in lexicographic code order.
std::vector<CanonicalTerm> canonical_decompose(const FermionSystem& sys,
                                               const CMat& y,
                                               const Config& cfg = {});

CMat word_operator(const FermionSystem& sys, const std::vector<int>& codes);

// (a_i + a_i^dag)(a_j + a_j^dag)
CMat b_operator(const FermionSystem& sys, int i, int j);

} // namespace partalg
