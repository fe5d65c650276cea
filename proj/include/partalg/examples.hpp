#pragma once

#include "partalg/fermion.hpp"
#include "partalg/partition.hpp"

namespace partalg {

// Plain tensor split of M_{d1*d2}: 𝒜_1 = M_{d1} (x) I, 𝒜_2 = I (x) M_{d2}.
Partition factorisation_partition(int d1 = 2, int d2 = 2,
                                  const Config& cfg = {});

// One quantum particle on two branches, each carrying a C^d internal space:
// 𝒜_1 = {|1><1| (x) f + a |2><2| (x) I}, 𝒜_2 its commutant.
Partition two_trajectories_partition(int d = 2, const Config& cfg = {});

// One particle on three positions (qutrit C) with a C^d internal space;
// 𝒜_n acts internally at position n and as scalars elsewhere, pair subsets
// add the cross-position maps.
Partition tripartite_partition(int d = 2, const Config& cfg = {});

// Local-mode partition of the N-mode fermionic system (declared with the
// fermion module; assembled here).
Partition fermionic_partition(int modes, const Config& cfg = {});

} // namespace partalg
