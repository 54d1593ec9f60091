#pragma once

#include "pdclab/fock.hpp"

namespace pdclab {

/// Sends every side-A source mode through a lossless 50:50 beamsplitter,
/// a_i^dag -> (a_{i,A1}^dag + a_{i,A2}^dag)/sqrt(2). The splitter is blind to the
/// internal index and adds no relative phase. Side B is untouched.
/// Throws PreconditionError if the input already has photons in A1 or A2.
FockVector split_side_a(const FockVector& state);

/// Part of a split state with exactly one photon in A1 and one in A2
/// (side B unconstrained). Throws PreconditionError on unsplit input.
FockVector coincidence_component(const FockVector& state);

} // namespace pdclab
