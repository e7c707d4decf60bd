#pragma once

#include <map>
#include <vector>

#include "ramgen/env.hpp"
#include "ramgen/eta.hpp"
#include "ramgen/laurent.hpp"

namespace ramgen {

// F0(alpha, N) = sum a1 eta(abar, nbar) [...[D_{a1 n1}, D_{a2 n2}], ..., D_{as ns}]
// over tuples with 1 <= s < p, a_i in the generator index range, n1 = 0,
// 0 >= n2 >= ... >= ns >= -N and a1 p^{n1} + ... + as p^{ns} = alpha.
// Zero when alpha has no such presentation.
LieElem F0(const LieAlgebra& L, const EtaTable& eta, const Rat& alpha, int N);

// Fbar(iota, n): the companion envelope-valued sum at target exponent
// iota p^n: over tuples with nbar >= 0, max(nbar) = m[iota] + n and
// q gamma(abar, nbar) - p^{max nbar} bstar = iota p^n, of
//   sum_{s1} eta_o(prefix) eta(suffix) (sum of a_u over slots at max depth)
//   D_{a1 n1} ... D_{as ns}.
// The sum always lands in the Lie subspace and is returned there.
// Fbar0 keeps only the part with min(nbar) = 0.
LieElem Fbar(const LieAlgebra& L, const Envelope& E, const EtaTable& eta,
             const IndexTable& tab, long long iota, int n);
LieElem Fbar0(const LieAlgebra& L, const Envelope& E, const EtaTable& eta,
              const IndexTable& tab, long long iota, int n);

// One F0(alpha[iota], m[iota] + m_iota) per admissible positive ch = 1
// exponent, with m_iota >= m(iota) (default: the maximal power depth m(iota)).
// The minimal sigma-stable ideal on these is the ramification ideal.
std::vector<LieElem> generator_family(const LieAlgebra& L, const EtaTable& eta,
                                      const IndexTable& tab,
                                      const std::map<long long, int>& choice = {});

// The same ideal from the uniform-depth family {F0(alpha, N) : alpha >= v0};
// any fixed N >= Nstar - 1 works.
IdealBasis uniform_depth_ideal(const LieAlgebra& L, const EtaTable& eta,
                               const RamParams& rp, int N);

// The same ideal from per-alpha minimal depths M_alpha (smallest M with
// p^{M+1}(alpha - vflat) > (p-1) vflat) together with the part of the algebra
// of flat weight >= p, where vflat is the previous filtration jump.
IdealBasis flat_boundary_ideal(const LieAlgebra& L, const EtaTable& eta,
                               const RamParams& rp, const Rat& vflat);

} // namespace ramgen
