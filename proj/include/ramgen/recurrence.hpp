#pragma once

#include <map>
#include <utility>

#include "ramgen/generators.hpp"

namespace ramgen {

// Splits a single Laurent term t^{-j} w (j != 0) as R + (sigma - id) S inside
// the truncated module:
//   j < 0: R = 0, S = -sum_{m >= 0} t^{-j p^m} sigma^m w (finite, since the
//          exponents run off the deep end of the truncation);
//   j > 0: with m(j) the largest m such that j / p^m is an integer member of
//          the admissible exponent set, R = t^{-j/p^{m(j)}} sigma^{-m(j)} w
//          and S = sum_{0 <= m < m(j)} sigma^m R.
// The decomposition is unique. A positive j whose p-free part misses the
// admissible set signals a closure bug upstream and raises internal_error.
std::pair<LaurentLie, LaurentLie> rs_decompose(const LaurEnv& R, const LaurentLie& term,
                                               const IndexTable& tab);

// The unique x in the positive-t-power region (exponents j < 0) with
// e1 = (sigma x) o e2 o (-x), where o is the Campbell-Hausdorff composition
// taken termwise over Laurent exponents. Built by induction on the weight
// filtration; each step adds delta = -sum_{m >= 0} sigma^m(discrepancy).
// Lie-valued inputs only; a discrepancy outside the region is a domain_error.
LaurentLie solve_sigma_conjugation(const LaurEnv& R, const LaurentLie& e1,
                                   const LaurentLie& e2, const IndexTable& tab);

struct RecurrenceSolution {
    LaurentLie xbar;                 // envelope-valued; exponents carry ch >= 1
    std::map<long long, LieElem> V;  // exponent iota -> Lie coefficient of t^{-iota}
    std::map<long long, EnvElem> Vrem; // degree >= 2 remainder of each anchor
};

// Solves sigma x - x + sum_iota t^{-iota} V_iota = Ebar + (exp~ e^(q) - 1) x
//                                                - sigma x (exp~ e^(q) - 1)
// in the truncated envelope-valued Laurent module, grade by grade in the
// generator count (the product terms raise the grade, so the right-hand side
// at grade m only needs x below grade m). Each term of the grade-m right-hand
// side is split by rs_decompose: S-parts accumulate into x, R-parts into the
// anchor table. Re-substituting the envelope-valued solution must leave a
// residual of exactly zero (internal_error otherwise). Each anchor is then
// returned as its Lie (degree-1) part in V plus a degree >= 2 remainder in
// Vrem; once the base algebra has nontrivial products the remainder can be
// nonzero, but it always lies in the two-sided envelope ideal generated by
// the ramification ideal, which is exactly the slack the congruence for the
// anchors allows (see remainder_absorbed).
RecurrenceSolution solve_recurrence(const LaurEnv& R, const EtaTable& eta,
                                    const IndexTable& tab);

// Whether an anchor remainder lies in the degree >= 2 part of the two-sided
// envelope ideal generated by `ideal`. Anchors are determined only modulo
// this subspace (their Lie parts, correspondingly, modulo [ideal, algebra]),
// so a remainder outside it signals a genuine solver inconsistency.
bool remainder_absorbed(const LaurEnv& R, const IdealBasis& ideal, const EnvElem& rem);

} // namespace ramgen
