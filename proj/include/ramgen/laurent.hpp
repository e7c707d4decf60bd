#pragma once

#include <map>

#include "ramgen/env.hpp"
#include "ramgen/eta.hpp"

namespace ramgen {

// Laurent polynomial in t with Lie- or envelope-valued coefficients:
// terms[j] holds the coefficient of t^{-j}. Lie and envelope payloads share
// the sparse map representation; the flag records the interpretation, and
// operations refuse to mix the two.
struct LaurentLie {
    bool env_valued = false;
    std::map<long long, std::map<int, Fq>> terms;
};

// Operations on Laurent polynomials over one (LieAlgebra, Envelope) pair.
class LaurEnv {
public:
    LaurEnv(const LieAlgebra& L, const Envelope& E);

    const LieAlgebra& lie() const { return *L_; }
    const Envelope& env() const { return *E_; }

    bool is_zero(const LaurentLie& x) const { return x.terms.empty(); }
    LaurentLie add(const LaurentLie& x, const LaurentLie& y) const;
    LaurentLie sub(const LaurentLie& x, const LaurentLie& y) const;
    LaurentLie neg(const LaurentLie& x) const;
    LaurentLie scale(const LaurentLie& x, const Fq& c) const;
    // Lie payloads only: [t^{-i} a, t^{-j} b] = t^{-(i+j)} [a, b].
    LaurentLie bracket(const LaurentLie& x, const LaurentLie& y) const;
    // Envelope payloads only.
    LaurentLie mul(const LaurentLie& x, const LaurentLie& y) const;

    // t^{-j} c -> t^{-j p^n} sigma^n(c); n >= 0.
    LaurentLie sigma(const LaurentLie& x, long long n) const;

    // Reduction mod t^{(p-1) bstar}: drop the weight-s homogeneous part of the
    // coefficient of t^{-j} exactly when j < (s - (p-1)) * bstar. Lie payloads.
    LaurentLie truncate(const LaurentLie& x, long long bstar) const;

    // Termwise embedding of Lie payloads into the envelope.
    LaurentLie embed(const LaurentLie& x) const;
    // exp~ / log in the Laurent envelope algebra. exp_tilde takes a Lie-valued
    // input and returns the envelope-valued series with unit at exponent 0;
    // log_tilde inverts it and converts back (the result must be Lie-valued).
    LaurentLie exp_tilde(const LaurentLie& x) const;
    LaurentLie log_tilde(const LaurentLie& x) const;

    // The Lie-valued e with exp~(e) = 1 + sum eta(a1..as) t^{-(a1+..+as)}
    // D_{a1,0} ... D_{as,0} over tuples from the generator index range.
    // For the default table this is exactly sum_a t^{-a} D_{a,0}.
    LaurentLie build_e(const EtaTable& eta) const;
    // e(t^q): every exponent multiplied by q; equals sigma(e, Nstar).
    LaurentLie build_e_q(const LaurentLie& e, const RamParams& ram) const;
    // Envelope-valued sum eta(a1..as) (a1+..+as) t^{-(a1+..+as) q + bstar}
    // D_{a1,0} ... D_{as,0}, the fixed right-hand side of the recurrence.
    LaurentLie build_E_bar(const RamParams& ram, const EtaTable& eta) const;

private:
    const LieAlgebra* L_;
    const Envelope* E_;

    std::map<int, Fq> env_sigma(const std::map<int, Fq>& a, long long n) const;
};

} // namespace ramgen
