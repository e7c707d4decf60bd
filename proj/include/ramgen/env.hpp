#pragma once

#include <map>
#include <utility>
#include <vector>

#include "ramgen/lie.hpp"

namespace ramgen {

// PBW monomial: (basis index, exponent) pairs with strictly increasing index.
using Mono = std::vector<std::pair<int, int>>;

// Sparse envelope element: monomial index -> nonzero coefficient.
using EnvElem = std::map<int, Fq>;

// Truncated enveloping algebra A_k / J^p of a LieAlgebra, on PBW monomials of
// generator-degree < p (degree counts Lie generators with multiplicity, so a
// basis commutator contributes its word length).
class Envelope {
public:
    explicit Envelope(const LieAlgebra& L);

    const LieAlgebra& lie() const { return *L_; }
    const FieldCtx& field() const { return L_->field(); }
    int dim() const { return (int)monos_.size(); }
    const Mono& mono(int idx) const { return monos_.at(idx); }
    int mono_deg(int idx) const { return deg_.at(idx); }
    int unit_index() const { return unit_; }

    EnvElem one() const { return {{unit_, field().one()}}; }
    bool is_zero(const EnvElem& a) const { return a.empty(); }
    EnvElem add(const EnvElem& a, const EnvElem& b) const;
    EnvElem sub(const EnvElem& a, const EnvElem& b) const;
    EnvElem neg(const EnvElem& a) const;
    EnvElem scale(const EnvElem& a, const Fq& c) const;
    EnvElem mul(const EnvElem& a, const EnvElem& b) const;

    // Embedding of the Lie algebra (basis commutators are PBW variables).
    EnvElem pbw_expand(const LieElem& x) const;
    bool is_lie(const EnvElem& a) const;
    // Inverse of pbw_expand; throws internal_error off the Lie subspace.
    LieElem to_lie(const EnvElem& a) const;

    // exp~(x) = sum_{0<=i<p} x^i / i!; x must have zero constant term.
    EnvElem trunc_exp(const EnvElem& x) const;
    // log on 1 + J: sum_{1<=i<p} (-1)^{i+1} (a-1)^i / i.
    EnvElem trunc_log(const EnvElem& a) const;

    // Campbell-Hausdorff composition: the Lie element l with
    // exp~(l1) exp~(l2) = exp~(l) mod J^p.
    LieElem ch_compose(const LieElem& l1, const LieElem& l2) const;

    // Coproduct test: Delta(a) = a (x) a modulo (J(x)1 + 1(x)J)^p.
    bool is_diagonal(const EnvElem& a) const;

private:
    const LieAlgebra* L_;
    std::vector<Mono> monos_;
    std::vector<int> deg_;
    int unit_ = 0;
    std::map<Mono, int> mono_index_;
    mutable std::map<std::vector<int>, EnvElem> straighten_memo_;

    // Rewrites an arbitrary product of PBW variables into monomial form.
    const EnvElem& straighten(const std::vector<int>& seq) const;
};

} // namespace ramgen
