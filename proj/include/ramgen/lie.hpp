#pragma once

#include <map>
#include <vector>

#include "ramgen/field.hpp"
#include "ramgen/indices.hpp"

namespace ramgen {

// Generator label. a = 0 is the single generator D_0 (n is kept at 0; the
// twisted copies are the scalar multiples sigma^n(alpha0) * D_0). For a >= 1
// the label requires gcd(a, p) = 1 and a < (p-1) v0.
struct Gen {
    int a = 0;
    int n = 0;

    friend bool operator==(const Gen& x, const Gen& y) { return x.a == y.a && x.n == y.n; }
    friend bool operator<(const Gen& x, const Gen& y) {
        return x.a != y.a ? x.a < y.a : x.n < y.n;
    }
};

// Word over the generator alphabet (letter indices).
using Word = std::vector<uint8_t>;

struct LieBasisElem {
    Word word;        // Lyndon word; the element is its right-normed bracket
    int deg = 0;      // word length (number of generators)
    int wt = 0;       // additive weight, wt(D_{an}) = s iff (s-1) v0 <= a < s v0
    int wtflat = 0;   // additive lower-jump weight, wtflat(D_0) = 1
};

// Sparse element of the algebra: basis index -> nonzero coefficient.
using LieElem = std::map<int, Fq>;

// The finite-dimensional Lie k-algebra on the D_{an}: free Lie algebra
// truncated to nilpotence class < p and weight < p, with a right-normed
// Lyndon basis. Immutable after construction.
class LieAlgebra {
public:
    explicit LieAlgebra(const Params& P, int dim_cap = 20000);

    const Params& params() const { return P_; }
    const FieldCtx& field() const { return F_; }
    Rat v0flat() const { return v0flat_; }
    int dim() const { return (int)basis_.size(); }
    const std::vector<Gen>& alphabet() const { return alphabet_; }
    const std::vector<LieBasisElem>& basis() const { return basis_; }
    const LieBasisElem& elem(int i) const { return basis_.at(i); }

    // Basis index of the single-letter word for a generator label.
    int gen_index(const Gen& g) const;
    // D_{an} as an element: for a = 0 this is sigma^n(alpha0) * D_0.
    LieElem generator(int a, int n) const;

    bool is_zero(const LieElem& x) const { return x.empty(); }
    LieElem add(const LieElem& x, const LieElem& y) const;
    LieElem sub(const LieElem& x, const LieElem& y) const;
    LieElem neg(const LieElem& x) const;
    LieElem scale(const LieElem& x, const Fq& c) const;
    LieElem bracket(const LieElem& x, const LieElem& y) const;
    // Semilinear twist: coefficients under sigma^n, D_{a,m} -> D_{a,m+n}.
    LieElem sigma_twist(const LieElem& x, long long n) const;
    // Projection onto the exact-weight-s part (flat = lower-jump weight).
    LieElem weight_part(const LieElem& x, int s, bool flat = false) const;

    // Expansion of basis element i in the truncated word algebra
    // (integer coefficients mod p).
    const std::map<Word, int>& expansion(int i) const { return expansion_.at(i); }
    // Express a word-algebra element in the basis; throws internal_error when
    // the element does not lie in the Lie span.
    LieElem from_words(const std::map<Word, Fq>& e) const;

private:
    Params P_;
    FieldCtx F_;
    Rat v0flat_;
    std::vector<Gen> alphabet_;
    std::vector<int> letter_wt_, letter_wtflat_;
    std::vector<LieBasisElem> basis_;
    std::map<Word, int> gen_of_word_;               // single-letter lookup
    std::vector<std::map<Word, int>> expansion_;

    // Row-reduced expansion matrix for coordinate extraction: reduced rows
    // over the word columns plus the basis combination producing each row.
    std::vector<int> word_cols_;                    // pivot order bookkeeping
    std::map<Word, int> word_index_;
    std::vector<std::vector<Fq>> rref_rows_;        // dense over words
    std::vector<std::vector<Fq>> rref_combo_;       // dense over basis
    std::vector<int> rref_pivot_;

    std::vector<std::vector<LieElem>> bracket_table_;
    std::vector<LieElem> sigma_table_;              // image of basis elem under one twist

    int word_wt(const Word& w) const;
    std::map<Word, int> right_normed(const Word& w) const;
};

// Row-reduced basis of a sigma-stable ideal of the algebra.
struct IdealBasis {
    std::vector<LieElem> rows;
    int dim() const { return (int)rows.size(); }
};

// Smallest k-subspace containing all sigma-twists of the generators and
// closed under bracketing with the whole algebra.
IdealBasis minimal_sigma_ideal(const LieAlgebra& L, const std::vector<LieElem>& gens);

bool ideal_contains(const LieAlgebra& L, const IdealBasis& I, const LieElem& x);
bool ideal_equal(const LieAlgebra& L, const IdealBasis& I, const IdealBasis& J);
IdealBasis ideal_sum(const LieAlgebra& L, const IdealBasis& I, const IdealBasis& J);
// [I, algebra], row-reduced (always contained in I when I is an ideal).
IdealBasis ideal_commutator(const LieAlgebra& L, const IdealBasis& I);
int quotient_dim(const LieAlgebra& L, const IdealBasis& I);

} // namespace ramgen
