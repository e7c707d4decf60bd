#pragma once

#include <map>
#include <string>
#include <vector>

#include "ramgen/field.hpp"
#include "ramgen/indices.hpp"

namespace ramgen {

// Structural-constant table: a rule assigning a field value to every tuple
// (a_1, ..., a_s) with 0 < s < p and entries in the generator index range
// {0} u {a : gcd(a,p) = 1, a < (p-1) v0}. Tables are expected to satisfy
//   I:  eta(a1) = 1
//   II: eta(a1..as1) eta(as1+1..as) = sum over shuffles of the two halves
// (validate() checks both exhaustively over the range).
class EtaTable {
public:
    // The simplest valid rule: eta(a1..as) = 1/s!.
    static EtaTable default_table(const Params& P);
    // A different valid rule, read off a deformed exponential in the free
    // associative algebra on the generator range (coefficients of
    // exp~(sum X_a + alpha0 * sum_{a<b} [X_a, X_b])). Coincides with no
    // default value in degree 2, yet stays diagonal, hence valid.
    static EtaTable deformed_table(const Params& P);
    // User-supplied explicit values (callers should validate()).
    static EtaTable from_map(const Params& P, std::map<std::vector<int>, Fq> values);

    const Params& params() const { return P_; }
    const FieldCtx& field() const { return F_; }
    const std::vector<int>& index_range() const { return range_; }
    bool is_default() const { return values_.empty(); }

    // eta(abar), 1 <= s < p.
    Fq eta(const std::vector<int>& abar) const;
    // eta-circ on flat tuples: (-1)^s eta(reversed abar).
    Fq eta_o_flat(const std::vector<int>& abar) const;
    // eta(abar, nbar): product of twisted block values over the unique
    // partition of nbar into constant runs, when the run values strictly
    // decrease; 0 otherwise; 1 for s = 0.
    Fq eta_pair(const std::vector<int>& abar, const std::vector<long long>& nbar) const;
    // eta-circ(abar, nbar): same with strictly increasing run values and
    // eta_o_flat block values.
    Fq eta_o(const std::vector<int>& abar, const std::vector<long long>& nbar) const;
    // B_{s1}(abar) = sum over connected permutations starting at s1.
    Fq B_coeff(int s1, const std::vector<int>& abar) const;

private:
    Params P_;
    FieldCtx F_;
    std::vector<int> range_;
    std::map<std::vector<int>, Fq> values_; // empty = default rule
};

// Connected permutations of [1, s] with pi(1) = s1: every prefix
// {pi(1), ..., pi(l)} is an interval. Returned as pi(1..s) (1-based values).
std::vector<std::vector<int>> connected_perms(int s, int s1);

// Shuffles of (1..s1) into (s1+1..s), returned as the merged value sequences.
std::vector<std::vector<int>> shuffles(int s1, int s);

struct EtaReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Exhaustive check of identities I and II over the generator index range.
EtaReport validate_eta(const EtaTable& eta);

} // namespace ramgen
