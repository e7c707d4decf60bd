#pragma once

#include <map>
#include <string>
#include <vector>

#include "ramgen/errors.hpp"
#include "ramgen/rational.hpp"

namespace ramgen {

// Base configuration: residue characteristic, residue-field degree, and the
// break point v0 of the filtration we want generators for.
struct Params {
    int p = 3;
    int N0 = 1;
    Rat v0 = Rat{1, 1};
};

// Everything derived from Params that downstream modules consume.
struct RamParams {
    Params base;
    Rat wstar;        // (p-1) * v0, strict upper bound for single letters
    int ustar = 0;    // (p-1)(p-2) + 1, slot budget for exponent sums
    int a_max = 0;    // largest integer strictly below wstar
    Rat delta0;       // certified gap below v0 left free by exponent sums
    int N0star = 0;   // field degree of the rational approximation r*
    long long b0star = 0;
    Rat rstar;        // b0star / (p^N0star - 1), inside (v0 - delta0, v0)
    int Nstar = 0;    // lifting depth; multiple of lcm(N0, N0star)
    long long q = 0;  // p^Nstar
    long long bstar = 0; // b0star * (q-1) / (p^N0star - 1)
    Rat v0flat;       // largest filtration jump strictly below v0
};

// Set of non-negative integers backed by a bitset.
class IntSet {
public:
    explicit IntSet(long long max_value = 0) : max_(max_value), bits_((max_value >> 6) + 1, 0) {}
    long long max_value() const { return max_; }
    void insert(long long v) { bits_[v >> 6] |= (1ull << (v & 63)); }
    bool contains(long long v) const {
        if (v < 0 || v > max_) return false;
        return (bits_[v >> 6] >> (v & 63)) & 1;
    }
    // Largest member <= v, or -1.
    long long prev_member(long long v) const;
    // Smallest member >= v, or -1.
    long long next_member(long long v) const;
    std::vector<long long> members() const;

private:
    long long max_;
    std::vector<uint64_t> bits_;
};

// Sums of at most `slots` terms a * p^j with a in [1, a_max], j in [0, M].
// Always contains 0 (the empty sum).
IntSet exponent_sums(int p, int a_max, int slots, int M);

// Minimum number of terms a * p^j (a in [1, a_max], j in [0, M]) summing to V.
// The empty sum gives min_terms(0) == 0. Throws internal_error if V is unreachable.
int min_terms(long long V, int p, int a_max, int M);

// Same minimum via the base-p digit formula (digits above position M fold
// down into position M; each position j costs ceil(digit_j / a_max)). Exact
// whenever a_max < p; falls back to the DP otherwise.
int min_slots(long long V, int p, int a_max, int M);

// Numerators y of the comparison set r* * y / p^M: base-p digit sum <= p-1
// and exactly M+1 digits, sorted ascending.
std::vector<long long> digit_bounded(int p, int M);

Rat compute_delta0(const Params& P);

// delta0 together with the frozen (N0star, b0star) pair and r*.
void choose_rstar(const Params& P, Rat delta0, int& N0star, long long& b0star, Rat& rstar);

int choose_Nstar(const Params& P, Rat delta0, int N0star, long long b0star, Rat rstar);

Rat compute_v0_flat(const Params& P);

RamParams derive_params(const Params& P);

// One admissible exponent iota = q*V - bstar*Y.
struct IndexEntry {
    long long value = 0;
    int m = 0;          // depth of Y: Y in [p^m, p^{m+1}) (0 when Y = 0)
    long long V = 0;    // exponent-sum part
    long long Y = 0;    // digit-bounded part (0 on the pure q-multiple branch)
    int ch = 0;         // digit sum of Y
    int kappa = 1;      // minimal presentation length of V
    int w0 = 1;         // 1 + floor(iota / bstar) for iota >= 0, else 1
    int vp = 0;         // p-adic valuation of iota (INT_MAX sentinel for 0)
    bool admissible = false; // member of the positive reduced subset
};

struct IndexTable {
    RamParams rp;
    std::map<long long, IndexEntry> entries; // the full exponent set
    std::vector<long long> positive;   // admissible positives
    std::vector<long long> reduced0;   // admissible positives plus 0
    std::vector<long long> ch1;        // ch = 1 members, all signs
    std::vector<long long> ch1_reduced;   // ch = 1 admissible positives
    std::vector<long long> ch1_primitive; // ch = 1 members not p times another

    bool contains(long long v) const { return entries.count(v) != 0; }
    const IndexEntry& at(long long v) const;
    // Largest n >= 0 with v * p^n still in the set; v must be a nonzero member.
    int mult_depth(long long v) const;
    // For a ch = 1 member: V / p^m as an exact rational.
    Rat alpha(long long v) const;
};

IndexTable build_index_table(const RamParams& rp);

// Smallest M with p^{M+1} * (alpha - v0flat) > (p-1) * v0flat.
int depth_for(const RamParams& rp, Rat alpha);
// depth_for at alpha = v0 (finite cap used by the depth-graded generator family).
int depth_cap(const RamParams& rp);

} // namespace ramgen
