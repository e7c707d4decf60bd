#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ramgen/errors.hpp"

namespace ramgen {

constexpr int kMaxFieldDeg = 8;

// Element of F_{p^N0} in power-basis coordinates over the deterministic
// modulus held by FieldCtx. Coordinates beyond N0 are kept at zero so that
// operator== / operator< can compare blindly.
struct Fq {
    std::array<uint8_t, kMaxFieldDeg> c{};

    friend bool operator==(const Fq& a, const Fq& b) { return a.c == b.c; }
    friend bool operator!=(const Fq& a, const Fq& b) { return !(a == b); }
    friend bool operator<(const Fq& a, const Fq& b) { return a.c < b.c; }
};

class FieldCtx {
public:
    FieldCtx() = default;
    FieldCtx(int p, int N0);

    int p() const { return p_; }
    int deg() const { return n0_; }
    // Coefficients c_0..c_{N0-1} of the monic modulus x^N0 + sum c_i x^i.
    const std::vector<int>& modulus() const { return mod_; }

    Fq zero() const { return Fq{}; }
    Fq one() const { return from_int(1); }
    Fq from_int(long long v) const;
    Fq from_coeffs(const std::vector<int>& cs) const;
    bool is_zero(const Fq& a) const { return a == Fq{}; }

    Fq add(const Fq& a, const Fq& b) const;
    Fq sub(const Fq& a, const Fq& b) const;
    Fq neg(const Fq& a) const;
    Fq mul(const Fq& a, const Fq& b) const;
    Fq inv(const Fq& a) const;
    Fq scale(const Fq& a, long long s) const { return mul(a, from_int(s)); }

    // sigma^n(a) = a^{p^n}; n may be negative (sigma has order N0).
    Fq frobenius(const Fq& a, long long n) const;
    // Absolute trace, an element of F_p returned as an integer in [0, p).
    int trace(const Fq& a) const;
    // First element of trace 1 in the base-p enumeration (c_0 least significant).
    Fq alpha0() const { return alpha0_; }

    // Number of elements enumerated as integers [0, p^N0).
    long long card() const { return card_; }
    Fq element(long long idx) const; // idx-th element in enumeration order
    std::string str(const Fq& a) const;

private:
    int p_ = 0, n0_ = 0;
    long long card_ = 0;
    std::vector<int> mod_;
    // frob_[n] is the N0 x N0 matrix of sigma^n in the power basis.
    std::vector<std::vector<std::array<uint8_t, kMaxFieldDeg>>> frob_;
    Fq alpha0_;
};

} // namespace ramgen
