#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "ramgen/errors.hpp"

namespace ramgen {

// Exact rational with int64 numerator/denominator and __int128 intermediates.
// Overflow past int64 after reduction raises resource_error; at desk scale
// (p in {3,5}, small v0) this never fires, but silent wraparound would be fatal.
struct Rat {
    long long num = 0;
    long long den = 1;

    Rat() = default;
    Rat(long long n) : num(n), den(1) {}
    Rat(long long n, long long d) { *this = make(n, d); }

    static Rat make(__int128 n, __int128 d) {
        if (d == 0) throw domain_error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n;
        __int128 g = gcd128(a, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw resource_error("rational overflow");
        Rat r;
        r.num = (long long)n;
        r.den = (long long)d;
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b) { __int128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return make((__int128)a.num * b.den + (__int128)b.num * a.den,
                    (__int128)a.den * b.den);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return make((__int128)a.num * b.den - (__int128)b.num * a.den,
                    (__int128)a.den * b.den);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return make((__int128)a.num * b.num, (__int128)a.den * b.den);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num == 0) throw domain_error("rational division by zero");
        return make((__int128)a.num * b.den, (__int128)a.den * b.num);
    }
    Rat operator-() const { Rat r; r.num = -num; r.den = den; return r; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return (__int128)a.num * b.den < (__int128)b.num * a.den;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    bool is_integer() const { return den == 1; }

    // Largest integer <= value.
    long long floor() const {
        long long q = num / den;
        if (num % den != 0 && num < 0) --q;
        return q;
    }
    long long ceil() const {
        long long q = num / den;
        if (num % den != 0 && num > 0) ++q;
        return q;
    }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    // Accepts "n" or "n/d".
    static Rat parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rat(std::stoll(s));
            return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
        } catch (const std::exception&) {
            throw usage_error("cannot parse rational: " + s);
        }
    }
};

inline Rat abs(const Rat& a) { return a.num < 0 ? -a : a; }

// p^n as long long with overflow guard.
inline long long ipow(long long p, int n) {
    long long r = 1;
    for (int i = 0; i < n; ++i) {
        if (r > INT64_MAX / p) throw resource_error("integer power overflow");
        r *= p;
    }
    return r;
}

} // namespace ramgen
