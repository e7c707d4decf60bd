#include "ramgen/field.hpp"

namespace ramgen {
namespace {

using Poly = std::vector<int>; // coefficients mod p, index = degree

int pdeg(const Poly& f) {
    for (int i = (int)f.size() - 1; i >= 0; --i)
        if (f[i]) return i;
    return -1;
}

// f mod g, g monic.
Poly pmod(Poly f, const Poly& g, int p) {
    int dg = pdeg(g);
    for (int i = pdeg(f); i >= dg; i = pdeg(f)) {
        int c = f[i];
        for (int j = 0; j <= dg; ++j) {
            f[i - dg + j] = ((f[i - dg + j] - c * g[j]) % p + p) % p;
        }
    }
    f.resize(dg > 0 ? dg : 1, 0);
    return f;
}

Poly pmul(const Poly& a, const Poly& b, int p) {
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    return r;
}

bool divides(const Poly& g, const Poly& f, int p) {
    return pdeg(pmod(f, g, p)) < 0;
}

// Trial division by all monic polynomials of degree 1..deg/2. Degrees here
// are tiny (N0 <= 8 over p <= 7), so brute force is plenty.
bool irreducible(const Poly& f, int p) {
    int d = pdeg(f);
    if (d <= 0) return false;
    for (int gd = 1; gd <= d / 2; ++gd) {
        long long count = 1;
        for (int i = 0; i < gd; ++i) count *= p;
        for (long long v = 0; v < count; ++v) {
            Poly g(gd + 1, 0);
            long long t = v;
            for (int i = 0; i < gd; ++i) { g[i] = (int)(t % p); t /= p; }
            g[gd] = 1;
            if (divides(g, f, p)) return false;
        }
    }
    return true;
}

} // namespace

FieldCtx::FieldCtx(int p, int N0) : p_(p), n0_(N0) {
    if (p < 3) throw domain_error("p must be an odd prime >= 3");
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) throw domain_error("p must be prime");
    if (N0 < 1 || N0 > kMaxFieldDeg) throw domain_error("unsupported field degree");

    card_ = 1;
    for (int i = 0; i < N0; ++i) card_ *= p;

    // First irreducible monic polynomial of degree N0 in ascending order of the
    // base-p value of its lower coefficients (constant term least significant).
    for (long long v = 0;; ++v) {
        if (v >= card_) throw internal_error("no irreducible modulus found");
        Poly f(N0 + 1, 0);
        long long t = v;
        for (int i = 0; i < N0; ++i) { f[i] = (int)(t % p); t /= p; }
        f[N0] = 1;
        if (N0 == 1 || irreducible(f, p)) {
            mod_.assign(f.begin(), f.end() - 1);
            break;
        }
    }

    // Matrix of sigma: image of each basis monomial x^i under y -> y^p.
    Poly full(mod_.begin(), mod_.end());
    full.push_back(1);
    std::vector<std::array<uint8_t, kMaxFieldDeg>> sig(N0);
    for (int i = 0; i < N0; ++i) {
        Poly xi(1 + i * p, 0);
        xi[i * p] = 1;
        Poly r = pmod(xi, full, p);
        sig[i].fill(0);
        for (int j = 0; j < N0 && j < (int)r.size(); ++j) sig[i][j] = (uint8_t)r[j];
    }
    frob_.resize(N0);
    // frob_[0] = identity
    frob_[0].assign(N0, {});
    for (int i = 0; i < N0; ++i) frob_[0][i][i] = 1;
    for (int n = 1; n < N0; ++n) {
        frob_[n].assign(N0, {});
        for (int i = 0; i < N0; ++i) {
            // column i of sigma^n = sigma applied to column i of sigma^{n-1}
            for (int j = 0; j < N0; ++j) {
                int cj = frob_[n - 1][i][j];
                if (!cj) continue;
                for (int k = 0; k < N0; ++k)
                    frob_[n][i][k] = (uint8_t)((frob_[n][i][k] + cj * sig[j][k]) % p);
            }
        }
    }

    for (long long v = 0; v < card_; ++v) {
        Fq a = element(v);
        if (trace(a) == 1) { alpha0_ = a; break; }
        if (v + 1 == card_) throw internal_error("no element of trace 1");
    }
}

Fq FieldCtx::from_int(long long v) const {
    Fq a;
    v %= p_;
    if (v < 0) v += p_;
    a.c[0] = (uint8_t)v;
    return a;
}

Fq FieldCtx::from_coeffs(const std::vector<int>& cs) const {
    if ((int)cs.size() > n0_) throw domain_error("too many coordinates");
    Fq a;
    for (size_t i = 0; i < cs.size(); ++i) {
        int v = cs[i] % p_;
        if (v < 0) v += p_;
        a.c[i] = (uint8_t)v;
    }
    return a;
}

Fq FieldCtx::element(long long idx) const {
    Fq a;
    for (int i = 0; i < n0_; ++i) { a.c[i] = (uint8_t)(idx % p_); idx /= p_; }
    return a;
}

Fq FieldCtx::add(const Fq& a, const Fq& b) const {
    Fq r;
    for (int i = 0; i < n0_; ++i) r.c[i] = (uint8_t)((a.c[i] + b.c[i]) % p_);
    return r;
}

Fq FieldCtx::sub(const Fq& a, const Fq& b) const {
    Fq r;
    for (int i = 0; i < n0_; ++i) r.c[i] = (uint8_t)((a.c[i] - b.c[i] + p_) % p_);
    return r;
}

Fq FieldCtx::neg(const Fq& a) const { return sub(Fq{}, a); }

Fq FieldCtx::mul(const Fq& a, const Fq& b) const {
    int tmp[2 * kMaxFieldDeg] = {0};
    for (int i = 0; i < n0_; ++i) {
        if (!a.c[i]) continue;
        for (int j = 0; j < n0_; ++j) tmp[i + j] += a.c[i] * b.c[j];
    }
    // reduce x^{N0+k} = -sum mod_i x^{i+k}
    for (int i = 2 * n0_ - 2; i >= n0_; --i) {
        int c = tmp[i] % p_;
        if (!c) continue;
        for (int j = 0; j < n0_; ++j)
            tmp[i - n0_ + j] = ((tmp[i - n0_ + j] - c * mod_[j]) % p_ + p_) % p_;
        tmp[i] = 0;
    }
    Fq r;
    for (int i = 0; i < n0_; ++i) r.c[i] = (uint8_t)(((tmp[i] % p_) + p_) % p_);
    return r;
}

Fq FieldCtx::inv(const Fq& a) const {
    if (is_zero(a)) throw domain_error("inversion of zero");
    // a^{p^N0 - 2}
    long long e = card_ - 2;
    Fq r = one(), b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

Fq FieldCtx::frobenius(const Fq& a, long long n) const {
    n %= n0_;
    if (n < 0) n += n0_;
    if (n == 0) return a;
    Fq r;
    for (int i = 0; i < n0_; ++i) {
        if (!a.c[i]) continue;
        for (int j = 0; j < n0_; ++j)
            r.c[j] = (uint8_t)((r.c[j] + a.c[i] * frob_[n][i][j]) % p_);
    }
    return r;
}

int FieldCtx::trace(const Fq& a) const {
    Fq s;
    for (int n = 0; n < n0_; ++n) s = add(s, frobenius(a, n));
    for (int i = 1; i < n0_; ++i)
        if (s.c[i]) throw internal_error("trace not in the prime field");
    return s.c[0];
}

std::string FieldCtx::str(const Fq& a) const {
    std::string s = "[";
    for (int i = 0; i < n0_; ++i) {
        if (i) s += ",";
        s += std::to_string((int)a.c[i]);
    }
    return s + "]";
}

} // namespace ramgen
