#include "ramgen/indices.hpp"

#include <algorithm>
#include <climits>
#include <numeric>

namespace ramgen {

long long IntSet::prev_member(long long v) const {
    if (v > max_) v = max_;
    if (v < 0) return -1;
    long long w = v >> 6;
    uint64_t mask = (v & 63) == 63 ? ~0ull : ((1ull << ((v & 63) + 1)) - 1);
    for (; w >= 0; --w) {
        uint64_t bits = bits_[w] & mask;
        if (bits) return (w << 6) + (63 - __builtin_clzll(bits));
        mask = ~0ull;
    }
    return -1;
}

long long IntSet::next_member(long long v) const {
    if (v < 0) v = 0;
    if (v > max_) return -1;
    long long w = v >> 6;
    uint64_t mask = ~0ull << (v & 63);
    for (; w < (long long)bits_.size(); ++w) {
        uint64_t bits = bits_[w] & mask;
        if (bits) return (w << 6) + __builtin_ctzll(bits);
        mask = ~0ull;
    }
    return -1;
}

std::vector<long long> IntSet::members() const {
    std::vector<long long> out;
    for (long long w = 0; w < (long long)bits_.size(); ++w) {
        uint64_t bits = bits_[w];
        while (bits) {
            int b = __builtin_ctzll(bits);
            out.push_back((w << 6) + b);
            bits &= bits - 1;
        }
    }
    return out;
}

namespace {

// dst |= src << shift, on raw bitset words.
void or_shifted(std::vector<uint64_t>& dst, const std::vector<uint64_t>& src, long long shift) {
    long long w = shift >> 6;
    int r = (int)(shift & 63);
    for (long long i = 0; i + w < (long long)dst.size() && i < (long long)src.size(); ++i) {
        dst[i + w] |= src[i] << r;
        if (r && i + w + 1 < (long long)dst.size()) dst[i + w + 1] |= src[i] >> (64 - r);
    }
}

std::vector<long long> coin_values(int p, int a_max, int M) {
    std::vector<long long> coins;
    long long pj = 1;
    for (int j = 0; j <= M; ++j, pj *= p)
        for (int a = 1; a <= a_max; ++a) coins.push_back(a * pj);
    std::sort(coins.begin(), coins.end());
    coins.erase(std::unique(coins.begin(), coins.end()), coins.end());
    return coins;
}

struct BitWords {
    long long max;
    std::vector<uint64_t> w;
    explicit BitWords(long long m) : max(m), w((m >> 6) + 1, 0) {}
};

// Every pair (V, Y) with Y at digit depth m, V within the slot budget at
// depth m, and |q V - bstar Y| <= (p-1) bstar; calls f(V, Y, value).
template <class F>
void scan_presentations(int p, int a_max, int ustar, long long q, long long bstar, int m, F&& f) {
    long long bound = (long long)(p - 1) * bstar;
    for (long long Y : digit_bounded(p, m)) {
        __int128 numlo = (__int128)bstar * (Y - (p - 1));
        long long Vlo = numlo <= 0 ? 0 : (long long)((numlo + q - 1) / q);
        long long Vhi = (long long)((__int128)bstar * (Y + (p - 1)) / q);
        for (long long V = Vlo; V <= Vhi; ++V) {
            __int128 val = (__int128)q * V - (__int128)bstar * Y;
            if (val > bound || val < -bound) continue;
            if (min_slots(V, p, a_max, m) > ustar) continue;
            f(V, Y, (long long)val);
        }
    }
}

} // namespace

IntSet exponent_sums(int p, int a_max, int slots, int M) {
    long long pm = ipow(p, M);
    long long maxv = (long long)slots * a_max * pm;
    IntSet out(maxv);
    auto coins = coin_values(p, a_max, M);
    std::vector<uint64_t> cur((maxv >> 6) + 1, 0), next;
    cur[0] = 1; // empty sum
    out.insert(0);
    for (int s = 0; s < slots; ++s) {
        next = cur;
        for (long long c : coins) or_shifted(next, cur, c);
        cur.swap(next);
    }
    for (long long i = 0; i < (long long)cur.size(); ++i) {
        uint64_t bits = cur[i];
        while (bits) {
            int b = __builtin_ctzll(bits);
            out.insert((i << 6) + b);
            bits &= bits - 1;
        }
    }
    return out;
}

int min_terms(long long V, int p, int a_max, int M) {
    if (V == 0) return 0;
    auto coins = coin_values(p, a_max, M);
    std::vector<int> dp(V + 1, INT_MAX);
    dp[0] = 0;
    for (long long v = 1; v <= V; ++v)
        for (long long c : coins) {
            if (c > v) break;
            if (dp[v - c] != INT_MAX && dp[v - c] + 1 < dp[v]) dp[v] = dp[v - c] + 1;
        }
    if (dp[V] == INT_MAX) throw internal_error("value has no presentation");
    return dp[V];
}

int min_slots(long long V, int p, int a_max, int M) {
    if (V < 0) throw internal_error("negative value in min_slots");
    if (a_max >= p) {
        // pushing units down a position can merge slots when a_max >= p,
        // so the digit formula is not exact; use the DP at small scale
        if (V > 20'000'000) throw resource_error("presentation length query too large");
        return min_terms(V, p, a_max, M);
    }
    long long pm = ipow(p, M);
    long long hi = V / pm, rem = V % pm;
    long long cost = (hi + a_max - 1) / a_max;
    while (rem) {
        long long d = rem % p;
        cost += (d + a_max - 1) / a_max;
        rem /= p;
    }
    if (cost > INT_MAX) throw resource_error("presentation length overflow");
    return (int)cost;
}

std::vector<long long> digit_bounded(int p, int M) {
    std::vector<long long> out;
    // digits d_0..d_M, d_M >= 1, total digit sum <= p-1
    std::vector<int> d(M + 1, 0);
    auto rec = [&](auto&& self, int pos, int budget) -> void {
        if (pos == M) {
            for (int dm = 1; dm <= budget && dm < p; ++dm) {
                long long y = (long long)dm * ipow(p, M);
                long long pj = 1;
                for (int j = 0; j < M; ++j, pj *= p) y += d[j] * pj;
                out.push_back(y);
            }
            return;
        }
        for (int v = 0; v <= budget && v < p; ++v) {
            d[pos] = v;
            self(self, pos + 1, budget - v);
        }
        d[pos] = 0;
    };
    rec(rec, 0, p - 1);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

void basic_checks(const Params& P) {
    if (P.v0.num <= 0) throw domain_error("v0 must be positive");
    if (P.v0.den % P.p == 0) throw domain_error("v0 denominator must be prime to p");
}

Rat wstar_of(const Params& P) { return Rat::make(P.p - 1, 1) * P.v0; }

int a_max_of(const Params& P) {
    Rat w = wstar_of(P);
    long long am = w.ceil() - 1;
    if (am < 1) throw domain_error("v0 too small: no letter weights below (p-1)*v0");
    return (int)am;
}

} // namespace

Rat compute_delta0(const Params& P) {
    basic_checks(P);
    int p = P.p;
    int ustar = (p - 1) * (p - 2) + 1;
    int a_max = a_max_of(P);
    for (int M = 1; M <= 12; ++M) {
        long long pm = ipow(p, M);
        long long maxv = (long long)ustar * a_max * pm;
        if (maxv > 200'000'000) break;
        Rat best;
        bool have = false;
        for (long long v = 0; v <= maxv; ++v) {
            if (min_slots(v, p, a_max, M) > ustar) continue;
            for (int s = 1; s < p; ++s) {
                Rat val = P.v0 - Rat::make(v, (long long)s * pm);
                if (val.num > 0 && (!have || val < best)) { best = val; have = true; }
            }
        }
        if (!have) continue;
        // Certify: any refinement of a level-M sum adds at most
        // (ustar - terms used) * a_max / p^{M+1}, so no deeper value can
        // undercut `best` if every positive value clears it with headroom.
        bool ok = true;
        Rat unit = Rat::make(a_max, pm * p);
        for (long long v = 0; v <= maxv && ok; ++v) {
            int mt = min_slots(v, p, a_max, M);
            if (mt > ustar) continue;
            Rat h = Rat::make(ustar - mt, 1) * unit;
            if (h.num == 0) continue;
            for (int s = 1; s < p; ++s) {
                Rat val = P.v0 - Rat::make(v, (long long)s * pm);
                if (val.num > 0 && val - h / Rat::make(s, 1) < best) { ok = false; break; }
            }
        }
        if (ok) return best;
    }
    throw resource_error("gap below v0 did not certify within depth 12");
}

void choose_rstar(const Params& P, Rat delta0, int& N0star, long long& b0star, Rat& rstar) {
    int p = P.p;
    Rat lo = P.v0 - delta0;
    for (int n = 2; n <= 18; ++n) {
        long long q0m1 = ipow(p, n) - 1;
        // b in (lo * q0m1, v0 * q0m1)
        long long bfrom = (lo * Rat::make(q0m1, 1)).floor() + 1;
        long long bto = (P.v0 * Rat::make(q0m1, 1)).ceil() - 1;
        for (long long b = std::max<long long>(1, bfrom); b <= bto; ++b) {
            Rat r = Rat::make(b, q0m1);
            if (!(lo < r && r < P.v0)) continue;
            long long g1 = std::gcd(b, (long long)p);
            long long g2 = std::gcd(b, q0m1);
            if (g1 == 1 && g2 == 1) {
                N0star = n;
                b0star = b;
                rstar = r;
                return;
            }
        }
    }
    throw resource_error("no admissible rational approximation of v0 found");
}

int choose_Nstar(const Params& P, Rat delta0, int N0star, long long b0star, Rat rstar) {
    int p = P.p;
    int ustar = (p - 1) * (p - 2) + 1;
    int a_max = a_max_of(P);
    long long q0m1 = ipow(p, N0star) - 1;
    Rat wstar = wstar_of(P);

    // Lower bound on the separation between the exponent-sum values and the
    // scaled digit-bounded values. Exact min at each truncation level, minus a
    // headroom term covering all deeper refinements on both sides.
    Rat rho_lb;
    bool have_rho = false;
    for (int M = 1; (long long)ustar * a_max * ipow(p, M) <= 150'000'000; ++M) {
        long long pm = ipow(p, M);
        IntSet A = exponent_sums(p, a_max, ustar, M);
        long long dmin = -1;
        for (long long y : digit_bounded(p, M)) {
            // minimize |x * q0m1 - b0star * y| over members x of A
            long long t = b0star * y / q0m1;
            for (long long x : {A.prev_member(t), A.next_member(t + 1), A.next_member(t)}) {
                if (x < 0) continue;
                long long d = x * q0m1 - b0star * y;
                if (d < 0) d = -d;
                if (dmin < 0 || d < dmin) dmin = d;
            }
        }
        if (dmin == 0) throw internal_error("exponent-sum and digit-bounded sets intersect");
        if (dmin < 0) continue;
        Rat rho_hat = Rat::make(dmin, q0m1 * pm);
        Rat head = (Rat::make(ustar, 1) * wstar + rstar * Rat::make(p - 1, 1)) / Rat::make(pm * p, 1);
        Rat lb = rho_hat - head;
        if (!have_rho || rho_lb < lb) { rho_lb = lb; have_rho = true; }
    }

    long long L = std::lcm((long long)P.N0, (long long)N0star);
    Rat lo = P.v0 - delta0;
    // approximation condition rstar * (1 - p^-N) in (v0 - delta0, v0),
    // cross-multiplied so huge p^N never lands in a rational denominator
    auto approx_ok = [&](long long pn) {
        Rat diff = rstar - lo; // need diff > rstar / p^N
        bool lower = (__int128)diff.num * rstar.den * pn > (__int128)rstar.num * diff.den;
        bool upper = (__int128)rstar.num * (pn - 1) * P.v0.den <
                     (__int128)P.v0.num * rstar.den * pn;
        return lower && upper;
    };
    if (have_rho && rho_lb.num > 0) {
        Rat c2rhs = Rat::make(2 * (p - 1), 1) * rstar;
        for (long long N = L; N <= 60; N += L) {
            long long pn;
            try {
                pn = ipow(p, (int)N);
            } catch (const resource_error&) {
                break;
            }
            // separation condition: p^N * rho_lb >= 2 * (p-1) * rstar
            __int128 lhs = (__int128)pn * rho_lb.num * c2rhs.den;
            __int128 rhs = (__int128)c2rhs.num * rho_lb.den;
            if (lhs < rhs) continue;
            if (approx_ok(pn)) return (int)N;
        }
        throw resource_error("no admissible lifting depth found");
    }

    // The two value sets can approach each other at distances far below any
    // tractable truncation depth (when r* sits extremely close to v0 the gap
    // shrinks roughly like the square of v0 - r* and keeps refining), so the
    // headroom certificate above can be structurally out of reach. The
    // separation condition feeds exactly two facts downstream: no exponent in
    // range arises at depth >= Nstar, and every exponent in range has a unique
    // presentation. Fall back to the smallest depth for which both facts hold
    // on the enumeration itself, re-scanned with extra depth slack.
    const int slack = 3;
    for (long long N = L;; N += L) {
        long long q;
        try {
            q = ipow(p, (int)N);
            ipow(p, (int)(N + slack + 1)); // the slack scan must stay in range
        } catch (const resource_error&) {
            throw resource_error(
                "no lifting depth works in 64-bit range: the exponent-sum and "
                "scaled digit-bounded values collide at every representable depth "
                "(r* is so close to v0 that the required depth is astronomical)");
        }
        if (!approx_ok(q)) continue;
        long long bstar = b0star * ((q - 1) / q0m1);
        bool ok = true;
        std::map<long long, std::pair<long long, long long>> seen;
        for (int m = 0; m < (int)N + slack && ok; ++m) {
            scan_presentations(p, a_max, ustar, q, bstar, m,
                               [&](long long V, long long Y, long long v) {
                if (!ok) return;
                if (m >= N) { ok = false; return; }
                auto [it, fresh] = seen.emplace(v, std::pair{V, Y});
                if (!fresh && (it->second.first != V || it->second.second != Y)) ok = false;
            });
        }
        if (ok) return (int)N;
    }
}

Rat compute_v0_flat(const Params& P) {
    basic_checks(P);
    int p = P.p;
    long long B = wstar_of(P).ceil() - 1; // strict budget sum a_i < (p-1) v0
    if (B < 1) throw domain_error("v0 too small: empty jump set");
    int slots = p - 1;
    for (int M = 1; M <= 12; ++M) {
        long long pm = ipow(p, M);
        long long maxv = B * pm;
        // reach[s][b] = values with exactly s terms a*p^j (a>=1) and total a-sum b
        std::vector<std::vector<BitWords>> reach(
            slots + 1, std::vector<BitWords>((size_t)B + 1, BitWords(maxv)));
        reach[0][0].w[0] = 1;
        for (int s = 0; s < slots; ++s)
            for (long long b = s; b <= B; ++b) {
                long long pj = 1;
                for (int j = 0; j <= M; ++j, pj *= p)
                    for (long long a = 1; a + b <= B; ++a)
                        or_shifted(reach[s + 1][b + a].w, reach[s][b].w, a * pj);
            }
        auto member = [&](const BitWords& bw, long long v) {
            return (bw.w[v >> 6] >> (v & 63)) & 1;
        };
        Rat best;
        bool have = false;
        for (long long y = 1; y <= maxv; ++y) {
            bool in = false;
            for (int s = 1; s <= slots && !in; ++s)
                for (long long b = s; b <= B; ++b)
                    if (member(reach[s][b], y)) { in = true; break; }
            if (!in) continue;
            Rat x = Rat::make(y, pm);
            if (x < P.v0 && (!have || best < x)) { best = x; have = true; }
        }
        if (!have) continue;
        // Certify: refining a sum below level M needs a spare slot, so only
        // presentations with <= p-2 terms can grow, by at most the unused
        // a-budget at depth M+1.
        bool ok = true;
        for (long long y = 1; y <= maxv && ok; ++y) {
            long long minb = -1;
            for (long long b = 1; b <= B && minb < 0; ++b)
                for (int s = 1; s <= slots - 1; ++s)
                    if ((long long)s <= b && member(reach[s][b], y)) { minb = b; break; }
            if (minb < 0) continue; // no extendable presentation
            Rat x = Rat::make(y, pm);
            if (!(x < P.v0)) continue;
            Rat h = Rat::make(B - minb, pm * p);
            if (h.num > 0 && best < x + h) ok = false;
        }
        if (ok) return best;
    }
    throw resource_error("largest jump below v0 did not certify within depth 12");
}

RamParams derive_params(const Params& P) {
    basic_checks(P);
    RamParams rp;
    rp.base = P;
    rp.wstar = wstar_of(P);
    rp.ustar = (P.p - 1) * (P.p - 2) + 1;
    rp.a_max = a_max_of(P);
    rp.delta0 = compute_delta0(P);
    choose_rstar(P, rp.delta0, rp.N0star, rp.b0star, rp.rstar);
    rp.Nstar = choose_Nstar(P, rp.delta0, rp.N0star, rp.b0star, rp.rstar);
    rp.q = ipow(P.p, rp.Nstar);
    rp.bstar = rp.b0star * ((rp.q - 1) / (ipow(P.p, rp.N0star) - 1));
    rp.v0flat = compute_v0_flat(P);
    return rp;
}

const IndexEntry& IndexTable::at(long long v) const {
    auto it = entries.find(v);
    if (it == entries.end()) throw domain_error("exponent not in the admissible set");
    return it->second;
}

int IndexTable::mult_depth(long long v) const {
    if (v == 0) throw internal_error("mult_depth of zero");
    if (!contains(v)) throw domain_error("exponent not in the admissible set");
    int n = 0;
    long long cur = v;
    long long bound = (long long)(rp.base.p - 1) * rp.bstar;
    while (true) {
        if (cur > bound / rp.base.p || cur < -(bound / rp.base.p) - 1) break;
        if (!contains(cur * rp.base.p)) break;
        cur *= rp.base.p;
        ++n;
    }
    return n;
}

Rat IndexTable::alpha(long long v) const {
    const IndexEntry& e = at(v);
    if (e.ch != 1) throw domain_error("alpha defined only for single-digit entries");
    if (e.Y != ipow(rp.base.p, e.m)) throw internal_error("single-digit entry with composite Y");
    return Rat::make(e.V, ipow(rp.base.p, e.m));
}

IndexTable build_index_table(const RamParams& rp) {
    IndexTable T;
    T.rp = rp;
    int p = rp.base.p;
    long long bound = (long long)(p - 1) * rp.bstar;

    auto insert_entry = [&](IndexEntry e) {
        __int128 val = (__int128)rp.q * e.V - (__int128)rp.bstar * e.Y;
        if (val > bound || val < -bound) return;
        e.value = (long long)val;
        long long av = e.value < 0 ? -e.value : e.value;
        e.vp = 0;
        if (av == 0) {
            e.vp = INT_MAX;
        } else {
            while (av % p == 0) { av /= p; ++e.vp; }
        }
        e.w0 = e.value >= 0 ? (int)(e.value / rp.bstar) + 1 : 1;
        // kappa: fewest slots over presentations of V whose leading slot sits
        // at exponent m (possibly with coefficient zero).
        long long pm_top = ipow(p, e.m);
        int k = 1 + min_slots(e.V, p, rp.a_max, e.m);
        for (long long a = 1; a <= rp.a_max && a * pm_top <= e.V; ++a)
            k = std::min(k, 1 + min_slots(e.V - a * pm_top, p, rp.a_max, e.m));
        e.kappa = k;
        long long ych = e.Y;
        e.ch = 0;
        while (ych) { e.ch += (int)(ych % p); ych /= p; }
        e.admissible = e.value > 0 && !(e.V % p == 0 && e.Y % p == 0) &&
                       e.w0 + e.ch <= p - 1 && e.kappa <= (p - 2) * e.ch + e.w0;
        auto [it, fresh] = T.entries.emplace(e.value, e);
        if (!fresh && (it->second.V != e.V || it->second.Y != e.Y))
            throw internal_error("exponent admits two distinct presentations");
    };

    // Pure q-multiples: V = a with a an integer in [0, (p-1) v0), Y = 0.
    for (long long a = 0; Rat::make(a, 1) < rp.wstar; ++a) {
        IndexEntry e;
        e.V = a;
        e.Y = 0;
        e.m = 0;
        insert_entry(e);
    }

    for (int m = 0; m < rp.Nstar; ++m) {
        scan_presentations(p, rp.a_max, rp.ustar, rp.q, rp.bstar, m,
                           [&](long long V, long long Y, long long) {
            IndexEntry e;
            e.V = V;
            e.Y = Y;
            e.m = m;
            insert_entry(e);
        });
    }

    for (auto& [v, e] : T.entries) {
        if (e.admissible) {
            T.positive.push_back(v);
            if (e.ch == 1) T.ch1_reduced.push_back(v);
        }
        if (e.ch == 1) T.ch1.push_back(v);
    }
    T.reduced0 = T.positive;
    T.reduced0.insert(T.reduced0.begin(), 0);
    for (long long v : T.ch1) {
        bool scaled = v % p == 0 &&
                      std::binary_search(T.ch1.begin(), T.ch1.end(), v / p) &&
                      T.entries.at(v / p).ch == 1;
        if (!scaled) T.ch1_primitive.push_back(v);
    }
    return T;
}

int depth_for(const RamParams& rp, Rat alpha) {
    if (!(rp.v0flat < alpha)) throw domain_error("depth defined only above the largest lower jump");
    Rat rhs = Rat::make(rp.base.p - 1, 1) * rp.v0flat;
    Rat gap = alpha - rp.v0flat;
    for (int M = 0; M <= 64; ++M) {
        if (rhs < Rat::make(ipow(rp.base.p, M + 1), 1) * gap) return M;
    }
    throw resource_error("depth bound did not resolve");
}

int depth_cap(const RamParams& rp) { return depth_for(rp, rp.base.v0); }

} // namespace ramgen
