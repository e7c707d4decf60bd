#include "ramgen/generators.hpp"

#include <functional>

namespace ramgen {

LieElem F0(const LieAlgebra& L, const EtaTable& eta, const Rat& alpha, int N) {
    if (N < 0) throw usage_error("depth must be non-negative");
    const FieldCtx& F = L.field();
    int p = L.params().p;
    long long pN = ipow(p, N);
    // scaled by p^N everything is integral; no presentation otherwise
    if (alpha.num <= 0 || pN % alpha.den != 0) return {};
    long long T = alpha.num * (pN / alpha.den);
    const std::vector<int>& range = eta.index_range();

    LieElem out;
    std::vector<int> as;
    std::vector<long long> ns;
    // extend (as, ns) with one more slot at level <= lastn
    std::function<void(long long, const LieElem&, long long)> rec =
        [&](long long R, const LieElem& acc, long long lastn) {
            if (R == 0) {
                Fq c = F.mul(F.from_int(as[0]), eta.eta_pair(as, ns));
                if (!F.is_zero(c)) out = L.add(out, L.scale(acc, c));
            }
            if ((int)as.size() == p - 1) return;
            for (long long n = lastn; n >= -N; --n)
                for (int a : range) {
                    long long add = a * ipow(p, (int)(N + n));
                    if (add > R) break; // range is ascending
                    LieElem next = L.bracket(acc, L.generator(a, (int)n));
                    if (next.empty()) continue;
                    as.push_back(a);
                    ns.push_back(n);
                    rec(R - add, next, n);
                    as.pop_back();
                    ns.pop_back();
                }
        };
    for (int a : range) {
        if (a == 0) continue; // the leading factor a1 kills these terms
        long long add = (long long)a * pN;
        if (add > T) break;
        as.assign(1, a);
        ns.assign(1, 0);
        rec(T - add, L.generator(a, 0), 0);
    }
    return out;
}

namespace {

LieElem fbar_impl(const LieAlgebra& L, const Envelope& E, const EtaTable& eta,
                  const IndexTable& tab, long long iota, int n, bool min_zero) {
    const IndexEntry& ent = tab.at(iota);
    if (ent.ch != 1) throw usage_error("exponent must have class 1");
    if (n < 0) throw usage_error("power shift must be non-negative");
    const FieldCtx& F = L.field();
    int p = L.params().p;
    int depth = ent.m + n;
    long long T = ent.V * ipow(p, n); // forced digit-sum target
    const std::vector<int>& range = eta.index_range();

    EnvElem total;
    std::vector<int> as;
    std::vector<long long> ns;
    std::function<void(long long, const EnvElem&)> rec = [&](long long S, const EnvElem& acc) {
        int s = (int)as.size();
        if (s >= 1 && S == T) {
            long long mx = *std::max_element(ns.begin(), ns.end());
            long long mn = *std::min_element(ns.begin(), ns.end());
            if (mx == depth && (!min_zero || mn == 0)) {
                Fq coef = F.zero();
                for (int s1 = 1; s1 <= s; ++s1) {
                    std::vector<int> pa(as.begin(), as.begin() + s1 - 1);
                    std::vector<long long> pn(ns.begin(), ns.begin() + s1 - 1);
                    std::vector<int> sa(as.begin() + s1 - 1, as.end());
                    std::vector<long long> sn(ns.begin() + s1 - 1, ns.end());
                    Fq c = F.mul(eta.eta_o(pa, pn), eta.eta_pair(sa, sn));
                    if (F.is_zero(c)) continue;
                    long long top = 0;
                    for (int u = s1 - 1; u < s; ++u)
                        if (ns[u] == depth) top += as[u];
                    coef = F.add(coef, F.scale(c, top % p));
                }
                if (!F.is_zero(coef)) total = E.add(total, E.scale(acc, coef));
            }
        }
        if (s == p - 1) return;
        for (long long m = 0; m <= depth; ++m)
            for (int a : range) {
                long long add = a * ipow(p, (int)m);
                if (S + add > T) break;
                as.push_back(a);
                ns.push_back(m);
                rec(S + add, E.mul(acc, E.pbw_expand(L.generator(a, (int)m))));
                as.pop_back();
                ns.pop_back();
            }
    };
    rec(0, E.one());
    if (!E.is_lie(total))
        throw internal_error("index-family sum fell outside the Lie subspace");
    return E.to_lie(total);
}

int ceil_weight(int a, const Rat& v) {
    if (a == 0) return 1;
    return (int)Rat(Rat((long long)a) / v).ceil();
}

} // namespace

LieElem Fbar(const LieAlgebra& L, const Envelope& E, const EtaTable& eta,
             const IndexTable& tab, long long iota, int n) {
    return fbar_impl(L, E, eta, tab, iota, n, false);
}

LieElem Fbar0(const LieAlgebra& L, const Envelope& E, const EtaTable& eta,
              const IndexTable& tab, long long iota, int n) {
    return fbar_impl(L, E, eta, tab, iota, n, true);
}

std::vector<LieElem> generator_family(const LieAlgebra& L, const EtaTable& eta,
                                      const IndexTable& tab,
                                      const std::map<long long, int>& choice) {
    std::vector<LieElem> gens;
    for (long long iota : tab.ch1_reduced) {
        int floor_m = tab.mult_depth(iota);
        auto it = choice.find(iota);
        int m_i = it != choice.end() ? it->second : floor_m;
        if (m_i < floor_m) throw domain_error("depth choice below the power depth");
        gens.push_back(F0(L, eta, tab.alpha(iota), tab.at(iota).m + m_i));
    }
    return gens;
}

IdealBasis uniform_depth_ideal(const LieAlgebra& L, const EtaTable& eta,
                               const RamParams& rp, int N) {
    if (N < rp.Nstar - 1) throw domain_error("depth below the uniform boundary");
    int p = rp.base.p;
    long long pN = ipow(p, N);
    IntSet A = exponent_sums(p, rp.a_max, p - 1, N);
    std::vector<LieElem> gens;
    for (long long V : A.members()) {
        Rat alpha = Rat::make(V, pN);
        if (alpha < rp.base.v0) continue;
        LieElem g = F0(L, eta, alpha, N);
        if (!g.empty()) gens.push_back(std::move(g));
    }
    return minimal_sigma_ideal(L, gens);
}

IdealBasis flat_boundary_ideal(const LieAlgebra& L, const EtaTable& eta,
                               const RamParams& rp, const Rat& vflat) {
    if (!(Rat(0) < vflat) || !(vflat < rp.base.v0))
        throw domain_error("previous jump must sit in (0, v0)");
    const FieldCtx& F = L.field();
    int p = rp.base.p;
    std::vector<LieElem> gens;
    // the flat-weight >= p part of the algebra (letter content is preserved
    // by basis expansions, so basis elements span it)
    for (int i = 0; i < L.dim(); ++i) {
        int wf = 0;
        for (uint8_t letter : L.elem(i).word) wf += ceil_weight(L.alphabet()[letter].a, vflat);
        if (wf >= p) gens.push_back({{i, F.one()}});
    }
    // per-alpha minimal depth: smallest M with p^{M+1}(alpha - vflat) > (p-1) vflat;
    // alpha = v0 gives the largest depth needed
    auto min_depth = [&](const Rat& alpha) {
        int M = 0;
        while (!(Rat(ipow(p, M + 1)) * (alpha - vflat) > Rat(p - 1) * vflat)) ++M;
        return M;
    };
    int Ncap = min_depth(rp.base.v0);
    long long pN = ipow(p, Ncap);
    IntSet A = exponent_sums(p, rp.a_max, p - 1, Ncap);
    for (long long V : A.members()) {
        Rat alpha = Rat::make(V, pN);
        if (alpha < rp.base.v0) continue;
        LieElem g = F0(L, eta, alpha, min_depth(alpha));
        if (!g.empty()) gens.push_back(std::move(g));
    }
    return minimal_sigma_ideal(L, gens);
}

} // namespace ramgen
