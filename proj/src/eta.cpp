#include "ramgen/eta.hpp"

#include <algorithm>

namespace ramgen {

namespace {

std::vector<int> generator_range(const Params& P) {
    std::vector<int> range{0};
    Rat wstar = Rat::make(P.p - 1, 1) * P.v0;
    for (long long a = 1; Rat::make(a, 1) < wstar; ++a)
        if (a % P.p != 0) range.push_back((int)a);
    return range;
}

// Free associative words over the range, truncated at length < p.
using WordPoly = std::map<std::vector<int>, Fq>;

WordPoly word_mul(const FieldCtx& F, int p, const WordPoly& x, const WordPoly& y) {
    WordPoly out;
    for (auto& [u, cu] : x)
        for (auto& [v, cv] : y) {
            if ((int)(u.size() + v.size()) > p - 1) continue;
            std::vector<int> uv = u;
            uv.insert(uv.end(), v.begin(), v.end());
            Fq c = F.mul(cu, cv);
            auto it = out.find(uv);
            if (it == out.end()) {
                if (!F.is_zero(c)) out.emplace(std::move(uv), c);
            } else {
                it->second = F.add(it->second, c);
                if (F.is_zero(it->second)) out.erase(it);
            }
        }
    return out;
}

} // namespace

EtaTable EtaTable::default_table(const Params& P) {
    EtaTable t;
    t.P_ = P;
    t.F_ = FieldCtx(P.p, P.N0);
    t.range_ = generator_range(P);
    return t;
}

EtaTable EtaTable::deformed_table(const Params& P) {
    EtaTable t = default_table(P);
    const FieldCtx& F = t.F_;
    int p = P.p;
    long long g = (long long)t.range_.size();
    long long words = 1, pw = 1;
    for (int s = 1; s < p; ++s) {
        pw *= g;
        words += pw;
        if (words > 1'000'000) throw resource_error("generator range too large for a table");
    }
    WordPoly ell;
    for (int a : t.range_) ell.emplace(std::vector<int>{a}, F.one());
    Fq c = F.alpha0();
    for (int a : t.range_)
        for (int b : t.range_) {
            if (a >= b) continue;
            ell[{a, b}] = c;
            ell[{b, a}] = F.neg(c);
        }
    // exp~(ell); the word coefficients are the table values
    WordPoly expo{{std::vector<int>{}, F.one()}}, cur = expo;
    long long fact = 1;
    for (int i = 1; i < p; ++i) {
        cur = word_mul(F, p, cur, ell);
        fact = (fact * i) % p;
        Fq inv = F.inv(F.from_int(fact));
        for (auto& [w, v] : cur) {
            Fq add = F.mul(v, inv);
            auto it = expo.find(w);
            if (it == expo.end()) expo.emplace(w, add);
            else it->second = F.add(it->second, add);
        }
    }
    for (auto& [w, v] : expo)
        if (!w.empty()) t.values_.emplace(w, v);
    // tuples with coefficient zero still need entries
    std::vector<int> tuple;
    auto rec = [&](auto&& self) -> void {
        if (!tuple.empty()) t.values_.try_emplace(tuple, F.zero());
        if ((int)tuple.size() == p - 1) return;
        for (int a : t.range_) {
            tuple.push_back(a);
            self(self);
            tuple.pop_back();
        }
    };
    rec(rec);
    return t;
}

EtaTable EtaTable::from_map(const Params& P, std::map<std::vector<int>, Fq> values) {
    EtaTable t = default_table(P);
    if (values.empty()) throw domain_error("explicit table has no entries");
    t.values_ = std::move(values);
    return t;
}

Fq EtaTable::eta(const std::vector<int>& abar) const {
    int s = (int)abar.size();
    if (s < 1 || s >= P_.p) throw domain_error("tuple length must be in [1, p-1]");
    if (values_.empty()) {
        long long fact = 1;
        for (int i = 2; i <= s; ++i) fact = (fact * i) % P_.p;
        return F_.inv(F_.from_int(fact));
    }
    auto it = values_.find(abar);
    if (it == values_.end()) throw domain_error("tuple missing from the table");
    return it->second;
}

Fq EtaTable::eta_o_flat(const std::vector<int>& abar) const {
    std::vector<int> rev(abar.rbegin(), abar.rend());
    Fq v = eta(rev);
    return abar.size() % 2 == 0 ? v : F_.neg(v);
}

namespace {

// Split nbar into maximal constant runs; returns run boundaries, or empty if
// the run values fail the required strict monotonicity.
std::vector<std::pair<size_t, size_t>> runs_monotone(const std::vector<long long>& nbar,
                                                     bool decreasing) {
    std::vector<std::pair<size_t, size_t>> runs;
    size_t i = 0;
    while (i < nbar.size()) {
        size_t j = i;
        while (j + 1 < nbar.size() && nbar[j + 1] == nbar[i]) ++j;
        if (!runs.empty()) {
            long long prev = nbar[runs.back().first];
            if (decreasing ? !(prev > nbar[i]) : !(prev < nbar[i])) return {};
        }
        runs.push_back({i, j});
        i = j + 1;
    }
    return runs;
}

} // namespace

Fq EtaTable::eta_pair(const std::vector<int>& abar, const std::vector<long long>& nbar) const {
    if (abar.size() != nbar.size()) throw usage_error("tuple lengths differ");
    if (abar.empty()) return F_.one();
    auto runs = runs_monotone(nbar, /*decreasing=*/true);
    if (runs.empty()) return F_.zero();
    Fq out = F_.one();
    for (auto& [i, j] : runs) {
        std::vector<int> block(abar.begin() + i, abar.begin() + j + 1);
        out = F_.mul(out, F_.frobenius(eta(block), nbar[i]));
    }
    return out;
}

Fq EtaTable::eta_o(const std::vector<int>& abar, const std::vector<long long>& nbar) const {
    if (abar.size() != nbar.size()) throw usage_error("tuple lengths differ");
    if (abar.empty()) return F_.one();
    auto runs = runs_monotone(nbar, /*decreasing=*/false);
    if (runs.empty()) return F_.zero();
    Fq out = F_.one();
    for (auto& [i, j] : runs) {
        std::vector<int> block(abar.begin() + i, abar.begin() + j + 1);
        out = F_.mul(out, F_.frobenius(eta_o_flat(block), nbar[i]));
    }
    return out;
}

std::vector<std::vector<int>> connected_perms(int s, int s1) {
    std::vector<std::vector<int>> out;
    if (s1 < 1 || s1 > s) return out; // Phi_{s,0} = Phi_{s,s+1} = empty
    std::vector<int> pi{s1};
    auto rec = [&](auto&& self, int lo, int hi) -> void {
        if (lo == 1 && hi == s) {
            out.push_back(pi);
            return;
        }
        if (lo > 1) {
            pi.push_back(lo - 1);
            self(self, lo - 1, hi);
            pi.pop_back();
        }
        if (hi < s) {
            pi.push_back(hi + 1);
            self(self, lo, hi + 1);
            pi.pop_back();
        }
    };
    rec(rec, s1, s1);
    return out;
}

std::vector<std::vector<int>> shuffles(int s1, int s) {
    std::vector<std::vector<int>> out;
    std::vector<int> seq;
    auto rec = [&](auto&& self, int used1, int used2) -> void {
        if (used1 == s1 && used2 == s - s1) {
            out.push_back(seq);
            return;
        }
        if (used1 < s1) {
            seq.push_back(used1 + 1);
            self(self, used1 + 1, used2);
            seq.pop_back();
        }
        if (used2 < s - s1) {
            seq.push_back(s1 + used2 + 1);
            self(self, used1, used2 + 1);
            seq.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

Fq EtaTable::B_coeff(int s1, const std::vector<int>& abar) const {
    int s = (int)abar.size();
    if (s1 < 0 || s1 > s + 1) throw usage_error("window start out of range");
    Fq out = F_.zero();
    for (const std::vector<int>& pi : connected_perms(s, s1)) {
        std::vector<int> permuted(s);
        for (int i = 0; i < s; ++i) permuted[i] = abar[pi[i] - 1];
        out = F_.add(out, eta(permuted));
    }
    return out;
}

EtaReport validate_eta(const EtaTable& eta) {
    EtaReport rep;
    const FieldCtx& F = eta.field();
    const Params& P = eta.params();
    const std::vector<int>& range = eta.index_range();
    auto tuple_str = [](const std::vector<int>& t) {
        std::string s = "(";
        for (size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
        return s + ")";
    };
    std::vector<int> tuple;
    auto rec = [&](auto&& self) -> void {
        int s = (int)tuple.size();
        if (s >= 1) {
            if (s == 1 && !(eta.eta(tuple) == F.one()))
                rep.violations.push_back("I fails at " + tuple_str(tuple));
            for (int s1 = 0; s1 <= s; ++s1) {
                std::vector<int> left(tuple.begin(), tuple.begin() + s1);
                std::vector<int> right(tuple.begin() + s1, tuple.end());
                Fq lhs = F.one();
                if (s1 > 0) lhs = F.mul(lhs, eta.eta(left));
                if (s1 < s) lhs = F.mul(lhs, eta.eta(right));
                Fq rhs = F.zero();
                for (const std::vector<int>& pi : shuffles(s1, s)) {
                    std::vector<int> permuted(s);
                    for (int i = 0; i < s; ++i) permuted[i] = tuple[pi[i] - 1];
                    rhs = F.add(rhs, eta.eta(permuted));
                }
                if (!(lhs == rhs))
                    rep.violations.push_back("II fails at " + tuple_str(tuple) +
                                             " split " + std::to_string(s1));
            }
        }
        if (s == P.p - 1) return;
        for (int a : range) {
            tuple.push_back(a);
            self(self);
            tuple.pop_back();
        }
    };
    rec(rec);
    return rep;
}

} // namespace ramgen
