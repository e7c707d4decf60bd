#include "ramgen/env.hpp"

#include <algorithm>

namespace ramgen {

Envelope::Envelope(const LieAlgebra& L) : L_(&L) {
    int p = L.params().p;
    // Enumerate multisets over the basis with total generator-degree < p.
    Mono cur;
    auto rec = [&](auto&& self, int from, int deg) -> void {
        mono_index_.emplace(cur, 0);
        for (int i = from; i < L.dim(); ++i) {
            int d = L.elem(i).deg;
            if (deg + d > p - 1) continue;
            if (!cur.empty() && cur.back().first == i) continue; // handled via exponent
            for (int e = 1; deg + e * d <= p - 1; ++e) {
                cur.push_back({i, e});
                self(self, i + 1, deg + e * d);
                cur.pop_back();
            }
        }
    };
    rec(rec, 0, 0);
    monos_.reserve(mono_index_.size());
    for (auto& [m, idx] : mono_index_) {
        idx = (int)monos_.size();
        monos_.push_back(m);
        int d = 0;
        for (auto& [i, e] : m) d += e * L.elem(i).deg;
        deg_.push_back(d);
    }
    unit_ = mono_index_.at(Mono{});
}

EnvElem Envelope::add(const EnvElem& a, const EnvElem& b) const {
    EnvElem out = a;
    const FieldCtx& F = field();
    for (auto& [i, c] : b) {
        auto it = out.find(i);
        if (it == out.end()) out.emplace(i, c);
        else {
            it->second = F.add(it->second, c);
            if (F.is_zero(it->second)) out.erase(it);
        }
    }
    return out;
}

EnvElem Envelope::neg(const EnvElem& a) const {
    EnvElem out = a;
    for (auto& [i, c] : out) c = field().neg(c);
    return out;
}

EnvElem Envelope::sub(const EnvElem& a, const EnvElem& b) const { return add(a, neg(b)); }

EnvElem Envelope::scale(const EnvElem& a, const Fq& c) const {
    EnvElem out;
    if (field().is_zero(c)) return out;
    for (auto& [i, v] : a) {
        Fq w = field().mul(v, c);
        if (!field().is_zero(w)) out.emplace(i, w);
    }
    return out;
}

const EnvElem& Envelope::straighten(const std::vector<int>& seq) const {
    auto hit = straighten_memo_.find(seq);
    if (hit != straighten_memo_.end()) return hit->second;
    const FieldCtx& F = field();
    EnvElem out;
    size_t k = 0;
    while (k + 1 < seq.size() && seq[k] <= seq[k + 1]) ++k;
    if (k + 1 >= seq.size()) {
        Mono m;
        for (int i : seq) {
            if (!m.empty() && m.back().first == i) ++m.back().second;
            else m.push_back({i, 1});
        }
        out.emplace(mono_index_.at(m), F.one());
    } else {
        // u_j u_i = u_i u_j + [u_j, u_i] at the first descent
        std::vector<int> swapped = seq;
        std::swap(swapped[k], swapped[k + 1]);
        out = straighten(swapped);
        LieElem br = L_->bracket(LieElem{{seq[k], F.one()}}, LieElem{{seq[k + 1], F.one()}});
        for (auto& [m, c] : br) {
            std::vector<int> shorter(seq.begin(), seq.begin() + k);
            shorter.push_back(m);
            shorter.insert(shorter.end(), seq.begin() + k + 2, seq.end());
            out = add(out, scale(straighten(shorter), c));
        }
    }
    return straighten_memo_.emplace(std::move(seq), std::move(out)).first->second;
}

EnvElem Envelope::mul(const EnvElem& a, const EnvElem& b) const {
    const FieldCtx& F = field();
    int p = L_->params().p;
    EnvElem out;
    for (auto& [ma, ca] : a)
        for (auto& [mb, cb] : b) {
            if (deg_[ma] + deg_[mb] > p - 1) continue;
            std::vector<int> seq;
            for (auto& [i, e] : monos_[ma])
                for (int t = 0; t < e; ++t) seq.push_back(i);
            for (auto& [i, e] : monos_[mb])
                for (int t = 0; t < e; ++t) seq.push_back(i);
            out = add(out, scale(straighten(seq), F.mul(ca, cb)));
        }
    return out;
}

EnvElem Envelope::pbw_expand(const LieElem& x) const {
    EnvElem out;
    for (auto& [i, c] : x) out.emplace(mono_index_.at(Mono{{i, 1}}), c);
    return out;
}

bool Envelope::is_lie(const EnvElem& a) const {
    for (auto& [m, c] : a) {
        const Mono& mono = monos_[m];
        if (mono.size() != 1 || mono[0].second != 1) return false;
    }
    return true;
}

LieElem Envelope::to_lie(const EnvElem& a) const {
    if (!is_lie(a)) throw internal_error("envelope element lies outside the Lie subspace");
    LieElem out;
    for (auto& [m, c] : a) out.emplace(monos_[m][0].first, c);
    return out;
}

EnvElem Envelope::trunc_exp(const EnvElem& x) const {
    const FieldCtx& F = field();
    if (x.count(unit_)) throw domain_error("truncated exponential needs zero constant term");
    EnvElem out = one(), pw = one();
    long long fact = 1;
    for (int i = 1; i < L_->params().p; ++i) {
        pw = mul(pw, x);
        fact = (fact * i) % L_->params().p;
        out = add(out, scale(pw, F.inv(F.from_int(fact))));
    }
    return out;
}

EnvElem Envelope::trunc_log(const EnvElem& a) const {
    const FieldCtx& F = field();
    auto it = a.find(unit_);
    if (it == a.end() || !(it->second == F.one()))
        throw domain_error("truncated logarithm needs constant term one");
    EnvElem y = sub(a, one()), out, pw = one();
    for (int i = 1; i < L_->params().p; ++i) {
        pw = mul(pw, y);
        Fq c = F.inv(F.from_int(i));
        if (i % 2 == 0) c = F.neg(c);
        out = add(out, scale(pw, c));
    }
    return out;
}

LieElem Envelope::ch_compose(const LieElem& l1, const LieElem& l2) const {
    EnvElem prod = mul(trunc_exp(pbw_expand(l1)), trunc_exp(pbw_expand(l2)));
    return to_lie(trunc_log(prod));
}

bool Envelope::is_diagonal(const EnvElem& a) const {
    const FieldCtx& F = field();
    int p = L_->params().p;
    using Tensor = std::map<std::pair<int, int>, Fq>;
    auto tadd = [&](Tensor& t, std::pair<int, int> key, const Fq& c) {
        auto it = t.find(key);
        if (it == t.end()) {
            if (!F.is_zero(c)) t.emplace(key, c);
        } else {
            it->second = F.add(it->second, c);
            if (F.is_zero(it->second)) t.erase(it);
        }
    };
    auto tmul = [&](const Tensor& x, const Tensor& y) {
        Tensor out;
        for (auto& [kx, cx] : x)
            for (auto& [ky, cy] : y) {
                EnvElem left = mul(EnvElem{{kx.first, F.one()}}, EnvElem{{ky.first, F.one()}});
                EnvElem right = mul(EnvElem{{kx.second, F.one()}}, EnvElem{{ky.second, F.one()}});
                Fq c = F.mul(cx, cy);
                for (auto& [ml, cl] : left)
                    for (auto& [mr, cr] : right) {
                        if (deg_[ml] + deg_[mr] > p - 1) continue;
                        tadd(out, {ml, mr}, F.mul(c, F.mul(cl, cr)));
                    }
            }
        return out;
    };

    Tensor delta;
    for (auto& [m, c] : a) {
        Tensor t{{{unit_, unit_}, F.one()}};
        for (auto& [i, e] : monos_[m]) {
            int mi = mono_index_.at(Mono{{i, 1}});
            Tensor prim{{{mi, unit_}, F.one()}, {{unit_, mi}, F.one()}};
            for (int rep = 0; rep < e; ++rep) t = tmul(t, prim);
        }
        for (auto& [k, v] : t) tadd(delta, k, F.mul(v, c));
    }
    Tensor sq;
    for (auto& [m1, c1] : a)
        for (auto& [m2, c2] : a) {
            if (deg_[m1] + deg_[m2] > p - 1) continue;
            tadd(sq, {m1, m2}, F.mul(c1, c2));
        }
    return delta == sq;
}

} // namespace ramgen
