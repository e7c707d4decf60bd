#include "ramgen/laurent.hpp"

#include <functional>

namespace ramgen {

namespace {

void require_kind(const LaurentLie& x, bool env_valued) {
    if (x.env_valued != env_valued && !x.terms.empty())
        throw usage_error("Lie- and envelope-valued Laurent payloads cannot mix");
}

} // namespace

LaurEnv::LaurEnv(const LieAlgebra& L, const Envelope& E) : L_(&L), E_(&E) {
    if (&E.lie() != &L) throw usage_error("envelope built over a different algebra");
}

LaurentLie LaurEnv::add(const LaurentLie& x, const LaurentLie& y) const {
    if (!x.terms.empty() && !y.terms.empty() && x.env_valued != y.env_valued)
        throw usage_error("Lie- and envelope-valued Laurent payloads cannot mix");
    LaurentLie out = x;
    if (out.terms.empty()) out.env_valued = y.env_valued;
    for (auto& [j, c] : y.terms) {
        auto it = out.terms.find(j);
        if (it == out.terms.end()) {
            out.terms.emplace(j, c);
            continue;
        }
        it->second = x.env_valued ? E_->add(it->second, c) : L_->add(it->second, c);
        if (it->second.empty()) out.terms.erase(it);
    }
    return out;
}

LaurentLie LaurEnv::neg(const LaurentLie& x) const {
    LaurentLie out = x;
    for (auto& [j, c] : out.terms) c = x.env_valued ? E_->neg(c) : L_->neg(c);
    return out;
}

LaurentLie LaurEnv::sub(const LaurentLie& x, const LaurentLie& y) const {
    return add(x, neg(y));
}

LaurentLie LaurEnv::scale(const LaurentLie& x, const Fq& c) const {
    LaurentLie out;
    out.env_valued = x.env_valued;
    for (auto& [j, v] : x.terms) {
        auto w = x.env_valued ? E_->scale(v, c) : L_->scale(v, c);
        if (!w.empty()) out.terms.emplace(j, w);
    }
    return out;
}

LaurentLie LaurEnv::bracket(const LaurentLie& x, const LaurentLie& y) const {
    require_kind(x, false);
    require_kind(y, false);
    LaurentLie out;
    for (auto& [i, a] : x.terms)
        for (auto& [j, b] : y.terms) {
            LieElem c = L_->bracket(a, b);
            if (c.empty()) continue;
            LaurentLie term;
            term.terms.emplace(i + j, std::move(c));
            out = add(out, term);
        }
    return out;
}

LaurentLie LaurEnv::mul(const LaurentLie& x, const LaurentLie& y) const {
    require_kind(x, true);
    require_kind(y, true);
    LaurentLie out;
    out.env_valued = true;
    for (auto& [i, a] : x.terms)
        for (auto& [j, b] : y.terms) {
            EnvElem c = E_->mul(a, b);
            if (c.empty()) continue;
            LaurentLie term;
            term.env_valued = true;
            term.terms.emplace(i + j, std::move(c));
            out = add(out, term);
        }
    return out;
}

std::map<int, Fq> LaurEnv::env_sigma(const std::map<int, Fq>& a, long long n) const {
    const FieldCtx& F = L_->field();
    EnvElem out;
    for (auto& [m, c] : a) {
        EnvElem factor = E_->one();
        for (auto& [i, e] : E_->mono(m)) {
            EnvElem img = E_->pbw_expand(L_->sigma_twist(LieElem{{i, F.one()}}, n));
            for (int rep = 0; rep < e; ++rep) factor = E_->mul(factor, img);
        }
        out = E_->add(out, E_->scale(factor, F.frobenius(c, n)));
    }
    return out;
}

LaurentLie LaurEnv::sigma(const LaurentLie& x, long long n) const {
    if (n < 0) throw usage_error("sigma acts by non-negative powers here");
    long long pn = 1;
    for (long long i = 0; i < n; ++i) pn *= L_->params().p;
    LaurentLie out;
    out.env_valued = x.env_valued;
    for (auto& [j, c] : x.terms) {
        auto tw = x.env_valued ? env_sigma(c, n) : L_->sigma_twist(c, n);
        if (!tw.empty()) out.terms.emplace(j * pn, std::move(tw));
    }
    return out;
}

LaurentLie LaurEnv::truncate(const LaurentLie& x, long long bstar) const {
    require_kind(x, false);
    int p = L_->params().p;
    LaurentLie out;
    for (auto& [j, c] : x.terms) {
        LieElem kept;
        for (int s = 1; s <= p - 1; ++s) {
            if (j < (s - (p - 1)) * bstar) continue;
            kept = L_->add(kept, L_->weight_part(c, s));
        }
        if (!kept.empty()) out.terms.emplace(j, std::move(kept));
    }
    return out;
}

LaurentLie LaurEnv::embed(const LaurentLie& x) const {
    require_kind(x, false);
    LaurentLie out;
    out.env_valued = true;
    for (auto& [j, c] : x.terms) out.terms.emplace(j, E_->pbw_expand(c));
    return out;
}

LaurentLie LaurEnv::exp_tilde(const LaurentLie& x) const {
    require_kind(x, false);
    const FieldCtx& F = L_->field();
    int p = L_->params().p;
    LaurentLie unit;
    unit.env_valued = true;
    unit.terms.emplace(0, E_->one());
    LaurentLie out = unit, pw = unit, y = embed(x);
    long long fact = 1;
    for (int i = 1; i < p; ++i) {
        pw = mul(pw, y);
        fact = (fact * i) % p;
        out = add(out, scale(pw, F.inv(F.from_int(fact))));
    }
    return out;
}

LaurentLie LaurEnv::log_tilde(const LaurentLie& x) const {
    require_kind(x, true);
    const FieldCtx& F = L_->field();
    int p = L_->params().p;
    auto it = x.terms.find(0);
    if (it == x.terms.end() || it->second.count(E_->unit_index()) == 0 ||
        !(it->second.at(E_->unit_index()) == F.one()))
        throw domain_error("logarithm needs constant term one");
    LaurentLie unit;
    unit.env_valued = true;
    unit.terms.emplace(0, E_->one());
    LaurentLie y = sub(x, unit), acc, pw = unit;
    for (int i = 1; i < p; ++i) {
        pw = mul(pw, y);
        Fq c = F.inv(F.from_int(i));
        if (i % 2 == 0) c = F.neg(c);
        acc = add(acc, scale(pw, c));
    }
    LaurentLie out;
    for (auto& [j, c] : acc.terms) out.terms.emplace(j, E_->to_lie(c));
    return out;
}

LaurentLie LaurEnv::build_e(const EtaTable& eta) const {
    if (!validate_eta(eta).ok()) throw domain_error("structural-constant table is invalid");
    const FieldCtx& F = L_->field();
    int p = L_->params().p;
    LaurentLie series;
    series.env_valued = true;
    series.terms.emplace(0, E_->one());
    // 1 + sum over tuples of eta(abar) t^{-sum a} D_{a1,0} ... D_{as,0}
    std::vector<int> tuple;
    EnvElem prod = E_->one();
    long long expo = 0;
    std::function<void()> rec = [&] {
        if (!tuple.empty()) {
            Fq c = eta.eta(tuple);
            if (!F.is_zero(c)) {
                LaurentLie term;
                term.env_valued = true;
                term.terms.emplace(expo, E_->scale(prod, c));
                series = add(series, term);
            }
        }
        if ((int)tuple.size() == p - 1) return;
        EnvElem saved = prod;
        for (int a : eta.index_range()) {
            tuple.push_back(a);
            expo += a;
            prod = E_->mul(saved, E_->pbw_expand(L_->generator(a, 0)));
            rec();
            prod = saved;
            expo -= a;
            tuple.pop_back();
        }
    };
    rec();
    return log_tilde(series);
}

LaurentLie LaurEnv::build_e_q(const LaurentLie& e, const RamParams& ram) const {
    if (ram.Nstar % L_->params().N0 != 0)
        throw usage_error("lifting depth must be a multiple of the field degree");
    LaurentLie out;
    out.env_valued = e.env_valued;
    for (auto& [j, c] : e.terms) out.terms.emplace(j * ram.q, c);
    return out;
}

LaurentLie LaurEnv::build_E_bar(const RamParams& ram, const EtaTable& eta) const {
    const FieldCtx& F = L_->field();
    int p = L_->params().p;
    LaurentLie out;
    out.env_valued = true;
    std::vector<int> tuple;
    EnvElem prod = E_->one();
    long long asum = 0;
    std::function<void()> rec = [&] {
        if (!tuple.empty()) {
            Fq c = F.scale(eta.eta(tuple), asum % p);
            if (!F.is_zero(c)) {
                LaurentLie term;
                term.env_valued = true;
                term.terms.emplace(asum * ram.q - ram.bstar, E_->scale(prod, c));
                out = add(out, term);
            }
        }
        if ((int)tuple.size() == p - 1) return;
        EnvElem saved = prod;
        for (int a : eta.index_range()) {
            tuple.push_back(a);
            asum += a;
            prod = E_->mul(saved, E_->pbw_expand(L_->generator(a, 0)));
            rec();
            prod = saved;
            asum -= a;
            tuple.pop_back();
        }
    };
    rec();
    return out;
}

} // namespace ramgen
