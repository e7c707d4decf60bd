#include "ramgen/recurrence.hpp"

#include <functional>

namespace ramgen {

namespace {

// Additive weight of a PBW monomial: weights of its variables, with
// multiplicity. Extends the Lie weight grading to the envelope.
int mono_weight(const LieAlgebra& L, const Envelope& E, int idx) {
    int w = 0;
    for (auto& [i, e] : E.mono(idx)) w += e * L.elem(i).wt;
    return w;
}

// Reduction of either payload kind: the weight-s slice of the coefficient of
// t^{-j} survives iff j >= (s - (p-1)) * bstar. Matches LaurEnv::truncate on
// Lie payloads and extends it monomial-by-monomial on envelope payloads.
LaurentLie trunc_mod(const LaurEnv& R, const LaurentLie& x, long long bstar) {
    if (!x.env_valued) return R.truncate(x, bstar);
    const LieAlgebra& L = R.lie();
    const Envelope& E = R.env();
    int p = L.params().p;
    LaurentLie out;
    out.env_valued = true;
    for (auto& [j, c] : x.terms) {
        EnvElem kept;
        for (auto& [idx, v] : c)
            if (j >= (long long)(mono_weight(L, E, idx) - (p - 1)) * bstar) kept.emplace(idx, v);
        if (!kept.empty()) out.terms.emplace(j, std::move(kept));
    }
    return out;
}

// sigma^n on an envelope payload for arbitrary n (the Laurent-level sigma
// only shifts exponents forward, but R-parts need the inverse twist).
EnvElem env_twist(const LaurEnv& R, const EnvElem& c, long long n) {
    const LieAlgebra& L = R.lie();
    const Envelope& E = R.env();
    const FieldCtx& F = L.field();
    EnvElem out;
    for (auto& [idx, v] : c) {
        EnvElem factor = E.one();
        for (auto& [i, e] : E.mono(idx)) {
            EnvElem img = E.pbw_expand(L.sigma_twist(LieElem{{i, F.one()}}, n));
            for (int rep = 0; rep < e; ++rep) factor = E.mul(factor, img);
        }
        out = E.add(out, E.scale(factor, F.frobenius(v, n)));
    }
    return out;
}

LaurentLie payload_twist(const LaurEnv& R, long long j, const std::map<int, Fq>& c, long long n,
                         bool env_valued) {
    LaurentLie out;
    out.env_valued = env_valued;
    auto tw = env_valued ? env_twist(R, c, n) : R.lie().sigma_twist(c, n);
    if (!tw.empty()) out.terms.emplace(j, std::move(tw));
    return out;
}

} // namespace

std::pair<LaurentLie, LaurentLie> rs_decompose(const LaurEnv& R, const LaurentLie& term,
                                               const IndexTable& tab) {
    if (term.terms.size() != 1) throw usage_error("expected a single Laurent term");
    long long j = term.terms.begin()->first;
    if (j == 0) throw usage_error("exponent zero admits no decomposition");
    int p = tab.rp.base.p;
    long long bstar = tab.rp.bstar;

    LaurentLie Rpart, Spart;
    Rpart.env_valued = Spart.env_valued = term.env_valued;
    if (j < 0) {
        // the whole sigma-orbit runs off the deep end of the truncation
        LaurentLie cur = trunc_mod(R, term, bstar);
        while (!cur.terms.empty()) {
            Spart = R.add(Spart, cur);
            cur = trunc_mod(R, R.sigma(cur, 1), bstar);
        }
        Spart = R.neg(Spart);
        return {Rpart, Spart};
    }
    int mj = -1;
    long long j1 = j;
    for (long long q = j, m = 0; ; q /= p, ++m) {
        if (tab.contains(q)) { mj = (int)m; j1 = q; }
        if (q % p != 0) break;
    }
    if (mj < 0)
        throw internal_error("positive exponent escaped the admissible closure frame");
    Rpart = trunc_mod(R, payload_twist(R, j1, term.terms.begin()->second, -mj, term.env_valued),
                      bstar);
    for (int m = 0; m < mj; ++m) Spart = R.add(Spart, trunc_mod(R, R.sigma(Rpart, m), bstar));
    return {Rpart, Spart};
}

LaurentLie solve_sigma_conjugation(const LaurEnv& R, const LaurentLie& e1,
                                   const LaurentLie& e2, const IndexTable& tab) {
    if (e1.env_valued || e2.env_valued)
        throw usage_error("conjugation acts on Lie-valued series");
    const LieAlgebra& L = R.lie();
    int p = L.params().p;
    long long bstar = tab.rp.bstar;
    auto compose = [&](const LaurentLie& a, const LaurentLie& b) {
        return R.log_tilde(R.mul(R.exp_tilde(a), R.exp_tilde(b)));
    };
    LaurentLie x;
    for (int s = 1; s < p; ++s) {
        LaurentLie cur = compose(compose(R.sigma(x, 1), e2), R.neg(x));
        LaurentLie diff = R.truncate(R.sub(e1, cur), bstar);
        // the weight-s discrepancy; everything below s was fixed already
        LaurentLie As;
        for (auto& [j, c] : diff.terms) {
            LieElem part = L.weight_part(c, s);
            if (part.empty()) continue;
            if (j >= 0)
                throw domain_error("difference is not topologically nilpotent");
            As.terms.emplace(j, std::move(part));
        }
        // delta with sigma delta - delta = As: minus the full sigma-orbit
        LaurentLie orbit = trunc_mod(R, As, bstar);
        while (!orbit.terms.empty()) {
            x = R.sub(x, orbit);
            orbit = trunc_mod(R, R.sigma(orbit, 1), bstar);
        }
    }
    LaurentLie final_cur = compose(compose(R.sigma(x, 1), e2), R.neg(x));
    if (!R.is_zero(R.truncate(R.sub(e1, final_cur), bstar)))
        throw internal_error("sigma-conjugation residual is nonzero");
    return x;
}

RecurrenceSolution solve_recurrence(const LaurEnv& R, const EtaTable& eta,
                                    const IndexTable& tab) {
    const LieAlgebra& L = R.lie();
    const Envelope& E = R.env();
    int p = L.params().p;
    long long bstar = tab.rp.bstar;

    LaurentLie e = R.build_e(eta);
    LaurentLie eq = R.build_e_q(e, tab.rp);
    LaurentLie unit;
    unit.env_valued = true;
    unit.terms.emplace(0, E.one());
    LaurentLie W = trunc_mod(R, R.sub(R.exp_tilde(eq), unit), bstar);
    LaurentLie Ebar = trunc_mod(R, R.build_E_bar(tab.rp, eta), bstar);

    LaurentLie xbar;
    xbar.env_valued = true;
    std::map<long long, EnvElem> Venv;

    auto grade_slice = [&](const LaurentLie& v, int m) {
        LaurentLie out;
        out.env_valued = true;
        for (auto& [j, c] : v.terms) {
            EnvElem kept;
            for (auto& [idx, coef] : c)
                if (E.mono_deg(idx) == m) kept.emplace(idx, coef);
            if (!kept.empty()) out.terms.emplace(j, std::move(kept));
        }
        return out;
    };

    // grade m of the right-hand side only involves x below grade m, because
    // every product term carries at least one generator from W
    for (int m = 1; m < p; ++m) {
        LaurentLie prod = trunc_mod(
            R, R.sub(R.mul(W, xbar), R.mul(R.sigma(xbar, 1), W)), bstar);
        LaurentLie rhs = R.add(grade_slice(Ebar, m), grade_slice(prod, m));
        for (auto& [j, c] : rhs.terms) {
            if (j == 0) throw internal_error("recurrence term stuck at exponent zero");
            LaurentLie term;
            term.env_valued = true;
            term.terms.emplace(j, c);
            auto [Rpart, Spart] = rs_decompose(R, term, tab);
            xbar = R.add(xbar, Spart);
            for (auto& [iota, v] : Rpart.terms) Venv[iota] = E.add(Venv[iota], v);
        }
    }

    // re-substitute: the full identity must close exactly in the truncated
    // module, not merely grade by grade
    LaurentLie Vterm;
    Vterm.env_valued = true;
    for (auto& [iota, v] : Venv)
        if (!v.empty()) Vterm.terms.emplace(iota, v);
    LaurentLie lhs = R.add(R.sub(R.sigma(xbar, 1), xbar), Vterm);
    LaurentLie rhs_full =
        R.add(Ebar, R.sub(R.mul(W, xbar), R.mul(R.sigma(xbar, 1), W)));
    if (!R.is_zero(trunc_mod(R, R.sub(lhs, rhs_full), bstar)))
        throw internal_error("recurrence residual is nonzero");

    RecurrenceSolution sol;
    sol.xbar = std::move(xbar);
    for (auto& [iota, v] : Venv) {
        if (v.empty()) continue;
        EnvElem lie_part, rem;
        for (auto& [idx, c] : v) {
            int d = E.mono_deg(idx);
            if (d == 0) throw internal_error("recurrence anchor acquired a scalar part");
            (d == 1 ? lie_part : rem).emplace(idx, c);
        }
        if (!lie_part.empty()) sol.V.emplace(iota, E.to_lie(lie_part));
        if (!rem.empty()) sol.Vrem.emplace(iota, std::move(rem));
    }
    return sol;
}

bool remainder_absorbed(const LaurEnv& R, const IdealBasis& ideal, const EnvElem& rem) {
    if (rem.empty()) return true;
    const LieAlgebra& L = R.lie();
    const Envelope& E = R.env();
    const FieldCtx& F = L.field();
    int p = L.params().p;

    // echelonized span, pivot = smallest monomial index, leading coefficient 1
    std::map<int, EnvElem> rows;
    auto add_row = [&](EnvElem v) {
        while (!v.empty()) {
            auto it = rows.find(v.begin()->first);
            if (it == rows.end()) {
                EnvElem norm = E.scale(v, F.inv(v.begin()->second));
                rows.emplace(norm.begin()->first, std::move(norm));
                return;
            }
            v = E.sub(v, E.scale(it->second, v.begin()->second));
        }
    };

    std::vector<EnvElem> alg_vars;
    for (int i = 0; i < L.dim(); ++i)
        alg_vars.push_back(E.pbw_expand(LieElem{{i, F.one()}}));
    std::vector<EnvElem> ideal_vars;
    for (const LieElem& g : ideal.rows) ideal_vars.push_back(E.pbw_expand(g));

    // the Lie subspace itself, so that only the degree >= 2 content of the
    // ideal-generated products constrains the remainder
    for (const EnvElem& v : alg_vars) add_row(v);
    // degree-d products with at least one factor from the ideal
    std::function<void(int, int, const EnvElem&, bool)> rec =
        [&](int d, int len, const EnvElem& acc, bool used_ideal) {
            if (len == d) {
                if (used_ideal) add_row(acc);
                return;
            }
            for (const EnvElem& v : alg_vars) rec(d, len + 1, E.mul(acc, v), used_ideal);
            if (!used_ideal)
                for (const EnvElem& g : ideal_vars) rec(d, len + 1, E.mul(acc, g), true);
        };
    for (int d = 2; d < p; ++d) rec(d, 0, E.one(), false);

    EnvElem v = rem;
    while (!v.empty()) {
        auto it = rows.find(v.begin()->first);
        if (it == rows.end()) return false;
        v = E.sub(v, E.scale(it->second, v.begin()->second));
    }
    return true;
}

} // namespace ramgen
