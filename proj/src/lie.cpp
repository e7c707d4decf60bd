#include "ramgen/lie.hpp"

#include <algorithm>
#include <numeric>

namespace ramgen {

namespace {

int moebius(int n) {
    int mu = 1;
    for (int q = 2; q * q <= n; ++q)
        if (n % q == 0) {
            n /= q;
            if (n % q == 0) return 0;
            mu = -mu;
        }
    if (n > 1) mu = -mu;
    return mu;
}

// Number of Lyndon words of length d over g letters (necklace formula).
long long lyndon_count(long long g, int d) {
    long long total = 0;
    for (int e = 1; e <= d; ++e)
        if (d % e == 0) {
            long long pw = 1;
            for (int i = 0; i < d / e; ++i) pw *= g;
            total += moebius(e) * pw;
        }
    return total / d;
}

std::vector<Fq> to_dense(const LieElem& x, int dim) {
    std::vector<Fq> v(dim);
    for (auto& [i, c] : x) v[i] = c;
    return v;
}

LieElem to_sparse(const FieldCtx& F, const std::vector<Fq>& v) {
    LieElem x;
    for (int i = 0; i < (int)v.size(); ++i)
        if (!F.is_zero(v[i])) x[i] = v[i];
    return x;
}

} // namespace

int LieAlgebra::word_wt(const Word& w) const {
    int s = 0;
    for (uint8_t l : w) s += letter_wt_[l];
    return s;
}

std::map<Word, int> LieAlgebra::right_normed(const Word& w) const {
    int p = P_.p;
    if (w.size() == 1) return {{w, 1}};
    Word tail(w.begin() + 1, w.end());
    std::map<Word, int> inner = right_normed(tail), out;
    for (auto& [u, c] : inner) {
        Word left{w[0]};
        left.insert(left.end(), u.begin(), u.end());
        Word right = u;
        right.push_back(w[0]);
        out[left] = ((out[left] + c) % p + p) % p;
        out[right] = ((out[right] - c) % p + p) % p;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

LieAlgebra::LieAlgebra(const Params& P, int dim_cap) : P_(P), F_(P.p, P.N0) {
    if (P.p < 3) throw domain_error("characteristic must be at least 3");
    if (P.v0.num <= 0) throw domain_error("v0 must be positive");
    v0flat_ = compute_v0_flat(P);
    Rat wstar = Rat::make(P.p - 1, 1) * P.v0;

    // Alphabet: D_0 plus D_{a,n} with gcd(a, p) = 1, a < (p-1) v0.
    alphabet_.push_back(Gen{0, 0});
    for (long long a = 1; Rat::make(a, 1) < wstar; ++a) {
        if (a % P.p == 0) continue;
        if ((long long)alphabet_.size() + P.N0 > (long long)dim_cap)
            throw resource_error("generator alphabet exceeds the dimension cap");
        for (int n = 0; n < P.N0; ++n) alphabet_.push_back(Gen{(int)a, n});
    }
    int g = (int)alphabet_.size();
    for (const Gen& gen : alphabet_) {
        if (gen.a == 0) {
            letter_wt_.push_back(1);
            letter_wtflat_.push_back(1);
        } else {
            letter_wt_.push_back((int)((Rat::make(gen.a, 1) / P.v0).floor() + 1));
            letter_wtflat_.push_back((int)(Rat::make(gen.a, 1) / v0flat_).ceil());
        }
    }

    int maxlen = P.p - 1;
    long long predicted = 0;
    for (int d = 1; d <= maxlen; ++d) {
        predicted += lyndon_count(g, d);
        if (predicted > 5'000'000) throw resource_error("free Lie basis too large to enumerate");
    }

    // Duval's generation of Lyndon words of length <= maxlen in lex order.
    std::vector<long long> per_degree(maxlen + 1, 0);
    std::vector<LieBasisElem> kept;
    Word w{0};
    while (!w.empty()) {
        ++per_degree[w.size()];
        int wt = word_wt(w);
        if (wt <= P.p - 1) {
            int wf = 0;
            for (uint8_t l : w) wf += letter_wtflat_[l];
            kept.push_back(LieBasisElem{w, (int)w.size(), wt, wf});
            if ((long long)kept.size() > dim_cap)
                throw resource_error("basis dimension exceeds the configured cap");
        }
        size_t m = w.size();
        while (w.size() < (size_t)maxlen) w.push_back(w[w.size() % m]);
        while (!w.empty() && w.back() == g - 1) w.pop_back();
        if (!w.empty()) ++w.back();
    }
    for (int d = 1; d <= maxlen; ++d)
        if (per_degree[d] != lyndon_count(g, d))
            throw internal_error("Lyndon enumeration disagrees with the necklace count");

    std::sort(kept.begin(), kept.end(), [](const LieBasisElem& x, const LieBasisElem& y) {
        return x.deg != y.deg ? x.deg < y.deg : x.word < y.word;
    });
    basis_ = std::move(kept);
    for (int i = 0; i < (int)basis_.size(); ++i)
        if (basis_[i].deg == 1) gen_of_word_[basis_[i].word] = i;

    // Truncated word algebra universe: words of length <= p-1 and wt <= p-1.
    {
        Word cur;
        auto rec = [&](auto&& self, int wt) -> void {
            if (!cur.empty()) word_index_.emplace(cur, 0);
            if ((int)cur.size() == maxlen) return;
            for (int l = 0; l < g; ++l) {
                if (wt + letter_wt_[l] > P.p - 1) continue;
                cur.push_back((uint8_t)l);
                self(self, wt + letter_wt_[l]);
                cur.pop_back();
            }
        };
        rec(rec, 0);
        int idx = 0;
        for (auto& [word, i] : word_index_) i = idx++;
    }
    int W = (int)word_index_.size();

    // Expansions and the row-reduced coordinate solver. Right-normed Lyndon
    // brackets are a basis, but that is asserted, not assumed.
    expansion_.resize(basis_.size());
    for (int i = 0; i < (int)basis_.size(); ++i) {
        expansion_[i] = right_normed(basis_[i].word);
        std::vector<Fq> row(W), combo(basis_.size());
        for (auto& [word, c] : expansion_[i]) row[word_index_.at(word)] = F_.from_int(c);
        combo[i] = F_.one();
        for (size_t r = 0; r < rref_rows_.size(); ++r) {
            Fq f = row[rref_pivot_[r]];
            if (F_.is_zero(f)) continue;
            for (int j = 0; j < W; ++j) row[j] = F_.sub(row[j], F_.mul(f, rref_rows_[r][j]));
            for (int j = 0; j < (int)basis_.size(); ++j)
                combo[j] = F_.sub(combo[j], F_.mul(f, rref_combo_[r][j]));
        }
        int piv = -1;
        for (int j = 0; j < W; ++j)
            if (!F_.is_zero(row[j])) { piv = j; break; }
        if (piv < 0) throw internal_error("right-normed Lyndon brackets are dependent");
        Fq inv = F_.inv(row[piv]);
        for (auto& c : row) c = F_.mul(c, inv);
        for (auto& c : combo) c = F_.mul(c, inv);
        for (size_t r = 0; r < rref_rows_.size(); ++r) {
            Fq f = rref_rows_[r][piv];
            if (F_.is_zero(f)) continue;
            for (int j = 0; j < W; ++j)
                rref_rows_[r][j] = F_.sub(rref_rows_[r][j], F_.mul(f, row[j]));
            for (int j = 0; j < (int)basis_.size(); ++j)
                rref_combo_[r][j] = F_.sub(rref_combo_[r][j], F_.mul(f, combo[j]));
        }
        rref_rows_.push_back(std::move(row));
        rref_combo_.push_back(std::move(combo));
        rref_pivot_.push_back(piv);
    }

    // Structure constants, via word-algebra products with truncation.
    auto word_mul = [&](const std::map<Word, int>& x, const std::map<Word, int>& y) {
        std::map<Word, Fq> out;
        for (auto& [u, cu] : x)
            for (auto& [v, cv] : y) {
                Word uv = u;
                uv.insert(uv.end(), v.begin(), v.end());
                if ((int)uv.size() > maxlen || word_wt(uv) > P.p - 1) continue;
                Fq c = F_.from_int((long long)cu * cv);
                auto it = out.find(uv);
                if (it == out.end()) out.emplace(uv, c);
                else it->second = F_.add(it->second, c);
            }
        return out;
    };
    bracket_table_.assign(basis_.size(), std::vector<LieElem>(basis_.size()));
    for (int i = 0; i < (int)basis_.size(); ++i)
        for (int j = i + 1; j < (int)basis_.size(); ++j) {
            std::map<Word, Fq> prod = word_mul(expansion_[i], expansion_[j]);
            for (auto& [word, c] : word_mul(expansion_[j], expansion_[i])) {
                auto it = prod.find(word);
                if (it == prod.end()) prod.emplace(word, F_.neg(c));
                else it->second = F_.sub(it->second, c);
            }
            bracket_table_[i][j] = from_words(prod);
            bracket_table_[j][i] = neg(bracket_table_[i][j]);
        }

    // One sigma twist of every basis element: permute letters, re-coordinate.
    std::vector<int> letter_map(g);
    for (int l = 0; l < g; ++l) {
        Gen im = alphabet_[l];
        if (im.a != 0) im.n = (im.n + 1) % P.N0;
        letter_map[l] = (int)(std::lower_bound(alphabet_.begin(), alphabet_.end(), im) -
                              alphabet_.begin());
    }
    sigma_table_.resize(basis_.size());
    for (int i = 0; i < (int)basis_.size(); ++i) {
        std::map<Word, Fq> moved;
        for (auto& [word, c] : expansion_[i]) {
            Word im = word;
            for (auto& l : im) l = (uint8_t)letter_map[l];
            moved[im] = F_.add(moved[im], F_.from_int(c));
        }
        sigma_table_[i] = from_words(moved);
    }
}

int LieAlgebra::gen_index(const Gen& g) const {
    Gen key = g;
    if (key.a == 0) key.n = 0;
    auto it = gen_of_word_.end();
    for (int l = 0; l < (int)alphabet_.size(); ++l)
        if (alphabet_[l] == key) {
            it = gen_of_word_.find(Word{(uint8_t)l});
            break;
        }
    if (it == gen_of_word_.end()) throw domain_error("no such generator");
    return it->second;
}

LieElem LieAlgebra::generator(int a, int n) const {
    int nn = ((n % P_.N0) + P_.N0) % P_.N0;
    if (a == 0) return {{gen_index(Gen{0, 0}), F_.frobenius(F_.alpha0(), nn)}};
    if (a < 0 || a % P_.p == 0 || !(Rat::make(a, 1) < Rat::make(P_.p - 1, 1) * P_.v0))
        throw domain_error("generator label out of range");
    return {{gen_index(Gen{a, nn}), F_.one()}};
}

LieElem LieAlgebra::add(const LieElem& x, const LieElem& y) const {
    LieElem out = x;
    for (auto& [i, c] : y) {
        auto it = out.find(i);
        if (it == out.end()) out.emplace(i, c);
        else {
            it->second = F_.add(it->second, c);
            if (F_.is_zero(it->second)) out.erase(it);
        }
    }
    return out;
}

LieElem LieAlgebra::neg(const LieElem& x) const {
    LieElem out = x;
    for (auto& [i, c] : out) c = F_.neg(c);
    return out;
}

LieElem LieAlgebra::sub(const LieElem& x, const LieElem& y) const { return add(x, neg(y)); }

LieElem LieAlgebra::scale(const LieElem& x, const Fq& c) const {
    LieElem out;
    if (F_.is_zero(c)) return out;
    for (auto& [i, v] : x) {
        Fq w = F_.mul(v, c);
        if (!F_.is_zero(w)) out.emplace(i, w);
    }
    return out;
}

LieElem LieAlgebra::bracket(const LieElem& x, const LieElem& y) const {
    LieElem out;
    for (auto& [i, ci] : x)
        for (auto& [j, cj] : y)
            out = add(out, scale(bracket_table_[i][j], F_.mul(ci, cj)));
    return out;
}

LieElem LieAlgebra::sigma_twist(const LieElem& x, long long n) const {
    long long nn = ((n % P_.N0) + P_.N0) % P_.N0;
    LieElem cur = x;
    for (long long s = 0; s < nn; ++s) {
        LieElem next;
        for (auto& [i, c] : cur) next = add(next, scale(sigma_table_[i], F_.frobenius(c, 1)));
        cur = std::move(next);
    }
    return cur;
}

LieElem LieAlgebra::weight_part(const LieElem& x, int s, bool flat) const {
    LieElem out;
    for (auto& [i, c] : x)
        if ((flat ? basis_[i].wtflat : basis_[i].wt) == s) out.emplace(i, c);
    return out;
}

LieElem LieAlgebra::from_words(const std::map<Word, Fq>& e) const {
    int W = (int)word_index_.size();
    std::vector<Fq> v(W), coord(basis_.size());
    for (auto& [word, c] : e) {
        auto it = word_index_.find(word);
        if (it == word_index_.end()) {
            if (!F_.is_zero(c)) throw internal_error("word outside the truncated universe");
            continue;
        }
        v[it->second] = F_.add(v[it->second], c);
    }
    for (size_t r = 0; r < rref_rows_.size(); ++r) {
        Fq f = v[rref_pivot_[r]];
        if (F_.is_zero(f)) continue;
        for (int j = 0; j < W; ++j) v[j] = F_.sub(v[j], F_.mul(f, rref_rows_[r][j]));
        for (int j = 0; j < (int)basis_.size(); ++j)
            coord[j] = F_.add(coord[j], F_.mul(f, rref_combo_[r][j]));
    }
    for (int j = 0; j < W; ++j)
        if (!F_.is_zero(v[j])) throw internal_error("element is not in the Lie span");
    return to_sparse(F_, coord);
}

namespace {

// Canonical RREF accumulator over dense coordinate vectors.
struct Rref {
    const FieldCtx& F;
    int dim;
    std::vector<std::vector<Fq>> rows;
    std::vector<int> pivot;

    explicit Rref(const FieldCtx& f, int d) : F(f), dim(d) {}

    // Returns true when v was independent (rank grew).
    bool insert(std::vector<Fq> v) {
        for (size_t r = 0; r < rows.size(); ++r) {
            Fq f = v[pivot[r]];
            if (F.is_zero(f)) continue;
            for (int j = 0; j < dim; ++j) v[j] = F.sub(v[j], F.mul(f, rows[r][j]));
        }
        int piv = -1;
        for (int j = 0; j < dim; ++j)
            if (!F.is_zero(v[j])) { piv = j; break; }
        if (piv < 0) return false;
        Fq inv = F.inv(v[piv]);
        for (auto& c : v) c = F.mul(c, inv);
        for (size_t r = 0; r < rows.size(); ++r) {
            Fq f = rows[r][piv];
            if (F.is_zero(f)) continue;
            for (int j = 0; j < dim; ++j) rows[r][j] = F.sub(rows[r][j], F.mul(f, v[j]));
        }
        rows.push_back(std::move(v));
        pivot.push_back(piv);
        return true;
    }

    bool contains(std::vector<Fq> v) const {
        for (size_t r = 0; r < rows.size(); ++r) {
            Fq f = v[pivot[r]];
            if (F.is_zero(f)) continue;
            for (int j = 0; j < dim; ++j) v[j] = F.sub(v[j], F.mul(f, rows[r][j]));
        }
        for (int j = 0; j < dim; ++j)
            if (!F.is_zero(v[j])) return false;
        return true;
    }

    IdealBasis finish() const {
        // canonical order: ascending pivot
        std::vector<int> order(rows.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int x, int y) { return pivot[x] < pivot[y]; });
        IdealBasis out;
        for (int r : order) out.rows.push_back(to_sparse(F, rows[r]));
        return out;
    }
};

} // namespace

IdealBasis minimal_sigma_ideal(const LieAlgebra& L, const std::vector<LieElem>& gens) {
    const FieldCtx& F = L.field();
    Rref rr(F, L.dim());
    std::vector<LieElem> queue = gens;
    while (!queue.empty()) {
        LieElem x = std::move(queue.back());
        queue.pop_back();
        if (!rr.insert(to_dense(x, L.dim()))) continue;
        queue.push_back(L.sigma_twist(x, 1));
        for (int i = 0; i < L.dim(); ++i) {
            if (L.elem(i).deg != 1) continue;
            LieElem b = L.bracket(x, LieElem{{i, F.one()}});
            if (!L.is_zero(b)) queue.push_back(std::move(b));
        }
    }
    return rr.finish();
}

bool ideal_contains(const LieAlgebra& L, const IdealBasis& I, const LieElem& x) {
    Rref rr(L.field(), L.dim());
    for (const LieElem& row : I.rows) rr.insert(to_dense(row, L.dim()));
    return rr.contains(to_dense(x, L.dim()));
}

bool ideal_equal(const LieAlgebra& L, const IdealBasis& I, const IdealBasis& J) {
    (void)L;
    return I.rows == J.rows; // both canonical RREF
}

IdealBasis ideal_sum(const LieAlgebra& L, const IdealBasis& I, const IdealBasis& J) {
    Rref rr(L.field(), L.dim());
    for (const LieElem& row : I.rows) rr.insert(to_dense(row, L.dim()));
    for (const LieElem& row : J.rows) rr.insert(to_dense(row, L.dim()));
    return rr.finish();
}

IdealBasis ideal_commutator(const LieAlgebra& L, const IdealBasis& I) {
    Rref rr(L.field(), L.dim());
    for (const LieElem& row : I.rows)
        for (int i = 0; i < L.dim(); ++i) {
            LieElem b = L.bracket(row, LieElem{{i, L.field().one()}});
            if (!L.is_zero(b)) rr.insert(to_dense(b, L.dim()));
        }
    return rr.finish();
}

int quotient_dim(const LieAlgebra& L, const IdealBasis& I) { return L.dim() - I.dim(); }

} // namespace ramgen
