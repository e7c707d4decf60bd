#include "ramgen/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>

namespace ramgen {

std::string rat_str(const Rat& r) {
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

ojson fq_json(const FieldCtx& F, const Fq& a) {
    ojson out = ojson::array();
    for (int i = 0; i < F.deg(); ++i) out.push_back((int)a.c[i]);
    return out;
}

Fq fq_from_json(const FieldCtx& F, const ojson& j) {
    if (j.is_number_integer()) return F.from_int(j.get<long long>());
    if (!j.is_array()) throw usage_error("field element must be an integer or an array");
    std::vector<int> cs;
    for (const ojson& c : j) {
        if (!c.is_number_integer()) throw usage_error("field coordinate must be an integer");
        cs.push_back(c.get<int>());
    }
    return F.from_coeffs(cs);
}

ojson lie_json(const LieAlgebra& L, const LieElem& x) {
    ojson out = ojson::array();
    for (const auto& [i, c] : x) {
        ojson word = ojson::array();
        for (uint8_t letter : L.elem(i).word) {
            const Gen& g = L.alphabet()[letter];
            word.push_back(ojson::array({g.a, g.n}));
        }
        out.push_back(ojson{{"word", std::move(word)}, {"coeff", fq_json(L.field(), c)}});
    }
    return out;
}

ojson ideal_json(const LieAlgebra& L, const IdealBasis& I) {
    ojson rows = ojson::array();
    for (const LieElem& r : I.rows) rows.push_back(lie_json(L, r));
    return ojson{{"dim", I.dim()},
                 {"quotient_dim", quotient_dim(L, I)},
                 {"rows", std::move(rows)}};
}

ojson config_json(const Params& P) {
    return ojson{{"p", P.p}, {"n0", P.N0}, {"v0", rat_str(P.v0)}};
}

ojson params_doc(const RamParams& rp, const IndexTable& tab) {
    ojson doc;
    doc["config"] = config_json(rp.base);
    doc["params"] = ojson{
        {"delta0_lb", rat_str(rp.delta0)}, {"rstar", rat_str(rp.rstar)},
        {"b0star", rp.b0star},             {"n0star", rp.N0star},
        {"nstar", rp.Nstar},               {"q", rp.q},
        {"bstar", rp.bstar},               {"ustar", rp.ustar},
        {"wstar", rat_str(rp.wstar)},      {"a_max", rp.a_max},
        {"v0flat", rat_str(rp.v0flat)},
    };
    ojson rows = ojson::array();
    for (const auto& [v, e] : tab.entries) {
        ojson classes = ojson::array();
        if (e.admissible) classes.push_back("reduced");
        if (std::binary_search(tab.ch1_primitive.begin(), tab.ch1_primitive.end(), v))
            classes.push_back("primitive");
        rows.push_back(ojson{{"value", v},
                             {"m", e.m},
                             {"pm_alpha", e.V},
                             {"pm_beta_over_r", e.Y},
                             {"ch", e.ch},
                             {"kappa", e.kappa},
                             {"w0", e.w0},
                             {"classes", std::move(classes)}});
    }
    doc["exponents"] = std::move(rows);
    return doc;
}

ojson generators_doc(const LieAlgebra& L, const Envelope& E, const EtaTable& eta,
                     const IndexTable& tab, const std::string& which) {
    (void)E;
    if (which != "41" && which != "51" && which != "54" && which != "all")
        throw usage_error("construction selector must be one of 41, 51, 54, all");
    ojson doc;
    doc["config"] = config_json(tab.rp.base);
    ojson rows = ojson::array();
    for (long long iota : tab.ch1_reduced) {
        const IndexEntry& ent = tab.at(iota);
        int depth = tab.mult_depth(iota);
        rows.push_back(ojson{{"value", iota},
                             {"alpha", rat_str(tab.alpha(iota))},
                             {"m", ent.m},
                             {"power_depth", depth},
                             {"generator", lie_json(L, F0(L, eta, tab.alpha(iota), ent.m + depth))}});
    }
    doc["table"] = std::move(rows);

    IdealBasis family, uniform, boundary;
    if (which == "41" || which == "all") {
        family = minimal_sigma_ideal(L, generator_family(L, eta, tab));
        doc["family_ideal"] = ideal_json(L, family);
    }
    if (which == "51" || which == "all") {
        uniform = uniform_depth_ideal(L, eta, tab.rp, tab.rp.Nstar - 1);
        doc["uniform_ideal"] = ideal_json(L, uniform);
    }
    if (which == "54" || which == "all") {
        boundary = flat_boundary_ideal(L, eta, tab.rp, tab.rp.v0flat);
        doc["boundary_ideal"] = ideal_json(L, boundary);
    }
    if (which == "all")
        doc["ideals_equal"] =
            ideal_equal(L, family, uniform) && ideal_equal(L, family, boundary);
    return doc;
}

ojson recurrence_doc(const LieAlgebra& L, const Envelope& E, const IndexTable& tab,
                     const RecurrenceSolution& sol) {
    (void)E;
    ojson doc;
    doc["config"] = config_json(tab.rp.base);
    ojson support = ojson::array();
    for (const auto& [j, c] : sol.xbar.terms) {
        ojson row{{"exponent", j}, {"monomials", (long long)c.size()}};
        if (tab.contains(j)) row["ch"] = tab.at(j).ch;
        support.push_back(std::move(row));
    }
    doc["x_support"] = std::move(support);
    ojson anchors = ojson::array();
    std::set<long long> keys;
    for (const auto& [iota, v] : sol.V) keys.insert(iota);
    for (const auto& [iota, rem] : sol.Vrem) keys.insert(iota);
    for (long long iota : keys) {
        auto v = sol.V.find(iota);
        auto rem = sol.Vrem.find(iota);
        anchors.push_back(
            ojson{{"exponent", iota},
                  {"value", lie_json(L, v == sol.V.end() ? LieElem{} : v->second)},
                  {"remainder_monomials",
                   rem == sol.Vrem.end() ? 0 : (long long)rem->second.size()}});
    }
    doc["anchors"] = std::move(anchors);
    return doc;
}

namespace {

void each_tuple(const std::vector<int>& range, int s,
                std::vector<int>& t, const std::function<void(const std::vector<int>&)>& f) {
    if ((int)t.size() == s) {
        f(t);
        return;
    }
    for (int a : range) {
        t.push_back(a);
        each_tuple(range, s, t, f);
        t.pop_back();
    }
}

} // namespace

ojson eta_json(const EtaTable& eta) {
    const Params& P = eta.params();
    ojson doc;
    doc["config"] = config_json(P);
    ojson entries = ojson::array();
    std::vector<int> t;
    for (int s = 1; s < P.p; ++s)
        each_tuple(eta.index_range(), s, t, [&](const std::vector<int>& tuple) {
            entries.push_back(ojson{{"tuple", tuple}, {"value", fq_json(eta.field(), eta.eta(tuple))}});
        });
    doc["entries"] = std::move(entries);
    return doc;
}

EtaTable eta_from_json(const Params& P, const ojson& j) {
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
        throw usage_error("table file must be an object with an \"entries\" array");
    FieldCtx F(P.p, P.N0);
    std::map<std::vector<int>, Fq> values;
    for (const ojson& e : j["entries"]) {
        if (!e.is_object() || !e.contains("tuple") || !e.contains("value"))
            throw usage_error("each entry needs \"tuple\" and \"value\"");
        std::vector<int> tuple;
        for (const ojson& a : e["tuple"]) {
            if (!a.is_number_integer()) throw usage_error("tuple entries must be integers");
            tuple.push_back(a.get<int>());
        }
        if (tuple.empty() || (int)tuple.size() >= P.p)
            throw usage_error("tuple length must be in [1, p-1]");
        values[std::move(tuple)] = fq_from_json(F, e["value"]);
    }
    return EtaTable::from_map(P, std::move(values));
}

EtaTable load_eta_file(const Params& P, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open table file: " + path);
    ojson j = ojson::parse(in, nullptr, false);
    if (j.is_discarded()) throw usage_error("table file is not valid JSON: " + path);
    return eta_from_json(P, j);
}

std::string dump_doc(const ojson& j) {
    return j.dump(2) + "\n";
}

} // namespace ramgen
