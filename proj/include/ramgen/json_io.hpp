#pragma once

#include <string>

#include "json.hpp"
#include "ramgen/recurrence.hpp"

namespace ramgen {

// All documents are built with ordered_json so that identical inputs yield
// byte-identical output.
using ojson = nlohmann::ordered_json;

// Rationals always serialize as "num/den" strings ("3/2", "1/1").
std::string rat_str(const Rat& r);

// Field elements as power-basis coordinate arrays [c0, ..., c_{N0-1}].
ojson fq_json(const FieldCtx& F, const Fq& a);
// Accepts either an integer or a coordinate array.
Fq fq_from_json(const FieldCtx& F, const ojson& j);

// A Lie element as a list of terms; each basis element is named by its
// bracket word, a sequence of (a, n) generator labels.
ojson lie_json(const LieAlgebra& L, const LieElem& x);

// Row-reduced ideal basis with its dimension and the quotient dimension.
ojson ideal_json(const LieAlgebra& L, const IdealBasis& I);

// The echo of the input configuration placed at the head of every document.
ojson config_json(const Params& P);

// `params` document: derived constants plus the full admissible exponent
// table with per-entry classifications.
ojson params_doc(const RamParams& rp, const IndexTable& tab);

// `generators` document. `which` selects the construction: "41" the
// per-exponent family, "51" the uniform-depth family, "54" the flat-boundary
// family, "all" every construction plus the equality verdict.
ojson generators_doc(const LieAlgebra& L, const Envelope& E, const EtaTable& eta,
                     const IndexTable& tab, const std::string& which);

// `recurrence` document: support summary of the solved series and the anchor
// table (Lie values plus remainder sizes).
ojson recurrence_doc(const LieAlgebra& L, const Envelope& E, const IndexTable& tab,
                     const RecurrenceSolution& sol);

// Structural-constant tables as JSON ({"entries": [{"tuple", "value"}...]}).
ojson eta_json(const EtaTable& eta);
EtaTable eta_from_json(const Params& P, const ojson& j);
// Reads and parses a table file; does not validate (callers decide).
EtaTable load_eta_file(const Params& P, const std::string& path);

// Canonical rendering: 2-space indent, trailing newline.
std::string dump_doc(const ojson& j);

} // namespace ramgen
