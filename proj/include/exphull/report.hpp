#pragma once

#include <json.hpp>

#include "exphull/case2.hpp"
#include "exphull/mordell.hpp"
#include "exphull/variety.hpp"
#include "exphull/verdict.hpp"

namespace exphull {

using json = nlohmann::json;

json verdict_to_json(const Verdict& v);
json intmatrix_to_json(const IntMatrix& m);
json qmatrix_to_json(const QMatrix& m);
json decomposition_to_json(const CosetDecomposition& dec, const GammaConfig* cfg);
CosetDecomposition decomposition_from_json(const json& j, const FiniteRankGroup& grp);
json coset_form_to_json(const CosetForm& form);

/// Canonical dump: sorted keys (nlohmann objects are key-ordered), two-space
/// indent, trailing newline. Reports are byte-identical across runs except
/// the timing field.
std::string dump_report(const json& report);

int exit_code_for(const Verdict& v);

} // namespace exphull
