#include "exphull/report.hpp"

#include "exphull/errors.hpp"

namespace exphull {

json intmatrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).get_str());
        rows.push_back(row);
    }
    return rows;
}

json qmatrix_to_json(const QMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).get_str());
        rows.push_back(row);
    }
    return rows;
}

json verdict_to_json(const Verdict& v) {
    json out;
    switch (v.status) {
    case Status::Holds: out["status"] = "holds"; break;
    case Status::Fails: out["status"] = "fails"; break;
    case Status::UnknownUpTo: out["status"] = "unknown_up_to"; break;
    }
    out["bound"] = v.bound;
    if (!v.note.empty()) out["note"] = v.note;
    if (v.witness_subspace) out["witness_subspace"] = qmatrix_to_json(*v.witness_subspace);
    if (v.witness_matrix) out["witness_matrix"] = intmatrix_to_json(*v.witness_matrix);
    if (v.witness_exponents) out["witness_exponents"] = *v.witness_exponents;
    if (v.witness_value) out["witness_value"] = v.witness_value->get_str();
    return out;
}

json decomposition_to_json(const CosetDecomposition& dec, const GammaConfig* cfg) {
    json cosets = json::array();
    for (const auto& c : dec.cosets) {
        json jc;
        jc["cocharacters"] = intmatrix_to_json(c.cocharacters);
        jc["word"] = c.found_exponents;
        json translate = json::array();
        for (const auto& t : c.translate) translate.push_back(t.to_string(cfg));
        jc["translate"] = translate;
        cosets.push_back(jc);
    }
    json out;
    out["cosets"] = cosets;
    return out;
}

CosetDecomposition decomposition_from_json(const json& j, const FiniteRankGroup& grp) {
    CosetDecomposition dec;
    if (!j.contains("cosets")) throw ValidationError("decomposition JSON needs a cosets array");
    for (const auto& jc : j.at("cosets")) {
        MLCoset coset;
        if (!jc.contains("word"))
            throw ValidationError("each coset needs the group word that produced it");
        coset.found_exponents = jc.at("word").get<std::vector<long>>();
        coset.translate = group_element(grp, coset.found_exponents);
        std::vector<std::vector<Integer>> rows;
        for (const auto& row : jc.at("cocharacters")) {
            std::vector<Integer> r;
            for (const auto& entry : row) r.push_back(Integer(entry.get<std::string>()));
            rows.push_back(r);
        }
        coset.cocharacters =
            rows.empty() ? IntMatrix(0, grp.n) : IntMatrix::from_rows(rows);
        dec.cosets.push_back(std::move(coset));
    }
    return dec;
}

json coset_form_to_json(const CosetForm& form) {
    json out;
    out["characters"] = intmatrix_to_json(form.characters);
    json constants = json::array();
    for (const auto& c : form.constants) constants.push_back(c.to_string());
    out["constants"] = constants;
    out["change_of_coords"] = intmatrix_to_json(form.change_of_coords);
    return out;
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

int exit_code_for(const Verdict& v) {
    switch (v.status) {
    case Status::Holds: return 0;
    case Status::Fails: return 1;
    case Status::UnknownUpTo: return 2;
    }
    return 3;
}

} // namespace exphull
