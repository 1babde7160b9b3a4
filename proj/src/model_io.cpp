#include "bloch/model_io.hpp"

#include <fstream>

namespace bloch {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw InputError(where + ": missing field '" + key + "'");
    return *it;
}

json matrix_part(const Matrix& m, bool imaginary) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(imaginary ? m(r, c).imag() : m(r, c).real());
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

Matrix matrix_from_json(const json& re, const json* im, const std::string& what) {
    if (!re.is_array() || re.empty()) throw InputError(what + ": expected a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(re.size());
    const auto cols = static_cast<Eigen::Index>(re.front().is_array() ? re.front().size() : 0);
    if (im && (!im->is_array() || static_cast<Eigen::Index>(im->size()) != rows))
        throw InputError(what + ": imaginary part has a different shape");
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = re[r];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw InputError(what + ": ragged rows");
        for (Eigen::Index c = 0; c < cols; ++c) {
            if (!row[c].is_number()) throw InputError(what + ": non-numeric entry");
            double imag = 0.0;
            if (im) {
                const json& irow = (*im)[r];
                if (!irow.is_array() || static_cast<Eigen::Index>(irow.size()) != cols || !irow[c].is_number())
                    throw InputError(what + ": imaginary part has a different shape");
                imag = irow[c].get<double>();
            }
            m(r, c) = cplx(row[c].get<double>(), imag);
        }
    }
    return m;
}

ModelDocument model_from_json(const json& doc) {
    if (!doc.is_object()) throw InputError("model document must be a JSON object");
    const json& dim = require(doc, "dim", "model");
    const json& bands = require(doc, "bands", "model");
    const json& hoppings = require(doc, "hoppings", "model");
    if (!dim.is_number_integer() || !bands.is_number_integer())
        throw InputError("model: 'dim' and 'bands' must be integers");
    if (!hoppings.is_array()) throw InputError("model: 'hoppings' must be an array");

    std::vector<std::pair<LatticeVector, Matrix>> list;
    for (std::size_t i = 0; i < hoppings.size(); ++i) {
        const std::string where = "hopping entry " + std::to_string(i);
        const json& entry = hoppings[i];
        if (!entry.is_object()) throw InputError(where + ": must be an object");
        const json& a = require(entry, "a", where);
        if (!a.is_array()) throw InputError(where + ": 'a' must be an integer array");
        LatticeVector v;
        for (const auto& x : a) {
            if (!x.is_number_integer()) throw InputError(where + ": 'a' must be an integer array");
            v.push_back(x.get<int>());
        }
        const json* im = entry.contains("im") ? &entry["im"] : nullptr;
        list.emplace_back(std::move(v), matrix_from_json(require(entry, "re", where), im, where));
    }
    ModelDocument out{build_model(dim.get<int>(), bands.get<int>(), list), std::nullopt};

    if (auto trs = doc.find("trs"); trs != doc.end()) {
        if (!trs->is_object()) throw InputError("model: 'trs' must be an object");
        const json* im = trs->contains("u_im") ? &(*trs)["u_im"] : nullptr;
        Matrix u = matrix_from_json(require(*trs, "u_re", "trs"), im, "trs");
        if (u.rows() != out.model.bands() || u.cols() != out.model.bands())
            throw InputError("trs: unitary must be bands x bands");
        out.trs_unitary = std::move(u);
    }
    return out;
}

nlohmann::ordered_json model_to_json(const ModelDocument& doc) {
    nlohmann::ordered_json out;
    out["dim"] = doc.model.dim();
    out["bands"] = doc.model.bands();
    out["hoppings"] = nlohmann::ordered_json::array();
    for (const auto& [a, h] : doc.model.hoppings()) {
        nlohmann::ordered_json entry;
        entry["a"] = a;
        entry["re"] = matrix_part(h, false);
        entry["im"] = matrix_part(h, true);
        out["hoppings"].push_back(std::move(entry));
    }
    if (doc.trs_unitary) {
        out["trs"]["u_re"] = matrix_part(*doc.trs_unitary, false);
        out["trs"]["u_im"] = matrix_part(*doc.trs_unitary, true);
    }
    return out;
}

ModelDocument load_model_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open model file " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw InputError("malformed JSON in " + path.string() + ": " + e.what());
    }
    return model_from_json(doc);
}

} // namespace bloch
