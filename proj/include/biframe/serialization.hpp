#pragma once

// JSON interchange: complex matrices as nested [re, im] pairs (row-major),
// module elements as block lists, operators as their flat matrices, and the
// system file that the CLI ingests. Schema violations carry the JSON
// pointer of the offending field.

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "biframe/errors.hpp"
#include "biframe/frames.hpp"
#include "biframe/hmodule.hpp"
#include "biframe/sequences.hpp"
#include "biframe/tolerance.hpp"

namespace biframe {

using Json = nlohmann::json;

inline Json matrix_to_json(const Matrix& mat) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < mat.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < mat.cols(); ++c)
            row.push_back(Json::array({mat(r, c).real(), mat(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace detail {

inline double number_at(const Json& node, const std::string& path) {
    if (!node.is_number()) throw SchemaError(path, "expected a number");
    const double v = node.get<double>();
    if (!std::isfinite(v)) throw SchemaError(path, "non-finite number");
    return v;
}

inline int positive_int_at(const Json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) throw SchemaError(path + "/" + key, "missing field");
    const Json& node = obj.at(key);
    if (!node.is_number_integer() || node.get<long long>() < 1)
        throw SchemaError(path + "/" + key, "expected a positive integer");
    return node.get<int>();
}

}  // namespace detail

inline Matrix matrix_from_json(const Json& node, Eigen::Index rows, Eigen::Index cols,
                               const std::string& path) {
    if (!node.is_array() || static_cast<Eigen::Index>(node.size()) != rows)
        throw SchemaError(path, "expected " + std::to_string(rows) + " rows");
    Matrix mat(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json& row = node.at(static_cast<size_t>(r));
        const std::string row_path = path + "/" + std::to_string(r);
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw SchemaError(row_path, "expected " + std::to_string(cols) + " entries");
        for (Eigen::Index c = 0; c < cols; ++c) {
            const Json& cell = row.at(static_cast<size_t>(c));
            const std::string cell_path = row_path + "/" + std::to_string(c);
            if (!cell.is_array() || cell.size() != 2)
                throw SchemaError(cell_path, "expected a [re, im] pair");
            mat(r, c) = Complex(detail::number_at(cell.at(0), cell_path + "/0"),
                                detail::number_at(cell.at(1), cell_path + "/1"));
        }
    }
    return mat;
}

inline Json element_to_json(const ModuleElement& x) {
    Json j;
    j["d"] = x.space().d;
    j["m"] = x.space().m;
    Json blocks = Json::array();
    for (int i = 0; i < x.space().m; ++i) blocks.push_back(matrix_to_json(x.block(i)));
    j["blocks"] = std::move(blocks);
    return j;
}

inline ModuleElement element_from_json(const Json& node, const std::string& path) {
    if (!node.is_object()) throw SchemaError(path, "expected an object");
    const int d = detail::positive_int_at(node, "d", path);
    const int m = detail::positive_int_at(node, "m", path);
    if (!node.contains("blocks")) throw SchemaError(path + "/blocks", "missing field");
    const Json& blocks = node.at("blocks");
    if (!blocks.is_array() || static_cast<int>(blocks.size()) != m)
        throw SchemaError(path + "/blocks", "expected " + std::to_string(m) + " blocks");
    const ModuleSpace space{d, m};
    Matrix mat(d, space.flat_dim());
    for (int i = 0; i < m; ++i) {
        mat.middleCols(i * d, d) = matrix_from_json(
            blocks.at(static_cast<size_t>(i)), d, d, path + "/blocks/" + std::to_string(i));
    }
    return ModuleElement(space, std::move(mat));
}

inline Json operator_to_json(const ModuleOperator& t) {
    Json j;
    j["d"] = t.space().d;
    j["m"] = t.space().m;
    j["big"] = matrix_to_json(t.big());
    return j;
}

inline ModuleOperator operator_from_json(const Json& node, const std::string& path) {
    if (!node.is_object()) throw SchemaError(path, "expected an object");
    const int d = detail::positive_int_at(node, "d", path);
    const int m = detail::positive_int_at(node, "m", path);
    if (!node.contains("big")) throw SchemaError(path + "/big", "missing field");
    const ModuleSpace space{d, m};
    return ModuleOperator(space, matrix_from_json(node.at("big"), space.flat_dim(),
                                                  space.flat_dim(), path + "/big"));
}

// A frame system on disk: one or two families plus optional named operators
// and tolerance overrides, all over one declared space.
struct SystemFile {
    ModuleSpace space;
    std::vector<ModuleElement> xi;
    std::optional<std::vector<ModuleElement>> upsilon;
    std::map<std::string, ModuleOperator> operators;
    std::optional<ToleranceConfig> tolerances;

    FrameFamily xi_family() const { return FrameFamily(xi); }
    // upsilon defaults to xi when absent
    BiframePair pair() const { return BiframePair(FrameFamily(xi), FrameFamily(upsilon ? *upsilon : xi)); }
};

inline SystemFile system_from_json(const Json& root) {
    if (!root.is_object()) throw SchemaError("", "expected a top-level object");
    SystemFile sys;
    sys.space = ModuleSpace{detail::positive_int_at(root, "d", ""),
                            detail::positive_int_at(root, "m", "")};

    auto read_family = [&](const char* key) {
        const Json& list = root.at(key);
        const std::string path = std::string("/") + key;
        if (!list.is_array() || list.empty())
            throw SchemaError(path, "expected a nonempty array of elements");
        std::vector<ModuleElement> out;
        out.reserve(list.size());
        for (size_t i = 0; i < list.size(); ++i) {
            const std::string epath = path + "/" + std::to_string(i);
            ModuleElement e = element_from_json(list.at(i), epath);
            if (!(e.space() == sys.space))
                throw SchemaError(epath, "element space disagrees with the file's d and m");
            out.push_back(std::move(e));
        }
        return out;
    };

    if (!root.contains("xi")) throw SchemaError("/xi", "missing field");
    sys.xi = read_family("xi");
    if (root.contains("upsilon") && !root.at("upsilon").is_null()) {
        sys.upsilon = read_family("upsilon");
        if (sys.upsilon->size() != sys.xi.size())
            throw SchemaError("/upsilon", "family lengths differ");
    }
    if (root.contains("operators") && !root.at("operators").is_null()) {
        const Json& ops = root.at("operators");
        if (!ops.is_object()) throw SchemaError("/operators", "expected an object");
        for (const auto& [name, node] : ops.items()) {
            ModuleOperator t = operator_from_json(node, "/operators/" + name);
            if (!(t.space() == sys.space))
                throw SchemaError("/operators/" + name,
                                  "operator space disagrees with the file's d and m");
            sys.operators.emplace(name, std::move(t));
        }
    }
    if (root.contains("tolerances") && !root.at("tolerances").is_null()) {
        const Json& tols = root.at("tolerances");
        if (!tols.is_object()) throw SchemaError("/tolerances", "expected an object");
        ToleranceConfig tol;
        auto read_tol = [&](const char* key, double& slot) {
            if (tols.contains(key)) slot = detail::number_at(tols.at(key), std::string("/tolerances/") + key);
        };
        read_tol("eq_tol", tol.eq_tol);
        read_tol("psd_tol", tol.psd_tol);
        read_tol("inv_tol", tol.inv_tol);
        try {
            tol.validate();
        } catch (const std::invalid_argument& e) {
            throw SchemaError("/tolerances", e.what());
        }
        sys.tolerances = tol;
    }
    return sys;
}

inline Json system_to_json(const SystemFile& sys) {
    Json root;
    root["d"] = sys.space.d;
    root["m"] = sys.space.m;
    Json xi = Json::array();
    for (const auto& e : sys.xi) xi.push_back(element_to_json(e));
    root["xi"] = std::move(xi);
    if (sys.upsilon) {
        Json upsilon = Json::array();
        for (const auto& e : *sys.upsilon) upsilon.push_back(element_to_json(e));
        root["upsilon"] = std::move(upsilon);
    }
    if (!sys.operators.empty()) {
        Json ops = Json::object();
        for (const auto& [name, t] : sys.operators) ops[name] = operator_to_json(t);
        root["operators"] = std::move(ops);
    }
    if (sys.tolerances) {
        root["tolerances"] = Json{{"eq_tol", sys.tolerances->eq_tol},
                                  {"psd_tol", sys.tolerances->psd_tol},
                                  {"inv_tol", sys.tolerances->inv_tol}};
    }
    return root;
}

inline SystemFile parse_system(const std::string& file_path) {
    std::ifstream in(file_path);
    if (!in) throw SchemaError("", "cannot open file: " + file_path);
    Json root;
    try {
        in >> root;
    } catch (const Json::parse_error& e) {
        throw SchemaError("", std::string("invalid JSON: ") + e.what());
    }
    return system_from_json(root);
}

inline void write_system(const SystemFile& sys, const std::string& file_path) {
    std::ofstream out(file_path);
    if (!out) throw SchemaError("", "cannot write file: " + file_path);
    out << system_to_json(sys).dump(2) << "\n";
}

// Flat JSON form of a classification report.
inline Json report_to_json(const ClassificationReport& report) {
    Json j;
    j["is_bessel"] = report.is_bessel;
    j["is_frame"] = report.is_frame;
    j["is_pair_frame"] = report.is_pair_frame;
    j["is_biframe"] = report.is_biframe;
    j["is_tight"] = report.is_tight ? Json(*report.is_tight) : Json(nullptr);
    j["is_parseval"] = report.is_parseval;
    j["lower"] = report.bounds ? Json(report.bounds->lower) : Json(nullptr);
    j["upper"] = report.bounds ? Json(report.bounds->upper) : Json(nullptr);
    j["hermitian_defect"] = report.hermitian_defect;
    j["diagnostics"] = report.diagnostics;
    return j;
}

// Custom diagonal sequence spec: {"xi": [[coeff, basis_index], ...], "upsilon": [...]}.
inline DiagonalExampleSpec custom_spec_from_json(const Json& root) {
    auto read_terms = [&](const char* key) {
        const std::string path = std::string("/") + key;
        if (!root.contains(key)) throw SchemaError(path, "missing field");
        const Json& list = root.at(key);
        if (!list.is_array() || list.empty())
            throw SchemaError(path, "expected a nonempty array of [coeff, basis_index] pairs");
        std::vector<CoeffTerm> terms;
        for (size_t i = 0; i < list.size(); ++i) {
            const Json& entry = list.at(i);
            const std::string epath = path + "/" + std::to_string(i);
            if (!entry.is_array() || entry.size() != 2)
                throw SchemaError(epath, "expected a [coeff, basis_index] pair");
            const double coeff = detail::number_at(entry.at(0), epath + "/0");
            if (!entry.at(1).is_number_integer() || entry.at(1).get<long long>() < 1)
                throw SchemaError(epath + "/1", "basis index must be a positive integer");
            terms.push_back(CoeffTerm{coeff, entry.at(1).get<int>()});
        }
        return terms;
    };
    return custom_spec(read_terms("xi"), read_terms("upsilon"));
}

}  // namespace biframe
