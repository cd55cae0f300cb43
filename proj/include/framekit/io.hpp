#pragma once

#include <complex>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "framekit/errors.hpp"
#include "framekit/fusion.hpp"
#include "framekit/geometry.hpp"
#include "framekit/replacement.hpp"
#include "framekit/riesz.hpp"

namespace framekit {

using Json = nlohmann::ordered_json;

// -- frame files ---------------------------------------------------------------
// {"dim": N, "field": "real"|"complex", "vectors": [[...column...], ...]}
// Columns are IEEE-754 doubles; complex entries are [re, im] pairs.

namespace detail {

inline Json scalar_to_json(double x) { return x; }
inline Json scalar_to_json(const std::complex<double>& x) { return Json::array({x.real(), x.imag()}); }

inline void scalar_from_json(const Json& j, double& out) {
    if (!j.is_number()) throw IoError("expected a real number entry");
    out = j.get<double>();
}
inline void scalar_from_json(const Json& j, std::complex<double>& out) {
    if (!j.is_array() || j.size() != 2) throw IoError("expected an [re, im] pair");
    out = {j[0].get<double>(), j[1].get<double>()};
}

template <typename Scalar>
Json columns_to_json(const Matrix<Scalar>& m) {
    Json cols = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
        Json col = Json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) col.push_back(scalar_to_json(m(i, j)));
        cols.push_back(std::move(col));
    }
    return cols;
}

template <typename Scalar>
Matrix<Scalar> columns_from_json(const Json& cols, std::size_t dim) {
    if (!cols.is_array() || cols.empty()) throw IoError("vectors must be a non-empty array");
    Matrix<Scalar> m(dim, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const Json& col = cols[j];
        if (!col.is_array() || col.size() != dim)
            throw IoError("column " + std::to_string(j) + " does not have length " +
                          std::to_string(dim));
        for (std::size_t i = 0; i < dim; ++i) scalar_from_json(col[i], m(i, j));
    }
    if (!m.is_finite()) throw IoError("non-finite entry in vectors");
    return m;
}

} // namespace detail

template <typename Scalar>
Json frame_to_json(const Frame<Scalar>& f) {
    Json j;
    j["dim"] = f.dim();
    j["field"] = ScalarTraits<Scalar>::is_complex ? "complex" : "real";
    j["vectors"] = detail::columns_to_json(f.vectors());
    return j;
}

inline std::string frame_field(const Json& j) {
    if (!j.contains("field")) return "real";
    return j.at("field").get<std::string>();
}

template <typename Scalar>
Frame<Scalar> frame_from_json(const Json& j, const Tolerances& tol = {}) {
    if (!j.contains("dim") || !j.contains("vectors")) throw IoError("frame file needs dim and vectors");
    const auto dim = j.at("dim").get<std::size_t>();
    const std::string field = frame_field(j);
    const std::string want = ScalarTraits<Scalar>::is_complex ? "complex" : "real";
    if (field != want) throw IoError("frame field is '" + field + "', expected '" + want + "'");
    return Frame<Scalar>::from_columns(detail::columns_from_json<Scalar>(j.at("vectors"), dim), tol);
}

// -- fusion frame files ----------------------------------------------------------
// {"ambient_dim": N, "field": ..., "subspaces": [{"basis": [[...]], "weight": w,
//  "source_indices": [...]}, ...]}

template <typename Scalar>
Json fusion_frame_to_json(const FusionFrame<Scalar>& ff) {
    Json j;
    j["ambient_dim"] = ff.ambient_dim();
    j["field"] = ScalarTraits<Scalar>::is_complex ? "complex" : "real";
    Json subspaces = Json::array();
    for (std::size_t i = 0; i < ff.size(); ++i) {
        Json s;
        s["basis"] = detail::columns_to_json(ff.subspaces()[i].basis());
        s["weight"] = ff.weights()[i];
        s["source_indices"] = ff.subspaces()[i].source_indices();
        subspaces.push_back(std::move(s));
    }
    j["subspaces"] = std::move(subspaces);
    return j;
}

template <typename Scalar>
FusionFrame<Scalar> fusion_frame_from_json(const Json& j, const Tolerances& tol = {}) {
    if (!j.contains("ambient_dim") || !j.contains("subspaces"))
        throw IoError("fusion frame file needs ambient_dim and subspaces");
    const auto dim = j.at("ambient_dim").get<std::size_t>();
    std::vector<Subspace<Scalar>> subspaces;
    std::vector<double> weights;
    for (const auto& s : j.at("subspaces")) {
        auto basis = detail::columns_from_json<Scalar>(s.at("basis"), dim);
        auto sub = Subspace<Scalar>::from_orthonormal(std::move(basis), tol);
        if (s.contains("source_indices"))
            sub.set_source_indices(s.at("source_indices").get<std::vector<std::size_t>>());
        subspaces.push_back(std::move(sub));
        weights.push_back(s.contains("weight") ? s.at("weight").get<double>() : 1.0);
    }
    return FusionFrame<Scalar>(std::move(subspaces), std::move(weights), tol);
}

// -- reports ----------------------------------------------------------------------

/// +/-infinity has no JSON literal; reports carry it as a string.
inline Json finite_or_tag(double x) {
    if (std::isinf(x)) return x > 0 ? Json("infinity") : Json("-infinity");
    return x;
}

inline Json rip_report_to_json(const RipReport& r) {
    Json j;
    j["s"] = r.s;
    j["epsilon_hat"] = finite_or_tag(r.epsilon_hat);
    j["witness"] = r.witness;
    if (r.method.kind == RipMethod::Kind::exhaustive) {
        j["method"] = Json{{"kind", "exhaustive"}};
    } else {
        j["method"] = Json{{"kind", "randomized"},
                           {"samples", r.method.samples},
                           {"seed", r.method.seed}};
    }
    j["subsets_checked"] = r.subsets_checked;
    j["delta_equivalent"] = finite_or_tag(r.witness_bounds.delta_equivalent());
    j["witness_lambda_min"] = r.witness_bounds.lambda_min;
    j["witness_lambda_max"] = r.witness_bounds.lambda_max;
    return j;
}

inline RipReport rip_report_from_json(const Json& j) {
    RipReport r;
    r.s = j.at("s").get<std::size_t>();
    const Json& eps = j.at("epsilon_hat");
    r.epsilon_hat = eps.is_string() ? std::numeric_limits<double>::infinity() : eps.get<double>();
    r.witness = j.at("witness").get<std::vector<std::size_t>>();
    const Json& method = j.at("method");
    if (method.at("kind") == "randomized") {
        r.method.kind = RipMethod::Kind::randomized;
        r.method.samples = method.at("samples").get<std::size_t>();
        r.method.seed = method.at("seed").get<std::uint64_t>();
    }
    r.subsets_checked = j.at("subsets_checked").get<std::size_t>();
    r.witness_bounds.subset = r.witness;
    if (j.contains("witness_lambda_min")) {
        r.witness_bounds.lambda_min = j.at("witness_lambda_min").get<double>();
        r.witness_bounds.lambda_max = j.at("witness_lambda_max").get<double>();
        r.witness_bounds.epsilon = r.epsilon_hat;
    }
    return r;
}

inline Json near_tightness_to_json(const NearTightnessReport& r) {
    Json j;
    j["epsilon"] = r.epsilon;
    j["epsilon_in_hypothesis"] = r.epsilon_in_hypothesis;
    j["theoretical"] = Json{{"lower", r.theoretical_lower}, {"upper", r.theoretical_upper}};
    j["measured"] = Json{{"lower", r.measured_lower}, {"upper", r.measured_upper}};
    j["holds"] = r.holds;
    j["nearly_tight"] = Json{{"holds", r.nearly_tight}, {"c", r.nearly_tight_c}};
    return j;
}

inline Json isoclinic_report_to_json(const IsoclinicReport& r) {
    Json pairs = Json::array();
    for (const auto& p : r.pairwise)
        pairs.push_back(Json{{"i", p.i},
                             {"j", p.j},
                             {"cos2_min", p.cos2_min},
                             {"cos2_max", p.cos2_max}});
    Json j;
    j["pairs"] = std::move(pairs);
    j["lambda_star"] = r.lambda_star;
    j["epsilon_required"] = r.epsilon_required;
    if (r.probe_epsilon) {
        j["probe_epsilon"] = *r.probe_epsilon;
        j["holds_at_probe"] = r.holds_at_probe;
    }
    return j;
}

/// Angle report: pairwise principal-angle cosines plus the equi-isoclinic
/// envelope fields.
template <typename Scalar>
Json angle_report_to_json(const std::vector<Subspace<Scalar>>& subspaces,
                          const Tolerances& tol = {}) {
    Json pairs = Json::array();
    for (std::size_t i = 0; i < subspaces.size(); ++i)
        for (std::size_t j = i + 1; j < subspaces.size(); ++j) {
            const auto pa = principal_angles(subspaces[i], subspaces[j], tol);
            pairs.push_back(Json{{"i", i}, {"j", j}, {"cosines", pa.cosines}});
        }
    Json out;
    out["pairs"] = std::move(pairs);
    return out;
}

inline Json near_orthogonality_to_json(const NearOrthogonalityReport& r) {
    Json j;
    j["tightness"] = near_tightness_to_json(r.tightness);
    j["epsilon"] = r.epsilon;
    j["orthogonality_bound"] = r.orthogonality_bound;
    j["max_pair_correlation"] = r.max_pair_correlation;
    j["worst_pair"] = Json::array({r.worst_pair_i, r.worst_pair_j});
    j["orthogonality_holds"] = r.orthogonality_holds;
    j["holds"] = r.holds;
    return j;
}

inline Json replacement_report_to_json(const ReplacementReport& r) {
    Json j;
    j["replaced_count"] = r.replaced_count;
    j["epsilon"] = r.epsilon;
    j["theoretical_lower"] = r.theoretical_lower;
    j["theoretical_upper"] = r.theoretical_upper;
    j["measured_lower"] = r.measured_lower;
    j["measured_upper"] = r.measured_upper;
    if (r.max_replaceable)
        j["max_replaceable"] = *r.max_replaceable;
    else
        j["max_replaceable"] = nullptr;
    j["bracket_vacuous"] = r.bracket_vacuous;
    if (r.holds)
        j["holds"] = *r.holds;
    else
        j["holds"] = nullptr;
    j["subsets_checked"] = r.subsets_checked;
    return j;
}

// -- files -------------------------------------------------------------------------

inline Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw IoError("cannot parse " + path + ": " + e.what());
    }
    return j;
}

inline void save_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << j.dump(2) << '\n';
}

/// FNV-1a 64-bit content digest, hex-encoded; identifies report inputs.
inline std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::uint64_t h = 1469598103934665603ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << h;
    return hex.str();
}

} // namespace framekit
