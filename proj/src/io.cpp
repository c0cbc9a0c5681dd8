#include "sac/io.hpp"

#include "sac/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace sac {

Json json_number(double v) {
    if (std::isinf(v)) return Json(v > 0 ? "inf" : "-inf");
    return Json(v);
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

Json to_json(const BoundValue& bv) {
    Json j;
    j["kind"] = kind_name(bv.kind);
    j["valid"] = bv.valid;
    if (bv.valid) {
        j["value"] = json_number(bv.value);
        if (bv.branch)
            j["branch"] = *bv.branch == XiBranch::First ? "first" : "second";
    }
    return j;
}

Json to_json(const WitnessMatrix3& w) {
    Json j;
    j["lambda"] = w.lambda;
    j["gamma_minus"] = w.gamma_minus;
    j["gamma_plus"] = w.gamma_plus;
    j["b_minus"] = w.b_minus;
    j["b_plus"] = w.b_plus;
    return j;
}

Json to_json(const WitnessReport& r) {
    Json j;
    j["matrix"] = to_json(r.matrix);
    j["z"] = r.z;
    j["tan_theta"] = json_number(r.tan_theta);
    j["bound"] = r.bound;
    j["gap_ratio"] = r.gap_ratio;
    j["regime"] = r.regime == XiBranch::First ? "first-branch" : "second-branch";
    j["t"] = r.t;
    j["t_clamped"] = r.t_clamped;
    return j;
}

Json to_json(const RemdelReport& r) {
    Json j;
    j["matrix"] = to_json(r.matrix);
    j["z"] = r.z;
    j["tan_theta"] = json_number(r.tan_theta);
    j["delta"] = r.delta;
    return j;
}

Json to_json(const AngleReport& r) {
    Json j;
    j["eigenvalue"] = r.eigenvalue;
    j["in_window"] = r.in_window;
    j["tan_theta"] = json_number(r.tan_theta);
    Json arr = Json::array();
    for (const BoundValue& bv : r.bounds) arr.push_back(to_json(bv));
    j["bounds"] = std::move(arr);
    j["all_satisfied"] = r.all_satisfied;
    j["tightest_ratio"] = json_number(r.tightest_ratio);
    return j;
}

Json to_json(const GapReport& r) {
    Json j;
    j["split_ok"] = r.split_ok;
    j["window_count"] = r.window_count;
    j["exterior_count"] = r.exterior_count;
    j["stray_count"] = r.stray_count;
    j["boundary_count"] = r.boundary_count;
    j["separation"] = json_number(r.separation);
    return j;
}

Json to_json(const CertifyResult& r) {
    Json j;
    Json arr = Json::array();
    for (const AngleReport& rep : r.reports) arr.push_back(to_json(rep));
    j["reports"] = std::move(arr);
    j["gap"] = to_json(r.gap);
    j["vnorm"] = r.vnorm;
    j["delta"] = json_number(r.delta);
    return j;
}

Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty())
        throw SchemaError("matrix: expected a non-empty array of rows");
    const int rows = static_cast<int>(j.size());
    if (!j[0].is_array())
        throw SchemaError("matrix: expected nested arrays");
    const int cols = static_cast<int>(j[0].size());
    if (cols == 0)
        throw SchemaError("matrix: empty row");
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
            throw SchemaError("matrix: ragged rows");
        for (int c = 0; c < cols; ++c) {
            if (!j[i][c].is_number())
                throw SchemaError("matrix: non-numeric entry");
            m(i, c) = j[i][c].get<double>();
        }
    }
    return m;
}

Json to_json(const BlockMatrix& m) {
    Json j;
    j["a0"] = to_json(m.a0.mat());
    j["a1"] = to_json(m.a1.mat());
    j["b"] = to_json(m.b);
    j["sigma0"] = m.sigma0;
    j["sigma1"] = m.sigma1;
    if (m.geometry) {
        Json g;
        g["lo"] = m.geometry->gap_lo;
        g["hi"] = m.geometry->gap_hi;
        g["d"] = m.geometry->d;
        j["gap"] = std::move(g);
    }
    return j;
}

namespace {

std::vector<double> numbers_from_json(const Json& j, const char* what) {
    if (!j.is_array() || j.empty())
        throw SchemaError(std::string(what) + ": expected a non-empty numeric array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number())
            throw SchemaError(std::string(what) + ": non-numeric entry");
        out.push_back(v.get<double>());
    }
    return out;
}

} // namespace

BlockMatrix block_matrix_from_json(const Json& j) {
    if (!j.is_object())
        throw SchemaError("instance: expected a JSON object");
    for (const char* key : {"a0", "a1", "b", "sigma0", "sigma1", "gap"})
        if (!j.contains(key))
            throw SchemaError(std::string("instance: missing key '") + key + "'");
    const Json& gap = j["gap"];
    if (!gap.is_object() || !gap.contains("lo") || !gap.contains("hi") ||
        !gap.contains("d") || !gap["lo"].is_number() || !gap["hi"].is_number() ||
        !gap["d"].is_number())
        throw SchemaError("instance: gap must be an object with numeric lo/hi/d");

    BlockMatrix m;
    m.a0 = SymMatrix(matrix_from_json(j["a0"]));
    m.a1 = SymMatrix(matrix_from_json(j["a1"]));
    m.b = matrix_from_json(j["b"]);
    m.sigma0 = numbers_from_json(j["sigma0"], "sigma0");
    m.sigma1 = numbers_from_json(j["sigma1"], "sigma1");
    std::sort(m.sigma0.begin(), m.sigma0.end());
    std::sort(m.sigma1.begin(), m.sigma1.end());
    m.disposition = Disposition::InGap;
    m.geometry = make_geometry(gap["lo"].get<double>(), gap["hi"].get<double>(),
                               gap["d"].get<double>());
    return m;
}

} // namespace sac
