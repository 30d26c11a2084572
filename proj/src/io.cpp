#include "infogeo/io.hpp"

#include "infogeo/error.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace infogeo {

namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& msg) {
    fail(ErrorCode::parse, path + ": " + msg);
}

Json parse_text(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        parse_fail("$", std::string("malformed JSON (") + e.what() + ")");
    }
}

const Json& field(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) parse_fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) parse_fail(path + "." + key, "missing field");
    return *it;
}

double number(const Json& j, const std::string& path) {
    if (!j.is_number()) parse_fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) parse_fail(path, "non-finite value");
    return v;
}

Vector vector_from(const Json& j, int n, const std::string& path) {
    if (!j.is_array()) parse_fail(path, "expected an array");
    if (n > 0 && static_cast<int>(j.size()) != n)
        parse_fail(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number(j[i], path + "[" + std::to_string(i) + "]");
    return v;
}

Matrix matrix_from(const Json& j, int n, const std::string& path) {
    if (!j.is_array() || j.empty()) parse_fail(path, "expected a non-empty array of rows");
    const int rows = static_cast<int>(j.size());
    if (n > 0 && rows != n) parse_fail(path, "expected " + std::to_string(n) + " rows, got " + std::to_string(rows));
    Matrix m(rows, rows);
    for (int i = 0; i < rows; ++i) {
        const std::string rp = path + "[" + std::to_string(i) + "]";
        m.row(i) = vector_from(j[static_cast<size_t>(i)], rows, rp).transpose();
    }
    return m;
}

SymMatrix symmetric_from(const Json& j, int n, const std::string& path) {
    const Matrix m = matrix_from(j, n, path);
    const double tol = 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol) parse_fail(path, "matrix is not symmetric");
    return symmetrize(m);
}

double optional_number(const Json& j, const char* key, double fallback, const std::string& path) {
    auto it = j.find(key);
    return it == j.end() ? fallback : number(*it, path + "." + key);
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json vector_to_json(const Vector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

Point point_from_json(const Json& j, const std::string& path) {
    const Json& jn = field(j, "n", path);
    if (!jn.is_number_integer() || jn.get<long long>() < 1)
        parse_fail(path + ".n", "expected a positive integer");
    const int n = jn.get<int>();
    const SymMatrix D = symmetric_from(field(j, "D", path), n, path + ".D");
    const Vector u = vector_from(field(j, "u", path), n, path + ".u");
    try {
        return Point(SpdMatrix(D), u);
    } catch (const Error& e) {
        parse_fail(path + ".D", std::string("not positive definite (") + e.what() + ")");
    }
}

Json point_to_json(const Point& pt) {
    return Json{{"n", pt.dim()}, {"D", matrix_to_json(pt.D.matrix())}, {"u", vector_to_json(pt.u)}};
}

Point parse_point(std::string_view text) { return point_from_json(parse_text(text)); }

// nlohmann emits the shortest representation that round-trips, which is at
// most 17 significant digits.
std::string serialize_point(const Point& pt) { return point_to_json(pt).dump(); }

Tangent tangent_from_json(const Json& j, int n, const std::string& path) {
    const SymMatrix X = symmetric_from(field(j, "X", path), n, path + ".X");
    auto it = j.find("x");
    if (it == j.end()) return Tangent(X);
    return Tangent(X, vector_from(*it, X.dim(), path + ".x"));
}

Json tangent_to_json(const Tangent& v) {
    return Json{{"X", matrix_to_json(v.X.matrix())}, {"x", vector_to_json(v.x)}};
}

Tangent parse_tangent(std::string_view text, int n) { return tangent_from_json(parse_text(text), n); }

MetricSpec metric_spec_from_json(const Json& j, const std::string& path) {
    const Json& jname = field(j, "name", path);
    if (!jname.is_string()) parse_fail(path + ".name", "expected a string");
    const std::string name = jname.get<std::string>();
    if (name == "renyi") return metrics::Renyi{};
    if (name == "lmr") return metrics::LMR{};
    if (name == "km") return metrics::KuboMori{};
    if (name == "largest") return metrics::Largest{};
    if (name == "fisher") return metrics::Fisher{number(field(j, "p", path), path + ".p")};
    if (name == "co") return metrics::CalvoOller{number(field(j, "beta", path), path + ".beta")};
    if (name == "tsallis")
        return metrics::Tsallis{number(field(j, "p", path), path + ".p"), number(field(j, "q", path), path + ".q")};
    if (name == "unified") {
        MetricParams mp;
        mp.alpha = optional_number(j, "alpha", mp.alpha, path);
        mp.beta = optional_number(j, "beta", mp.beta, path);
        mp.scale = optional_number(j, "scale", mp.scale, path);
        return metrics::Unified{mp};
    }
    parse_fail(path + ".name", "unknown metric '" + name + "'");
}

Json metric_spec_to_json(const MetricSpec& spec) {
    struct Visitor {
        Json operator()(const metrics::Renyi&) const { return {{"name", "renyi"}}; }
        Json operator()(const metrics::Tsallis& m) const { return {{"name", "tsallis"}, {"p", m.p}, {"q", m.q}}; }
        Json operator()(const metrics::Fisher& m) const { return {{"name", "fisher"}, {"p", m.p}}; }
        Json operator()(const metrics::CalvoOller& m) const { return {{"name", "co"}, {"beta", m.beta}}; }
        Json operator()(const metrics::LMR&) const { return {{"name", "lmr"}}; }
        Json operator()(const metrics::Unified& m) const {
            return {{"name", "unified"}, {"alpha", m.params.alpha}, {"beta", m.params.beta}, {"scale", m.params.scale}};
        }
        Json operator()(const metrics::KuboMori&) const { return {{"name", "km"}}; }
        Json operator()(const metrics::Largest&) const { return {{"name", "largest"}}; }
    };
    return std::visit(Visitor{}, spec);
}

MetricSpec parse_metric_spec(std::string_view text) { return metric_spec_from_json(parse_text(text)); }

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::parse, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace infogeo
