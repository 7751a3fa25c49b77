#include "pindex/report.hpp"

#include <sstream>

namespace pindex {

Json matrix_to_json(const Mat& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json matrix_to_json(const CMat& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const SymplecticPath& path) {
    Json values = Json::array();
    for (const Mat& g : path.values()) values.push_back(matrix_to_json(g));
    return Json{{"times", path.times()},
                {"values", std::move(values)},
                {"max_defect", path.max_defect()},
                {"interpolation", "one-step reintegration from the lower grid node"}};
}

Json to_json(const Crossing& c) {
    return Json{{"sigma", c.sigma},
                {"nullity", c.nullity},
                {"bracket_width", c.width},
                {"residual", c.residual},
                {"degenerate", c.degenerate}};
}

Json to_json(const EkelandIndexReport& r) {
    Json crossings = Json::array();
    for (const Crossing& c : r.crossings) crossings.push_back(to_json(c));
    Json j{{"index", r.index},
           {"nullity", r.nullity},
           {"method", r.method},
           {"horizon", r.horizon},
           {"crossings", std::move(crossings)},
           {"near_miss", r.near_miss}};
    if (r.method == "crossing") {
        j["endpoint_residual"] = r.endpoint_residual;
        j["steps"] = r.steps;
    } else {
        j["m"] = r.m;
        j["negative_count"] = r.negative_count;
        j["zero_count"] = r.zero_count;
        j["stabilized"] = r.stabilized;
        Json trace = Json::array();
        for (auto [m, neg] : r.stabilization_trace) trace.push_back(Json::array({m, neg}));
        j["stabilization_trace"] = std::move(trace);
    }
    return j;
}

namespace {

Json omega_to_json(const Omega& w) {
    Json j{{"re", w.value.real()}, {"im", w.value.imag()}};
    if (w.exact) {
        j["num"] = w.exact->num;
        j["den"] = w.exact->den;
    }
    return j;
}

}  // namespace

Json to_json(const MaslovReport& r) {
    Json crossings = Json::array();
    for (const Crossing& c : r.crossings) crossings.push_back(to_json(c));
    return Json{{"omega", omega_to_json(r.omega)},
                {"index", r.index},
                {"nu_base", r.nu_base},
                {"nu_endpoint", r.nu_endpoint},
                {"horizon", r.horizon},
                {"crossings", std::move(crossings)},
                {"near_miss", r.near_miss}};
}

Json to_json(const SplittingReport& r) {
    Json trace = Json::array();
    for (auto [eps, dp, dm] : r.eps_trace) trace.push_back(Json::array({eps, dp, dm}));
    return Json{{"omega", omega_to_json(r.omega)},
                {"plus", r.plus},
                {"minus", r.minus},
                {"method", r.method},
                {"p_relative", r.p_relative},
                {"stabilized", r.stabilized},
                {"eps_trace", std::move(trace)},
                {"nu_omega_m", r.nu_omega_m},
                {"nu_omega_pinv", r.nu_omega_pinv}};
}

Json to_json(const Theorem36Result& r) {
    Json j{{"lhs_maslov", to_json(r.lhs)},
           {"rhs_ekeland", to_json(r.rhs)},
           {"nu1_pinv", r.nu1_pinv},
           {"pass", r.pass}};
    if (r.galerkin_checked) j["galerkin_index"] = r.galerkin_index;
    return j;
}

Json to_json(const AuditLine& l) {
    return Json{{"id", l.id},       {"statement", l.statement}, {"lhs", l.lhs},
                {"rhs", l.rhs},     {"op", l.op},               {"pass", l.pass}};
}

Json to_json(const Theorem11Audit& a) {
    Json lines = Json::array();
    for (const AuditLine& l : a.lines) lines.push_back(to_json(l));
    Json ladder = Json::array();
    for (const Omega& w : a.ladder) ladder.push_back(omega_to_json(w));
    return Json{{"pass", a.pass},
                {"n", a.n},
                {"lines", std::move(lines)},
                {"ladder", std::move(ladder)},
                {"added_spectrum_points", a.added_spectrum_points},
                {"e_pinv_m", a.e_pinv_m},
                {"transcript", a.transcript}};
}

Json to_json(const Theorem12Audit& a) {
    Json lines = Json::array();
    for (const AuditLine& l : a.lines) lines.push_back(to_json(l));
    return Json{{"hypothesis_met", a.hypothesis_met},
                {"contradiction", a.contradiction},
                {"chain_value", a.chain_value},
                {"lower_bound", a.lower_bound},
                {"margin", a.margin},
                {"a_count", a.a_count},
                {"b_count", a.b_count},
                {"condition_423", a.condition_423},
                {"e_value", a.e_value},
                {"lines", std::move(lines)},
                {"transcript", a.transcript}};
}

Json to_json(const CharacteristicRecord& r) {
    Json restarts = Json::array();
    for (const RestartRecord& rr : r.restarts)
        restarts.push_back(Json{{"restart", rr.restart},
                                {"psi", rr.psi},
                                {"grad_norm", rr.grad_norm},
                                {"iterations", rr.iterations},
                                {"converged", rr.converged}});
    Json multipliers = Json::array();
    for (const Complex& mu : r.multipliers)
        multipliers.push_back(Json::array({mu.real(), mu.imag()}));
    Json samples = Json::array();
    for (size_t i = 0; i < r.sample_times.size(); ++i) {
        Json row = Json::array({r.sample_times[i]});
        for (Eigen::Index d = 0; d < r.samples[i].size(); ++d) row.push_back(r.samples[i](d));
        samples.push_back(std::move(row));
    }
    return Json{{"psi", r.psi},
                {"trajectory_samples", std::move(samples)},
                {"grad_norm", r.grad_norm},
                {"m", r.m},
                {"k", r.k},
                {"residual_rel", r.residual_rel},
                {"h_drift_rel", r.h_drift_rel},
                {"off_plane_fraction", r.off_plane_fraction},
                {"closure_residual", r.closure_residual},
                {"monodromy_identity_residual", r.monodromy_identity_residual},
                {"path_defect", r.path_defect},
                {"control_norm", r.control_norm},
                {"period_map", matrix_to_json(r.period_map)},
                {"monodromy", matrix_to_json(r.monodromy)},
                {"multipliers", std::move(multipliers)},
                {"e_height", r.e_height},
                {"classification", r.classification},
                {"i_pe", r.i_pe},
                {"i_1p", r.i_1p},
                {"nu_endpoint", r.nu_endpoint},
                {"restarts", std::move(restarts)}};
}

std::string crossings_csv(const std::vector<Crossing>& crossings) {
    std::ostringstream os;
    os << "sigma,nullity,residual,bracket_width\n";
    os.precision(17);
    for (const Crossing& c : crossings)
        os << c.sigma << "," << c.nullity << "," << c.residual << "," << c.width << "\n";
    return os.str();
}

std::string trajectory_csv(const std::vector<double>& times, const std::vector<Vec>& samples) {
    std::ostringstream os;
    os << "t";
    if (!samples.empty())
        for (Eigen::Index i = 0; i < samples.front().size(); ++i) os << ",x" << (i + 1);
    os << "\n";
    os.precision(17);
    for (size_t i = 0; i < times.size(); ++i) {
        os << times[i];
        for (Eigen::Index d = 0; d < samples[i].size(); ++d) os << "," << samples[i](d);
        os << "\n";
    }
    return os.str();
}

Json make_report(const std::string& kind, unsigned long long seed, Json inputs, Json integers,
                 Json residuals, double wall_ms) {
    return Json{{"kind", kind},
                {"seed", seed},
                {"inputs", std::move(inputs)},
                {"integers", std::move(integers)},
                {"residuals", std::move(residuals)},
                {"wall_ms", wall_ms}};
}

namespace {

bool type_matches(const Json& v, const std::string& type) {
    if (type == "integer") return v.is_number_integer() || v.is_number_unsigned();
    if (type == "number") return v.is_number();
    if (type == "string") return v.is_string();
    if (type == "boolean") return v.is_boolean();
    if (type == "array") return v.is_array();
    if (type == "object") return v.is_object();
    return false;
}

}  // namespace

std::vector<std::string> validate_report(const Json& report, const Json& schema) {
    std::vector<std::string> violations;
    if (!report.contains("kind") || !report["kind"].is_string()) {
        violations.push_back("missing string field 'kind'");
        return violations;
    }
    const std::string kind = report["kind"];
    if (!schema.contains("kinds") || !schema["kinds"].contains(kind)) {
        violations.push_back("schema has no entry for kind '" + kind + "'");
        return violations;
    }
    const Json& spec = schema["kinds"][kind];
    for (auto it = spec.begin(); it != spec.end(); ++it) {
        // Field paths use '/' for nesting, e.g. "integers/index".
        const std::string path = it.key();
        const std::string type = it.value();
        const Json* node = &report;
        bool found = true;
        std::istringstream ss(path);
        std::string part;
        while (std::getline(ss, part, '/')) {
            if (!node->is_object() || !node->contains(part)) {
                found = false;
                break;
            }
            node = &(*node)[part];
        }
        if (!found)
            violations.push_back("missing field '" + path + "'");
        else if (!type_matches(*node, type))
            violations.push_back("field '" + path + "' is not of type " + type);
    }
    return violations;
}

}  // namespace pindex
