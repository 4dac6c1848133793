#include "depcov/json_io.hpp"

#include <cmath>
#include <exception>
#include <fstream>
#include <string>

#include "depcov/errors.hpp"

namespace depcov {

Json report_to_json(const DependenceReport& rep, bool include_sqrt) {
    Json j;
    j["dcov"] = rep.dcov;
    j["dcor"] = rep.dcor;
    j["cov_dist"] = rep.cov_dist;
    j["cross_cov_dist"] = rep.cross_cov_dist;
    j["method"] = method_name(rep.method);
    j["degenerate"] = rep.degenerate;
    if (include_sqrt) {
        // The convention that defines dcov/dcor as square roots of the
        // values above; included on request for comparison with tools that
        // use it.
        j["dcov_sqrt"] = std::sqrt(std::max(rep.dcov, 0.0));
        j["dcor_sqrt"] = std::sqrt(rep.dcor);
    }
    return j;
}

DependenceReport report_from_json(const Json& j) {
    try {
        DependenceReport rep;
        rep.dcov = j.at("dcov").get<double>();
        rep.dcor = j.at("dcor").get<double>();
        rep.cov_dist = j.at("cov_dist").get<double>();
        rep.cross_cov_dist = j.at("cross_cov_dist").get<double>();
        rep.method = parse_method(j.at("method").get<std::string>());
        rep.degenerate = j.at("degenerate").get<bool>();
        return rep;
    } catch (const Json::exception& e) {
        fail(ErrorCode::parse_error, std::string("bad report JSON: ") + e.what());
    }
}

Json perm_result_to_json(const PermTestResult& r) {
    Json j;
    j["observed"] = r.observed;
    j["m"] = r.m;
    j["exceed_count"] = r.exceed_count;
    j["p_hat"] = r.p_hat;
    j["seed"] = r.seed;
    return j;
}

PermTestResult perm_result_from_json(const Json& j) {
    try {
        PermTestResult r;
        r.observed = j.at("observed").get<double>();
        r.m = j.at("m").get<std::uint64_t>();
        r.exceed_count = j.at("exceed_count").get<std::uint64_t>();
        r.p_hat = j.at("p_hat").get<double>();
        r.seed = j.at("seed").get<std::uint64_t>();
        return r;
    } catch (const Json::exception& e) {
        fail(ErrorCode::parse_error, std::string("bad permutation-test JSON: ") + e.what());
    }
}

Json distribution_to_json(const DiscreteBivariate& d) {
    Json atoms = Json::array();
    for (const Atom& a : d.atoms) {
        Json row;
        row["x"] = a.x;
        row["y"] = a.y;
        row["p"] = a.p;
        atoms.push_back(std::move(row));
    }
    Json j;
    j["atoms"] = std::move(atoms);
    return j;
}

DiscreteBivariate distribution_from_json(const Json& j) {
    try {
        DiscreteBivariate d;
        for (const Json& row : j.at("atoms")) {
            d.atoms.push_back(Atom{row.at("x").get<double>(), row.at("y").get<double>(),
                                   row.at("p").get<double>()});
        }
        d.validate();
        return d;
    } catch (const Json::exception& e) {
        fail(ErrorCode::parse_error, std::string("bad distribution JSON: ") + e.what());
    }
}

Method parse_method(const std::string& name) {
    if (name == "population-exact") return Method::population_exact;
    if (name == "sample-naive") return Method::sample_naive;
    if (name == "sample-fast") return Method::sample_fast;
    if (name == "contingency-closed-form") return Method::contingency_closed_form;
    fail(ErrorCode::parse_error, "unknown method '" + name + "'");
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::file_not_found, "cannot write " + path);
    out << j.dump(2) << '\n';
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::file_not_found, "cannot open " + path);
    try {
        Json j;
        in >> j;
        return j;
    } catch (const Json::exception& e) {
        fail(ErrorCode::parse_error, path + ": " + e.what());
    }
}

}  // namespace depcov
