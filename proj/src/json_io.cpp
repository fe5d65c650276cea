#include "partalg/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace partalg {

using nlohmann::json;

namespace {

[[noreturn]] void spec_error(const std::string& path, const std::string& what) {
    throw std::runtime_error("spec error at " + path + ": " + what);
}

std::string canonical_key(const std::string& raw) {
    if (raw == "∅" || raw == "empty") return "empty";
    return raw;
}

} // namespace

json matrix_to_json(const CMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

CMat matrix_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) spec_error(path, "expected a matrix");
    const int rows = int(j.size());
    CMat m;
    for (int i = 0; i < rows; ++i) {
        const json& row = j[i];
        const std::string rpath = path + "[" + std::to_string(i) + "]";
        if (!row.is_array()) spec_error(rpath, "expected a row array");
        if (i == 0) {
            if (int(row.size()) != rows)
                spec_error(rpath, "matrix is not square");
            m = CMat::Zero(rows, rows);
        } else if (int(row.size()) != rows) {
            spec_error(rpath, "row length mismatch");
        }
        for (int c = 0; c < int(row.size()); ++c) {
            const json& e = row[c];
            const std::string epath = rpath + "[" + std::to_string(c) + "]";
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
                !e[1].is_number())
                spec_error(epath, "expected an [re, im] pair");
            const double re = e[0].get<double>();
            const double im = e[1].get<double>();
            if (!std::isfinite(re) || !std::isfinite(im))
                spec_error(epath, "non-finite entry");
            m(i, c) = Complex(re, im);
        }
    }
    return m;
}

SpecDocument parse_spec(std::istream& in, const Config& defaults) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("malformed JSON: ") + e.what());
    }

    SpecDocument doc;
    doc.cfg = defaults;
    if (!j.contains("kind") || !j["kind"].is_string())
        spec_error("kind", "missing or not a string");
    doc.kind = j["kind"].get<std::string>();
    if (doc.kind != "algebra" && doc.kind != "partition" &&
        doc.kind != "representation-audit")
        spec_error("kind", "unknown kind \"" + doc.kind + "\"");

    if (j.contains("meta")) {
        const json& meta = j["meta"];
        if (meta.contains("format_version") &&
            meta["format_version"].get<std::string>() != "1")
            spec_error("meta.format_version", "unrecognized version");
        if (meta.contains("tol")) {
            doc.cfg.tol = meta["tol"].get<double>();
            doc.has_tol = true;
        }
        if (meta.contains("seed")) {
            doc.cfg.seed = meta["seed"].get<std::uint64_t>();
            doc.has_seed = true;
        }
    }

    if (!j.contains("ambient_dim") || !j["ambient_dim"].is_number_integer())
        spec_error("ambient_dim", "missing or not an integer");
    const int D = j["ambient_dim"].get<int>();
    if (D < 1) spec_error("ambient_dim", "must be positive");

    if (doc.kind == "algebra") {
        doc.ambient_dim = D;
        if (!j.contains("generators") || !j["generators"].is_array())
            spec_error("generators", "missing or not an array");
        for (size_t i = 0; i < j["generators"].size(); ++i) {
            CMat m = matrix_from_json(j["generators"][i],
                                      "generators[" + std::to_string(i) + "]");
            if (m.rows() != D)
                spec_error("generators[" + std::to_string(i) + "]",
                           "dimension differs from ambient_dim");
            doc.generators.push_back(std::move(m));
        }
        return doc;
    }

    // partition-shaped payload
    Partition& p = doc.partition;
    p.ambient_dim = D;
    if (!j.contains("labels") || !j["labels"].is_array() || j["labels"].empty())
        spec_error("labels", "missing or empty");
    for (const auto& l : j["labels"]) p.labels.push_back(l.get<std::string>());
    std::sort(p.labels.begin(), p.labels.end());

    if (!j.contains("algebras") || !j["algebras"].is_object())
        spec_error("algebras", "missing or not an object");
    for (const auto& [raw_key, mats] : j["algebras"].items()) {
        const std::string key = canonical_key(raw_key);
        if (!mats.is_array())
            spec_error("algebras." + raw_key, "expected an array of matrices");
        std::vector<CMat> gens;
        for (size_t i = 0; i < mats.size(); ++i) {
            CMat m = matrix_from_json(
                mats[i], "algebras." + raw_key + "[" + std::to_string(i) + "]");
            if (m.rows() != D)
                spec_error("algebras." + raw_key + "[" + std::to_string(i) + "]",
                           "dimension differs from ambient_dim");
            gens.push_back(std::move(m));
        }
        p.algebras[key] = generate(D, gens, doc.cfg);
    }

    // powerset completeness
    for (const auto& S : p.subsets())
        if (!p.algebras.count(subset_key(S)))
            spec_error("algebras",
                       "powerset incomplete: missing subset \"" +
                           subset_key(S) + "\"");
    p.global = p.at(subset_key(p.labels));
    return doc;
}

SpecDocument parse_spec_file(const std::string& path, const Config& defaults) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    return parse_spec(in, defaults);
}

json partition_spec_json(const Partition& p) {
    json algebras = json::object();
    for (const auto& S : p.subsets()) {
        const auto& alg = p.at(subset_key(S));
        json mats = json::array();
        for (const auto& b : alg.basis) mats.push_back(matrix_to_json(b));
        algebras[subset_key(S)] = std::move(mats);
    }
    return json{{"kind", "partition"},
                {"meta", {{"format_version", "1"}}},
                {"ambient_dim", p.ambient_dim},
                {"labels", p.labels},
                {"algebras", std::move(algebras)}};
}

json route_json(const Route& r) {
    json mat = json::array();
    for (int i = 0; i < r.mat.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < r.mat.cols(); ++j)
            row.push_back(r.mat(i, j) != 0 ? 1 : 0);
        mat.push_back(std::move(row));
    }
    return json{{"sites", r.domain.sites},
                {"counts", r.domain.counts},
                {"matrix", std::move(mat)}};
}

} // namespace partalg
