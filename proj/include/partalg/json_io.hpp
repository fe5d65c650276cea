#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "partalg/partition.hpp"

namespace partalg {

// Parsed input document.  kind selects which payload fields are meaningful.
struct SpecDocument {
    std::string kind;  // "algebra" | "partition" | "representation-audit"
    bool has_tol = false;
    bool has_seed = false;
    Config cfg;

    // kind == "algebra"
    int ambient_dim = 0;
    std::vector<CMat> generators;

    // kind == "partition" / "representation-audit"
    Partition partition;
};

nlohmann::json matrix_to_json(const CMat& m);
CMat matrix_from_json(const nlohmann::json& j, const std::string& path);

SpecDocument parse_spec(std::istream& in, const Config& defaults = {});
SpecDocument parse_spec_file(const std::string& path,
                             const Config& defaults = {});

// Emit a partition as a self-contained spec document (the inverse of
// parsing; subset algebras are emitted as spanning sets).
nlohmann::json partition_spec_json(const Partition& p);

nlohmann::json route_json(const Route& r);

} // namespace partalg
