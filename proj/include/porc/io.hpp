#pragma once

// Result records: JSON (schema_version 1) and CSV emission, and reading census JSON back in.
// Counts and coefficients are strings so consumers never round through a double.

#include "porc/census.hpp"
#include "porc/oracle.hpp"
#include "porc/porc_fit.hpp"

#include <json.hpp>

#include <sstream>

namespace porc {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kArtifactVersion = "1.0.0";

struct ResultRecord {
    std::string command;
    Json inputs = Json::object();
    Json results = Json::array();
    Json diagnostics = Json::object();

    Json to_json() const {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = command;
        j["inputs"] = inputs;
        j["results"] = results;
        j["diagnostics"] = diagnostics;
        return j;
    }

    static ResultRecord from_json(const Json& j) {
        if (!j.is_object() || j.value("schema_version", 0) != kSchemaVersion) throw DomainError("not a schema_version 1 result record");
        ResultRecord r;
        r.command = j.at("command").get<std::string>();
        r.inputs = j.at("inputs");
        r.results = j.at("results");
        r.diagnostics = j.at("diagnostics");
        return r;
    }

    std::string dump() const { return to_json().dump(2) + "\n"; }
    static ResultRecord parse(const std::string& text) {
        try {
            return from_json(Json::parse(text));
        } catch (const Json::exception& e) {
            throw DomainError(std::string("malformed result JSON: ") + e.what());
        }
    }
};

inline std::string big_str(const BigInt& v) { return v.str(); }

inline Json census_row_json(const Census::Row& row) {
    Json j;
    j["n"] = row.n;
    j["p"] = row.p;
    j["count"] = big_str(row.count);
    Json b = Json::array();
    for (const auto& [m, lambda, x] : row.breakdown) {
        Json e;
        e["m"] = m;
        e["lambda"] = lambda.str();
        e["X"] = big_str(x);
        b.push_back(e);
    }
    j["breakdown"] = b;
    return j;
}

inline Json oracle_json(const OracleResult& r) {
    Json j;
    j["n"] = r.n;
    j["p"] = r.p;
    j["count"] = big_str(r.count);
    Json b = Json::array();
    for (const auto& [mu, c] : r.by_type) {
        Json e;
        e["additive_type"] = mu.str();
        e["classes"] = std::to_string(c);
        b.push_back(e);
    }
    j["by_additive_type"] = b;
    return j;
}

inline Json porc_formula_json(const PorcFormula& f) {
    Json j;
    j["N"] = f.N;
    j["degmax"] = f.degmax;
    j["accepted"] = f.accepted;
    j["reason"] = f.reason;
    Json cls = Json::array();
    for (const auto& [r, poly] : f.classes) {
        Json e;
        e["residue"] = r;
        e["coefficients"] = poly.coefficient_strings();  // constant term first
        e["polynomial"] = poly.str("p");
        e["fitted_primes"] = f.fitted.at(r);
        e["held_out_primes"] = f.held.count(r) ? f.held.at(r) : std::vector<std::uint64_t>{};
        cls.push_back(e);
    }
    j["classes"] = cls;
    return j;
}

/// (p -> count) samples for order p^n from a census record.
inline std::map<std::uint64_t, BigInt> census_samples(const ResultRecord& rec, int n) {
    if (rec.command != "census" && rec.command != "oracle") throw DomainError("expected a census or oracle record, got '" + rec.command + "'");
    std::map<std::uint64_t, BigInt> out;
    for (const auto& row : rec.results) {
        if (row.at("n").get<int>() != n) continue;
        const auto p = row.at("p").get<std::uint64_t>();
        const BigInt v(row.at("count").get<std::string>());
        const auto [it, fresh] = out.emplace(p, v);
        if (!fresh && it->second != v) throw DomainError("conflicting counts for p = " + std::to_string(p));
    }
    return out;
}

/// One CSV line per result row, columns chosen by the command.
inline std::string to_csv(const ResultRecord& rec) {
    std::ostringstream os;
    const auto& c = rec.command;
    if (c == "census" || c == "oracle") {
        os << "n,p,count\n";
        for (const auto& r : rec.results) os << r.at("n").get<int>() << ',' << r.at("p").get<std::uint64_t>() << ',' << r.at("count").get<std::string>() << '\n';
    } else if (c == "hall") {
        os << "lambda,mu,nu,q,count\n";
        for (const auto& r : rec.results)
            os << '"' << r.at("lambda").get<std::string>() << "\",\"" << r.at("mu").get<std::string>() << "\",\"" << r.at("nu").get<std::string>() << "\","
               << r.at("q").get<std::uint64_t>() << ',' << r.at("count").get<std::string>() << '\n';
    } else if (c == "autcount") {
        os << "lambda,q,count\n";
        for (const auto& r : rec.results) os << '"' << r.at("lambda").get<std::string>() << "\"," << r.at("q").get<std::uint64_t>() << ',' << r.at("count").get<std::string>() << '\n';
    } else if (c == "porc-fit") {
        os << "N,residue,accepted,coefficients\n";
        for (const auto& r : rec.results)
            for (const auto& e : r.at("classes")) {
                std::string coeffs;
                for (const auto& s : e.at("coefficients")) coeffs += (coeffs.empty() ? "" : " ") + s.get<std::string>();
                os << r.at("N").get<std::uint64_t>() << ',' << e.at("residue").get<std::uint64_t>() << ',' << (r.at("accepted").get<bool>() ? "true" : "false") << ','
                   << coeffs << '\n';
            }
    } else if (c == "typeof") {
        os << "degree,partitions\n";
        for (const auto& r : rec.results) os << r.at("degree").get<int>() << ",\"" << r.at("partitions").get<std::string>() << "\"\n";
    } else {
        throw DomainError("no CSV layout for command '" + c + "'");
    }
    return os.str();
}

}  // namespace porc
