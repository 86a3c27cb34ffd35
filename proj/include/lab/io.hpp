#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lab/hypersurface.hpp"
#include "lab/lattice.hpp"

namespace lab {

// {p, n, d, monomials: [{exps: [...], coeff}], smooth: "diagonal"|"asserted"}
inline HypersurfaceSpec hypersurface_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidInput("hypersurface_from_json: expected an object");
    for (const char* key : {"p", "n", "d", "monomials", "smooth"})
        if (!j.contains(key))
            throw InvalidInput(std::string("hypersurface_from_json: missing field ") + key);
    int p = j.at("p").get<int>(), n = j.at("n").get<int>(), d = j.at("d").get<int>();
    std::vector<Monomial> ms;
    for (const auto& jm : j.at("monomials")) {
        Monomial m;
        m.exps = jm.at("exps").get<std::vector<int>>();
        m.coeff = jm.at("coeff").get<int>();
        ms.push_back(std::move(m));
    }
    std::string smooth = j.at("smooth").get<std::string>();
    SmoothMode mode;
    if (smooth == "diagonal") mode = SmoothMode::DiagonalCertified;
    else if (smooth == "asserted") mode = SmoothMode::UserAsserted;
    else throw InvalidInput("hypersurface_from_json: smooth must be 'diagonal' or 'asserted'");
    return HypersurfaceSpec(p, n, d, std::move(ms), mode);
}

inline nlohmann::ordered_json hypersurface_to_json(const HypersurfaceSpec& f) {
    nlohmann::ordered_json j;
    j["p"] = f.p();
    j["n"] = f.n();
    j["d"] = f.d();
    j["monomials"] = nlohmann::ordered_json::array();
    for (const auto& m : f.monomials())
        j["monomials"].push_back({{"exps", m.exps}, {"coeff", m.coeff}});
    j["smooth"] = f.mode() == SmoothMode::DiagonalCertified ? "diagonal" : "asserted";
    return j;
}

inline HypersurfaceSpec load_hypersurface(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("load_hypersurface: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidInput("load_hypersurface: " + std::string(ex.what()));
    }
    return hypersurface_from_json(j);
}

// {p, n, entries: [[ {"exp": coeff, ...} ]]} with exponent keys as strings.
inline TLattice lattice_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidInput("lattice_from_json: expected an object");
    for (const char* key : {"p", "n", "entries"})
        if (!j.contains(key))
            throw InvalidInput(std::string("lattice_from_json: missing field ") + key);
    int p = j.at("p").get<int>(), n = j.at("n").get<int>();
    TLattice lat(p, n);
    const auto& rows = j.at("entries");
    if (static_cast<int>(rows.size()) != n)
        throw InvalidInput("lattice_from_json: entries must have n rows");
    for (int i = 0; i < n; ++i) {
        const auto& row = rows.at(static_cast<size_t>(i));
        if (static_cast<int>(row.size()) != n)
            throw InvalidInput("lattice_from_json: entries must have n columns");
        for (int k = 0; k < n; ++k) {
            LEntry e;
            for (const auto& [exp, coeff] : row.at(static_cast<size_t>(k)).items())
                e[std::stoi(exp)] = coeff.get<int>();
            lat.set(i, k, std::move(e));
        }
    }
    return lat;
}

}  // namespace lab
