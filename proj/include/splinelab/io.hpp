#pragma once

#include <splinelab/complexes.hpp>

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>
#include <variant>

namespace splinelab {

using json = nlohmann::json;

inline json rational_to_json(const Rational& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p())
        return json(static_cast<long long>(q.get_num().get_si()));
    return json(to_string(q));
}

inline Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw std::invalid_argument("expected integer or \"p/q\" string for rational");
}

struct ComplexFile {
    std::variant<PlanarComplex, CentralStar> geometry;
    Smoothness alpha;

    bool is_planar() const { return std::holds_alternative<PlanarComplex>(geometry); }

    SplineProblem to_problem() const {
        if (is_planar()) return cone(std::get<PlanarComplex>(geometry), alpha);
        return star_problem(std::get<CentralStar>(geometry), alpha);
    }
};

inline json smoothness_to_json(const Smoothness& a) {
    json overrides = json::array();
    for (const auto& [face, alpha] : a.overrides)
        overrides.push_back({{"face", {face.first, face.second}}, {"alpha", alpha}});
    return {{"interior_default", a.interior_default},
            {"boundary_default", a.boundary_default},
            {"overrides", overrides}};
}

inline Smoothness smoothness_from_json(const json& j) {
    Smoothness a;
    if (j.contains("interior_default")) a.interior_default = j["interior_default"].get<int>();
    if (j.contains("boundary_default")) a.boundary_default = j["boundary_default"].get<int>();
    if (j.contains("overrides"))
        for (const auto& o : j["overrides"])
            a.overrides[face_id(o["face"][0].get<int>(), o["face"][1].get<int>())] =
                o["alpha"].get<int>();
    return a;
}

inline json complex_to_json(const ComplexFile& file) {
    json out;
    out["format"] = "splinelab-complex";
    out["version"] = 1;
    json verts = json::array();
    if (file.is_planar()) {
        const auto& c = std::get<PlanarComplex>(file.geometry);
        out["type"] = "planar";
        for (const auto& v : c.vertices)
            verts.push_back({rational_to_json(v[0]), rational_to_json(v[1])});
        out["facets"] = c.facets;
    } else {
        const auto& c = std::get<CentralStar>(file.geometry);
        out["type"] = "central_star";
        for (const auto& v : c.vertices)
            verts.push_back({rational_to_json(v[0]), rational_to_json(v[1]), rational_to_json(v[2])});
        json facets = json::array();
        for (const auto& t : c.triangles) facets.push_back({t[0], t[1], t[2]});
        out["facets"] = facets;
    }
    out["vertices"] = verts;
    out["alpha"] = smoothness_to_json(file.alpha);
    return out;
}

inline ComplexFile complex_from_json(const json& j) {
    if (!j.contains("type") || !j.contains("vertices") || !j.contains("facets"))
        throw std::invalid_argument("complex file needs type, vertices and facets");
    if (j.contains("version") && j["version"].get<int>() != 1)
        throw std::invalid_argument("unsupported complex file version");
    ComplexFile out;
    std::string type = j["type"].get<std::string>();
    if (type == "planar") {
        PlanarComplex c;
        for (const auto& v : j["vertices"]) {
            if (v.size() != 2) throw std::invalid_argument("planar vertices need 2 coordinates");
            c.vertices.push_back({rational_from_json(v[0]), rational_from_json(v[1])});
        }
        for (const auto& f : j["facets"]) c.facets.push_back(f.get<std::vector<int>>());
        out.geometry = std::move(c);
    } else if (type == "central_star") {
        CentralStar c;
        for (const auto& v : j["vertices"]) {
            if (v.size() != 3) throw std::invalid_argument("star vertices need 3 coordinates");
            c.vertices.push_back(
                {rational_from_json(v[0]), rational_from_json(v[1]), rational_from_json(v[2])});
        }
        for (const auto& f : j["facets"]) {
            auto idx = f.get<std::vector<int>>();
            if (idx.size() != 3) throw std::invalid_argument("star facets are vertex triples");
            c.triangles.push_back({idx[0], idx[1], idx[2]});
        }
        out.geometry = std::move(c);
    } else {
        throw std::invalid_argument("unknown complex type: " + type);
    }
    if (j.contains("alpha")) out.alpha = smoothness_from_json(j["alpha"]);
    return out;
}

inline void write_complex_file(const std::string& path, const ComplexFile& file) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << complex_to_json(file).dump(2) << "\n";
}

inline ComplexFile read_complex_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    json j;
    in >> j;
    return complex_from_json(j);
}

}  // namespace splinelab
