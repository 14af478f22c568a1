/**
 * Orbit-spec documents: the on-disk JSON format for nilpotent orbits with
 * rational entries serialized as integer-or-fraction strings, plus the
 * stable digest used to key verification reports.
 */

#ifndef WEIGHTLAB_ORBITSPEC_HPP
#define WEIGHTLAB_ORBITSPEC_HPP

#include <weightlab/orbit.hpp>

#include <json.hpp>

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace weightlab {

using Json = nlohmann::ordered_json;

inline Mat parse_matrix(const Json& rows, int dim, const std::string& what)
{
    if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
        throw input_error(what + ": expected " + std::to_string(dim) + " rows");
    Mat m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const Json& row = rows[i];
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw input_error(what + ": row " + std::to_string(i) + " must have "
                              + std::to_string(dim) + " entries");
        for (int j = 0; j < dim; ++j) {
            if (!row[j].is_string())
                throw input_error(what + ": entry (" + std::to_string(i) + ","
                                  + std::to_string(j) + ") must be a rational string");
            m(i, j) = parse_rational(row[j].get<std::string>());
        }
    }
    return m;
}

inline Json matrix_to_json(const Mat& m)
{
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push_back(rational_str(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

/**
 * Parse an orbit-spec document.  The orbit must pass validation; otherwise
 * an input_error carrying every violated invariant is thrown.
 */
inline NilpotentOrbit parse_orbit(const Json& doc)
{
    if (!doc.is_object())
        throw input_error("orbit spec: top level must be an object");
    if (!doc.contains("dim") || !doc["dim"].is_number_integer())
        throw input_error("orbit spec: missing integer field 'dim'");
    int dim = doc["dim"].get<int>();
    if (dim < 0)
        throw input_error("orbit spec: dim must be nonnegative");
    if (!doc.contains("weight") || !doc["weight"].is_number_integer())
        throw input_error("orbit spec: missing integer field 'weight'");
    if (!doc.contains("nilpotents") || !doc["nilpotents"].is_array()
        || doc["nilpotents"].empty())
        throw input_error("orbit spec: missing nonempty array 'nilpotents'");
    std::vector<LinMap> nils;
    for (std::size_t i = 0; i < doc["nilpotents"].size(); ++i)
        nils.emplace_back(parse_matrix(doc["nilpotents"][i], dim,
                                       "nilpotents[" + std::to_string(i) + "]"));
    NilpotentOrbit orbit(dim, nils, doc["weight"].get<int>());
    if (doc.contains("labels")) {
        if (!doc["labels"].is_array()
            || doc["labels"].size() != doc["nilpotents"].size())
            throw input_error("orbit spec: labels must match the nilpotent count");
        std::vector<std::string> labels;
        for (const auto& l : doc["labels"])
            labels.push_back(l.get<std::string>());
        orbit.set_labels(labels);
    }
    if (doc.contains("hodge")) {
        const Json& h = doc["hodge"];
        if (!h.is_object())
            throw input_error("orbit spec: hodge must map exponents to vector lists");
        IncFiltration f(dim, Direction::decreasing);
        for (auto it = h.begin(); it != h.end(); ++it) {
            int p = 0;
            try {
                p = std::stoi(it.key());
            } catch (...) {
                throw input_error("orbit spec: hodge exponent '" + it.key()
                                  + "' is not an integer");
            }
            std::vector<Vec> gens;
            for (const auto& v : it.value()) {
                if (!v.is_array() || static_cast<int>(v.size()) != dim)
                    throw input_error("orbit spec: hodge vector length mismatch at F^"
                                      + it.key());
                Vec w(dim);
                for (int j = 0; j < dim; ++j)
                    w(j) = parse_rational(v[j].get<std::string>());
                gens.push_back(w);
            }
            f.set_step(p, Subspace::span(dim, gens));
        }
        if (!f.well_formed())
            throw input_error("orbit spec: hodge filtration is not decreasing");
        orbit.set_hodge(f);
    }
    if (doc.contains("pairing"))
        orbit.set_pairing(parse_matrix(doc["pairing"], dim, "pairing"));
    ValidationReport rep = validate(orbit);
    if (!rep.ok()) {
        std::ostringstream os;
        os << "orbit spec: validation failed:";
        for (const auto& item : rep.items)
            if (!item.pass)
                os << " [" << item.name << ": " << item.detail << "]";
        throw input_error(os.str());
    }
    return orbit;
}

/** Optional per-index multiplicities carried next to an orbit spec. */
inline std::vector<int> parse_multiplicities(const Json& doc, int count)
{
    std::vector<int> mults(count, 1);
    if (!doc.contains("multiplicities"))
        return mults;
    const Json& m = doc["multiplicities"];
    if (!m.is_array() || static_cast<int>(m.size()) != count)
        throw input_error("orbit spec: multiplicities must list one positive integer per index");
    for (int i = 0; i < count; ++i) {
        if (!m[i].is_number_integer() || m[i].get<int>() < 1)
            throw input_error("orbit spec: multiplicities must be positive integers");
        mults[i] = m[i].get<int>();
    }
    return mults;
}

inline Json print_orbit(const NilpotentOrbit& orbit,
                        const std::vector<int>* multiplicities = nullptr)
{
    Json doc = Json::object();
    doc["dim"] = orbit.dim();
    doc["weight"] = orbit.weight();
    doc["labels"] = orbit.labels();
    Json nils = Json::array();
    for (const auto& n : orbit.nilpotents())
        nils.push_back(matrix_to_json(n.matrix()));
    doc["nilpotents"] = nils;
    if (orbit.hodge()) {
        Json h = Json::object();
        for (const auto& [p, s] : orbit.hodge()->steps()) {
            Json vecs = Json::array();
            for (int j = 0; j < s.rank(); ++j) {
                Json v = Json::array();
                for (int i = 0; i < orbit.dim(); ++i)
                    v.push_back(rational_str(s.basis()(i, j)));
                vecs.push_back(v);
            }
            h[std::to_string(p)] = vecs;
        }
        doc["hodge"] = h;
    }
    if (orbit.pairing())
        doc["pairing"] = matrix_to_json(*orbit.pairing());
    if (multiplicities)
        doc["multiplicities"] = *multiplicities;
    return doc;
}

/** FNV-1a digest of the canonical serialization, as fixed-width hex. */
inline std::string orbit_digest(const NilpotentOrbit& orbit)
{
    std::string s = print_orbit(orbit).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex;
    for (int i = 15; i >= 0; --i)
        os << "0123456789abcdef"[(h >> (4 * i)) & 0xf];
    return os.str();
}

}  // namespace weightlab

#endif  // WEIGHTLAB_ORBITSPEC_HPP
