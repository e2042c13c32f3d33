#pragma once

// JSON input/output.
//
// Two document kinds cross the CLI boundary:
//   * params documents: construction data (a, b, bprime, A, H, p,
//     partition) plus an optional surgery pipeline description.
//   * report documents: a serialized model (homology, labelled basis,
//     nonzero structure constants, pairing determinants, characteristic
//     record, verdicts/findings) or a surgery record carrying the same
//     sections plus Reeb data and history.
//
// Rendering is deterministic: fixed key order, fixed array orders, two
// space indentation.  Integers stay JSON numbers while they fit into 53
// bits and become decimal strings beyond that; loaders accept both.

#include "foldring/construction.hpp"
#include "foldring/diagnostics.hpp"
#include "foldring/integers.hpp"
#include "foldring/matrix.hpp"
#include "foldring/ring.hpp"
#include "foldring/surgery.hpp"

#include <json.hpp>

#include <cstddef>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace foldring {

using json = nlohmann::ordered_json;

inline json int_to_json(const Int& v) {
    if (fits_json_number(v)) return json(static_cast<long long>(v));
    return json(to_decimal(v));
}

inline Int int_from_json(const json& j, const std::string& ctx) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
    if (j.is_string()) {
        try {
            return from_decimal(j.get<std::string>());
        } catch (const std::exception&) {
            throw parameter_error(ctx + ": '" + j.get<std::string>() +
                                  "' is not a decimal integer");
        }
    }
    throw parameter_error(ctx + ": expected an integer or a decimal string");
}

namespace jsonio {

inline const json& require(const json& j, const std::string& key, const std::string& ctx) {
    const auto it = j.find(key);
    if (!j.is_object() || it == j.end())
        throw parameter_error(ctx + ": missing key '" + key + "'");
    return *it;
}

inline std::size_t size_from_json(const json& j, const std::string& ctx) {
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw parameter_error(ctx + ": expected a nonnegative integer");
    return static_cast<std::size_t>(j.get<long long>());
}

inline int small_int_from_json(const json& j, const std::string& ctx) {
    if (!j.is_number_integer()) throw parameter_error(ctx + ": expected an integer");
    return j.get<int>();
}

} // namespace jsonio

inline json int_vector_to_json(const std::vector<Int>& v) {
    json out = json::array();
    for (const Int& c : v) out.push_back(int_to_json(c));
    return out;
}

inline std::vector<Int> int_vector_from_json(const json& j, const std::string& ctx) {
    if (!j.is_array()) throw parameter_error(ctx + ": expected an array of integers");
    std::vector<Int> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(int_from_json(j[i], ctx + "[" + std::to_string(i) + "]"));
    return out;
}

inline json matrix_to_json(const IntegerMatrix& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m.at(i, j)));
        out.push_back(row);
    }
    return out;
}

inline IntegerMatrix matrix_from_json(const json& j, const std::string& ctx) {
    if (!j.is_array()) throw parameter_error(ctx + ": expected an array of rows");
    std::vector<std::vector<Int>> rows;
    for (std::size_t i = 0; i < j.size(); ++i)
        rows.push_back(int_vector_from_json(j[i], ctx + "[" + std::to_string(i) + "]"));
    try {
        return IntegerMatrix::from_rows(rows);
    } catch (const dimension_error&) {
        throw parameter_error(ctx + ": rows have unequal lengths");
    }
}

// ---------------------------------------------------------------------
// params documents

struct PipelineSpec {
    std::vector<int> base_l_list;
    int m = 7;
    int n = 4;
    SystemKind kind = SystemKind::plain;
    bool kind_given = false;
    std::vector<SphereEntry> spheres;
    std::optional<std::vector<Crossing>> crossings; // absent: derive from H
    std::size_t min_extra_crossings = 0;
    std::size_t point_count = 0;
};

struct ParamsDocument {
    ConstructionParams params;
    std::optional<PipelineSpec> pipeline;
};

namespace jsonio {

inline SphereEntry sphere_from_json(const json& j, const std::string& ctx) {
    SphereEntry e;
    e.id = small_int_from_json(require(j, "id", ctx), ctx + ".id");
    e.dim = j.contains("dim") ? small_int_from_json(j["dim"], ctx + ".dim") : 2;
    if (j.contains("sub_ids")) {
        for (const auto& v : j["sub_ids"])
            e.sub_ids.push_back(small_int_from_json(v, ctx + ".sub_ids"));
    } else {
        e.sub_ids = {e.id};
    }
    if (j.contains("sub_sphere_count")) {
        const std::size_t count = size_from_json(j["sub_sphere_count"], ctx + ".sub_sphere_count");
        if (count != e.sub_ids.size())
            throw parameter_error(ctx + ": sub_sphere_count " + std::to_string(count) +
                                  " does not match " + std::to_string(e.sub_ids.size()) +
                                  " sub ids");
    }
    if (j.contains("base_class")) {
        const json& bc = j["base_class"];
        if (!bc.is_array()) throw parameter_error(ctx + ".base_class: expected an array");
        if (!bc.empty() && bc.front().is_array()) {
            for (std::size_t i = 0; i < bc.size(); ++i)
                e.base_classes.push_back(
                    int_vector_from_json(bc[i], ctx + ".base_class[" + std::to_string(i) + "]"));
        } else {
            // a single tuple, for single-sub-sphere entries
            e.base_classes.push_back(int_vector_from_json(bc, ctx + ".base_class"));
        }
    }
    return e;
}

inline Crossing crossing_from_json(const json& j, const std::string& ctx) {
    Crossing c;
    const json& pair = require(j, "pair", ctx);
    if (!pair.is_array() || pair.size() != 2)
        throw parameter_error(ctx + ".pair: expected two sub-sphere ids");
    c.first = small_int_from_json(pair[0], ctx + ".pair[0]");
    c.second = small_int_from_json(pair[1], ctx + ".pair[1]");
    c.sign = small_int_from_json(require(j, "sign", ctx), ctx + ".sign");
    return c;
}

inline PipelineSpec pipeline_from_json(const json& j) {
    PipelineSpec spec;
    const json& base = require(j, "base", "pipeline");
    const json& llist = require(base, "l_list", "pipeline.base");
    if (!llist.is_array()) throw parameter_error("pipeline.base.l_list: expected an array");
    for (const auto& v : llist)
        spec.base_l_list.push_back(small_int_from_json(v, "pipeline.base.l_list"));
    if (base.contains("m")) spec.m = small_int_from_json(base["m"], "pipeline.base.m");
    if (base.contains("n")) spec.n = small_int_from_json(base["n"], "pipeline.base.n");

    if (j.contains("spheres")) {
        const json& spheres = j["spheres"];
        if (!spheres.is_array())
            throw parameter_error("pipeline.spheres: expected an array");
        for (std::size_t i = 0; i < spheres.size(); ++i)
            spec.spheres.push_back(
                sphere_from_json(spheres[i], "pipeline.spheres[" + std::to_string(i) + "]"));
    }
    if (j.contains("kind")) {
        const std::string kind = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
        if (kind == "plain")
            spec.kind = SystemKind::plain;
        else if (kind == "polyhedral")
            spec.kind = SystemKind::polyhedral;
        else
            throw parameter_error("pipeline.kind: expected 'plain' or 'polyhedral'");
        spec.kind_given = true;
    }
    if (j.contains("crossings")) {
        const json& crossings = j["crossings"];
        if (!crossings.is_array())
            throw parameter_error("pipeline.crossings: expected an array");
        std::vector<Crossing> list;
        for (std::size_t i = 0; i < crossings.size(); ++i)
            list.push_back(crossing_from_json(crossings[i],
                                              "pipeline.crossings[" + std::to_string(i) + "]"));
        spec.crossings = std::move(list);
    }
    if (j.contains("min_extra_crossings"))
        spec.min_extra_crossings =
            size_from_json(j["min_extra_crossings"], "pipeline.min_extra_crossings");
    if (j.contains("point_count"))
        spec.point_count = size_from_json(j["point_count"], "pipeline.point_count");
    return spec;
}

} // namespace jsonio

inline ParamsDocument params_from_json(const json& j) {
    if (!j.is_object()) throw parameter_error("params: expected a JSON object");
    ParamsDocument doc;
    ConstructionParams& p = doc.params;
    p.a = j.contains("a") ? jsonio::size_from_json(j["a"], "a") : 0;
    p.b = j.contains("b") ? jsonio::size_from_json(j["b"], "b") : 0;
    p.bprime = j.contains("bprime") ? jsonio::size_from_json(j["bprime"], "bprime") : 0;

    p.link_matrix = j.contains("A") ? matrix_from_json(j["A"], "A") : IntegerMatrix(p.b, p.a);
    if (p.link_matrix.rows() == 0) p.link_matrix = IntegerMatrix(0, p.a);
    p.crossing_form = j.contains("H") ? matrix_from_json(j["H"], "H") : IntegerMatrix(p.b, p.b);
    if (p.crossing_form.rows() == 0) p.crossing_form = IntegerMatrix(0, 0);

    if (j.contains("p")) p.pontryagin = int_vector_from_json(j["p"], "p");

    if (j.contains("partition")) {
        const json& part = j["partition"];
        if (!part.is_array()) throw parameter_error("partition: expected an array of blocks");
        std::vector<std::vector<std::size_t>> blocks;
        for (std::size_t k = 0; k < part.size(); ++k) {
            const json& blk = part[k];
            if (!blk.is_array())
                throw parameter_error("partition[" + std::to_string(k) +
                                      "]: expected an array of sphere ids");
            std::vector<std::size_t> ids;
            for (const auto& v : blk)
                ids.push_back(jsonio::size_from_json(v, "partition[" + std::to_string(k) + "]"));
            blocks.push_back(std::move(ids));
        }
        p.partition = std::move(blocks);
    }

    if (j.contains("pipeline")) doc.pipeline = jsonio::pipeline_from_json(j["pipeline"]);
    return doc;
}

// ---------------------------------------------------------------------
// report documents

inline const char* model_report_format = "foldring/model-report";
inline const char* record_report_format = "foldring/record-report";

namespace jsonio {

inline json basis_to_json(const GradedRing& r) {
    json out = json::array();
    for (int d = 0; d <= top_degree; ++d) {
        json names = json::array();
        for (const auto& name : r.basis[d]) names.push_back(name);
        out.push_back(names);
    }
    return out;
}

inline json products_to_json(const GradedRing& r) {
    json out = json::array();
    for (int d1 = 0; d1 <= top_degree; ++d1)
        for (int d2 = 0; d1 + d2 <= top_degree; ++d2)
            for (std::size_t i = 0; i < r.rank_at(d1); ++i)
                for (std::size_t j = 0; j < r.rank_at(d2); ++j)
                    for (std::size_t k = 0; k < r.rank_at(d1 + d2); ++k) {
                        const Int& c = r.coeff(d1, i, d2, j, k);
                        if (c == 0) continue;
                        out.push_back(json::array(
                            {d1, i, d2, j, d1 + d2, k, int_to_json(c)}));
                    }
    return out;
}

inline json pairing_determinants_to_json(const GradedRing& r) {
    json out = json::object();
    for (int d : {2, 3}) {
        if (r.rank_at(d) == r.rank_at(top_degree - d) && r.rank_at(top_degree) == 1)
            out[std::to_string(d)] = int_to_json(determinant(pairing_matrix(r, d)));
        else
            out[std::to_string(d)] = nullptr;
    }
    return out;
}

inline json characteristic_to_json(const CharacteristicRecord& c) {
    json sw = json::array();
    for (bool flag : c.sw_vanish) sw.push_back(flag);
    return json{{"stiefel_whitney_vanish", sw}, {"p1", int_vector_to_json(c.p1)}};
}

inline CharacteristicRecord characteristic_from_json(const json& j) {
    CharacteristicRecord c;
    const json& sw = require(j, "stiefel_whitney_vanish", "characteristic");
    if (!sw.is_array() || sw.size() != c.sw_vanish.size())
        throw parameter_error("characteristic: stiefel_whitney_vanish must list 5 flags");
    for (std::size_t i = 0; i < c.sw_vanish.size(); ++i) {
        if (!sw[i].is_boolean())
            throw parameter_error("characteristic: stiefel_whitney_vanish must be boolean");
        c.sw_vanish[i] = sw[i].get<bool>();
    }
    c.p1 = int_vector_from_json(require(j, "p1", "characteristic"), "characteristic.p1");
    return c;
}

inline void append_verdicts(json& out, const Report& rep) {
    out["verdicts"] = json{{"verified", rep.ok()}};
    json findings = json::array();
    for (const auto& f : rep.findings)
        findings.push_back(json{{"code", f.code}, {"detail", f.detail}});
    out["findings"] = findings;
    json notes = json::array();
    for (const auto& n : rep.notes) notes.push_back(n);
    out["notes"] = notes;
}

} // namespace jsonio

// Serializes a model together with the verification report that accompanies
// it.  The caller supplies the report so that reloading and re-rendering a
// document reproduces it byte for byte.
inline json render_model_report(const ManifoldModel& m, const Report& verification) {
    json j = json::object();
    j["format"] = model_report_format;
    j["version"] = 1;
    j["provenance"] = m.provenance;
    json hom = json::array();
    for (int d = 0; d <= top_degree; ++d) hom.push_back(m.homology_rank[d]);
    j["homology"] = hom;
    j["basis"] = jsonio::basis_to_json(m.ring);
    j["products"] = jsonio::products_to_json(m.ring);
    j["pairing_determinants"] = jsonio::pairing_determinants_to_json(m.ring);
    j["characteristic"] = jsonio::characteristic_to_json(m.characteristic);
    jsonio::append_verdicts(j, verification);
    return j;
}

struct LoadedReport {
    ManifoldModel model;
    Report recorded;
};

// Reconstructs a model from a report document (model or ring-bearing
// record).  Structure constants are replayed verbatim -- nothing is
// normalized -- so verification sees exactly what the file says.
inline LoadedReport model_from_report(const json& j) {
    if (!j.is_object()) throw parameter_error("report: expected a JSON object");
    const std::string format = j.contains("format") && j["format"].is_string()
                                   ? j["format"].get<std::string>()
                                   : "";
    if (format != model_report_format && format != record_report_format)
        throw parameter_error("report: unrecognized format tag '" + format + "'");
    if (!j.contains("basis"))
        throw parameter_error("report: no ring sections (record without a ring?)");

    LoadedReport out;
    ManifoldModel& m = out.model;
    m.provenance = j.contains("provenance") && j["provenance"].is_string()
                       ? j["provenance"].get<std::string>()
                       : "";

    const json& basis = j["basis"];
    if (!basis.is_array() || basis.size() != top_degree + 1)
        throw parameter_error("report: basis must list labels for degrees 0..7");
    for (int d = 0; d <= top_degree; ++d) {
        if (!basis[d].is_array())
            throw parameter_error("report: basis[" + std::to_string(d) + "] must be an array");
        for (const auto& name : basis[d]) {
            if (!name.is_string())
                throw parameter_error("report: basis labels must be strings");
            m.ring.basis[d].push_back(name.get<std::string>());
        }
        m.ring.rank[d] = m.ring.basis[d].size();
    }

    const json& hom = jsonio::require(j, "homology", "report");
    if (!hom.is_array() || hom.size() != top_degree + 1)
        throw parameter_error("report: homology must list 8 ranks");
    for (int d = 0; d <= top_degree; ++d)
        m.homology_rank[d] = jsonio::size_from_json(hom[d], "report.homology");

    allocate_zero_tables(m.ring);
    const json& products = jsonio::require(j, "products", "report");
    if (!products.is_array()) throw parameter_error("report: products must be an array");
    for (std::size_t idx = 0; idx < products.size(); ++idx) {
        const json& t = products[idx];
        const std::string ctx = "report.products[" + std::to_string(idx) + "]";
        if (!t.is_array() || t.size() != 7)
            throw parameter_error(ctx + ": expected [d1,i,d2,j,d3,k,coefficient]");
        const int d1 = jsonio::small_int_from_json(t[0], ctx);
        const std::size_t i = jsonio::size_from_json(t[1], ctx);
        const int d2 = jsonio::small_int_from_json(t[2], ctx);
        const std::size_t jj = jsonio::size_from_json(t[3], ctx);
        const int d3 = jsonio::small_int_from_json(t[4], ctx);
        const std::size_t k = jsonio::size_from_json(t[5], ctx);
        if (d1 < 0 || d2 < 0 || d1 + d2 != d3 || d3 > top_degree)
            throw parameter_error(ctx + ": inconsistent degrees");
        if (i >= m.ring.rank_at(d1) || jj >= m.ring.rank_at(d2) || k >= m.ring.rank_at(d3))
            throw parameter_error(ctx + ": basis index out of range");
        m.ring.coeff(d1, i, d2, jj, k) = int_from_json(t[6], ctx + ".coefficient");
    }

    m.characteristic =
        jsonio::characteristic_from_json(jsonio::require(j, "characteristic", "report"));

    if (j.contains("findings") && j["findings"].is_array())
        for (const auto& f : j["findings"])
            out.recorded.add(f.value("code", ""), f.value("detail", ""));
    if (j.contains("notes") && j["notes"].is_array())
        for (const auto& n : j["notes"])
            if (n.is_string()) out.recorded.note(n.get<std::string>());
    return out;
}

// Serializes a surgery record; ring-bearing records embed the full model
// sections so the output doubles as a model report.
inline json render_record_report(const InvariantRecord& rec, const Report& verification) {
    json j = json::object();
    j["format"] = record_report_format;
    j["version"] = 1;
    j["provenance"] = "pipeline";
    j["m"] = rec.m;
    j["n"] = rec.n;
    json mr = json::array();
    for (std::size_t r : rec.manifold_rank) mr.push_back(r);
    j["manifold_rank"] = mr;
    json rr = json::array();
    for (std::size_t r : rec.reeb_rank) rr.push_back(r);
    j["reeb_rank"] = rr;
    json qm = json::array();
    for (const auto& q : rec.quotient_map) qm.push_back(matrix_to_json(q));
    j["quotient_map"] = qm;
    json hist = json::array();
    for (const auto& line : rec.history) hist.push_back(line);
    j["history"] = hist;

    if (rec.ring && rec.m == top_degree) {
        json hom = json::array();
        for (int d = 0; d <= top_degree; ++d) hom.push_back(rec.manifold_rank[d]);
        j["homology"] = hom;
        j["basis"] = jsonio::basis_to_json(*rec.ring);
        j["products"] = jsonio::products_to_json(*rec.ring);
        j["pairing_determinants"] = jsonio::pairing_determinants_to_json(*rec.ring);
        j["characteristic"] = jsonio::characteristic_to_json(rec.characteristic);
    }
    jsonio::append_verdicts(j, verification);
    return j;
}

inline std::string render_bytes(const json& j) { return j.dump(2) + "\n"; }

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parameter_error("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw parameter_error("cannot parse '" + path + "': " + e.what());
    }
    return j;
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw parameter_error("cannot write '" + path + "'");
    out << render_bytes(j);
    if (!out) throw parameter_error("write failed for '" + path + "'");
}

} // namespace foldring
