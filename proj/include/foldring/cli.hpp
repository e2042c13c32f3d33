#pragma once

// Command layer.  All subcommand logic lives here, driven through
// run_cli(args, out, err) so tests can exercise the exact code paths the
// binary runs.  Exit code contract:
//   0  success (empty verification / analysis completed)
//   1  semantic findings (failed verification, validator findings,
//      non-equivalent pipelines, model distinctions)
//   2  unusable input (bad flags, unreadable or malformed files, parameter
//      errors)

#include "foldring/analysis.hpp"
#include "foldring/construction.hpp"
#include "foldring/diagnostics.hpp"
#include "foldring/json_io.hpp"
#include "foldring/surgery.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace foldring {
namespace cli {

namespace detail {

inline std::vector<Int> parse_coeffs(const std::string& raw) {
    std::vector<Int> out;
    if (raw.empty()) return out;
    std::size_t start = 0;
    while (start <= raw.size()) {
        const std::size_t comma = raw.find(',', start);
        const std::string tok =
            raw.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
            out.push_back(from_decimal(tok));
        } catch (const std::exception&) {
            throw parameter_error("--coeffs: '" + tok + "' is not an integer");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

inline ModelFamily family_from_flag(int theorem) {
    const auto family = family_from_number(theorem);
    if (!family) throw parameter_error("--theorem must be 1, 5 or 6");
    return *family;
}

// A file is either a params document (built on the fly with the requested
// family) or a report document (recognized by its format tag).
inline ManifoldModel load_model(const std::string& path, ModelFamily family) {
    const json j = read_json_file(path);
    if (j.is_object() && j.contains("format")) return model_from_report(j).model;
    return build_model(family, params_from_json(j).params);
}

inline std::string render_tuple(const std::vector<Int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += to_decimal(v[i]);
    }
    return s + ")";
}

// Assembles the normal system described by a params document: target form
// and default linking rows come from the top-level H and A, crossings are
// synthesized from H when not spelled out.
inline NormalSystem assemble_system(const ParamsDocument& doc) {
    const PipelineSpec& spec = *doc.pipeline;
    NormalSystem sys;
    sys.spheres = spec.spheres;
    sys.target_form = doc.params.crossing_form;

    bool any_poly = false;
    for (auto& e : sys.spheres) {
        if (e.sub_ids.size() > 1) any_poly = true;
        if (e.base_classes.empty()) {
            for (int sid : e.sub_ids) {
                if (sid < 1 || static_cast<std::size_t>(sid) > doc.params.b)
                    throw parameter_error(
                        "pipeline: no base_class for sub-sphere " + std::to_string(sid) +
                        " and no matching row in A");
                std::vector<Int> row(doc.params.link_matrix.cols());
                for (std::size_t c = 0; c < row.size(); ++c)
                    row[c] = doc.params.link_matrix.at(sid - 1, c);
                e.base_classes.push_back(std::move(row));
            }
        }
    }
    sys.kind = spec.kind_given ? spec.kind
                               : (any_poly ? SystemKind::polyhedral : SystemKind::plain);

    if (spec.crossings) {
        sys.crossings = *spec.crossings;
    } else {
        std::vector<int> subs;
        for (const auto& e : sys.spheres)
            subs.insert(subs.end(), e.sub_ids.begin(), e.sub_ids.end());
        std::sort(subs.begin(), subs.end());
        if (sys.target_form.rows() != subs.size())
            throw parameter_error("pipeline: H is " + std::to_string(sys.target_form.rows()) +
                                  "x" + std::to_string(sys.target_form.cols()) + " but " +
                                  std::to_string(subs.size()) + " sub-spheres are declared");
        sys.crossings = crossings_for_form(sys.target_form, subs, spec.min_extra_crossings);
    }
    return sys;
}

} // namespace detail

inline int cmd_build(int theorem, const std::string& params_path, const std::string& out_path,
                     std::ostream& out) {
    const ModelFamily family = detail::family_from_flag(theorem);
    const ParamsDocument doc = params_from_json(read_json_file(params_path));
    const ManifoldModel model = build_model(family, doc.params);
    const Report rep = verify_model(model);
    write_json_file(out_path, render_model_report(model, rep));
    out << "wrote " << out_path << " (verified=" << (rep.ok() ? "true" : "false") << ")\n";
    return 0;
}

inline int cmd_verify(const std::string& path, std::ostream& out) {
    const LoadedReport loaded = model_from_report(read_json_file(path));
    const Report rep = verify_model(loaded.model);
    if (rep.ok()) {
        out << "verified: no findings\n";
        return 0;
    }
    out << format_report(rep);
    out << rep.findings.size() << " finding(s)\n";
    return 1;
}

inline int cmd_surgery(const std::string& pipeline_path,
                       const std::optional<std::string>& reference_path,
                       const std::string& out_path, std::ostream& out) {
    const ParamsDocument doc = params_from_json(read_json_file(pipeline_path));
    if (!doc.pipeline) throw parameter_error("document has no 'pipeline' section");
    const PipelineSpec& spec = *doc.pipeline;

    InvariantRecord rec = special_generic_base(spec.base_l_list, spec.m, spec.n);
    if (!spec.spheres.empty()) {
        const NormalSystem sys = detail::assemble_system(doc);
        const Report validation = validate_normal_system(sys, rec);
        if (!validation.ok()) {
            out << format_report(validation);
            out << "normal system rejected\n";
            return 1;
        }
        rec = apply_sphere_surgery(rec, sys);
    }
    if (spec.point_count > 0) rec = apply_point_surgery(rec, spec.point_count);
    if (!doc.params.pontryagin.empty()) rec = realize_pontryagin(rec, doc.params.pontryagin);

    const Report verification = verify_record(rec);
    write_json_file(out_path, render_record_report(rec, verification));
    out << "wrote " << out_path << " (verified=" << (verification.ok() ? "true" : "false")
        << ")\n";

    if (reference_path) {
        const LoadedReport ref = model_from_report(read_json_file(*reference_path));
        const Report eq = pipeline_equivalence(rec, ref.model);
        if (!eq.ok()) {
            out << format_report(eq);
            out << "pipeline differs from reference\n";
            return 1;
        }
        out << "equivalent to reference\n";
    }
    return verification.ok() ? 0 : 1;
}

inline int cmd_analyze(const std::string& mode, int theorem, long bound,
                       const std::string& coeff_tokens,
                       const std::vector<std::string>& files, std::ostream& out) {
    const ModelFamily family = detail::family_from_flag(theorem);

    if (mode == "obstruction") {
        if (files.size() != 1)
            throw parameter_error("mode obstruction expects one params document");
        const ParamsDocument doc = params_from_json(read_json_file(files[0]));
        const ObstructionVerdict v = special_generic_obstruction(doc.params, family);
        if (!v.obstructed) {
            out << "not obstructed\n";
        } else {
            out << "obstructed: ";
            for (std::size_t i = 0; i < v.reasons.size(); ++i) {
                if (i) out << ", ";
                out << reason_name(v.reasons[i]);
            }
            out << "\n";
        }
        return 0;
    }

    if (mode == "square") {
        if (files.size() != 1) throw parameter_error("mode square expects one document");
        const ManifoldModel model = detail::load_model(files[0], family);
        const std::vector<Int> coeffs = detail::parse_coeffs(coeff_tokens);
        const GradedClass sq = square_of(model, coeffs);
        out << "square" << detail::render_tuple(coeffs) << " = "
            << foldring::detail::render_class(model.ring, sq.degree, sq.coords) << "\n";
        return 0;
    }

    if (mode == "locus") {
        if (files.size() != 1) throw parameter_error("mode locus expects one document");
        const ManifoldModel model = detail::load_model(files[0], family);
        const IsotropyReport rep = vanishing_locus(model, bound);
        out << "vanishing tuples in [-" << bound << "," << bound << "]^"
            << model.ring.rank_at(2) << ": " << rep.vanishing_tuples.size() << "\n";
        out << "lines: " << rep.lines.size() << "\n";
        for (const auto& line : rep.lines) out << "line " << detail::render_tuple(line) << "\n";
        out << "union_of_lines: " << (rep.union_of_lines ? "true" : "false") << "\n";
        return 0;
    }

    if (mode == "isotropy") {
        if (files.size() != 1) throw parameter_error("mode isotropy expects one document");
        const ManifoldModel model = detail::load_model(files[0], family);
        const IsotropyReport rep = isotropic_rank_search(model, bound);
        out << "max isotropic rank " << rep.max_rank_found << " at bound " << bound << "\n";
        if (rep.witness_pair)
            out << "witness: " << detail::render_tuple(rep.witness_pair->first) << ", "
                << detail::render_tuple(rep.witness_pair->second) << "\n";
        return 0;
    }

    if (mode == "compare") {
        if (files.size() != 2) throw parameter_error("mode compare expects two documents");
        const ManifoldModel x = detail::load_model(files[0], family);
        const ManifoldModel y = detail::load_model(files[1], family);
        const Report rep = compare_models(x, y, bound);
        if (rep.ok()) {
            out << "no distinctions\n";
            return 0;
        }
        out << format_report(rep);
        return 1;
    }

    throw parameter_error("unknown mode '" + mode +
                          "' (expected obstruction, square, locus, isotropy or compare)");
}

inline int cmd_roundmap(int l, std::ostream& out) {
    const RoundFoldDescriptor d = round_fold_descriptor(l);
    const Report rep = validate_round_fold(d);
    for (std::size_t i = 0; i < d.fiber_counts.size(); ++i) {
        if (i) out << " ";
        out << d.fiber_counts[i];
    }
    out << "\n";
    return rep.ok() ? 0 : 1;
}

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact integer cohomology rings for fold-surgery 7-manifolds"};
    app.name("foldring");
    app.require_subcommand(1);

    int theorem = 5;
    long bound = 4;
    std::string params_path, out_path, verify_path, pipeline_path, mode;
    std::optional<std::string> reference_path;
    std::string coeff_tokens;
    std::vector<std::string> analyze_files;
    int shells = 0;

    CLI::App* build = app.add_subcommand("build", "build a model from a params document");
    build->add_option("--theorem", theorem, "construction family: 1, 5 or 6")->required();
    build->add_option("--params", params_path, "params JSON document")->required();
    build->add_option("--out", out_path, "output report path")->required();

    CLI::App* verify = app.add_subcommand("verify", "re-verify a report document");
    verify->add_option("report", verify_path, "report JSON document")->required();

    CLI::App* surgery = app.add_subcommand("surgery", "replay a surgery pipeline");
    surgery->add_option("--pipeline", pipeline_path, "params document with a pipeline section")
        ->required();
    surgery->add_option("--reference", [&reference_path](const std::vector<std::string>& v) {
        reference_path = v.front();
        return true;
    }, "model report to compare against");
    surgery->add_option("--out", out_path, "output report path")->required();

    CLI::App* analyze = app.add_subcommand("analyze", "run an analysis mode");
    analyze->add_option("--mode", mode,
                        "obstruction | square | locus | isotropy | compare")
        ->required();
    analyze->add_option("--theorem", theorem, "family for params inputs (default 5)");
    analyze->add_option("--bound", bound, "coordinate box bound (default 4)");
    analyze->add_option("--coeffs", coeff_tokens, "comma-separated degree-2 coefficients");
    analyze->add_option("files", analyze_files, "input documents");

    CLI::App* roundmap = app.add_subcommand("roundmap", "emit a round fold fiber-count profile");
    roundmap->add_option("--l", shells, "number of fold shells")->required();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (build->parsed()) return cmd_build(theorem, params_path, out_path, out);
        if (verify->parsed()) return cmd_verify(verify_path, out);
        if (surgery->parsed())
            return cmd_surgery(pipeline_path, reference_path, out_path, out);
        if (analyze->parsed())
            return cmd_analyze(mode, theorem, bound, coeff_tokens, analyze_files, out);
        if (roundmap->parsed()) return cmd_roundmap(shells, out);
    } catch (const parameter_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const dimension_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const surgery_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

} // namespace cli
} // namespace foldring
