#include <foldring/json_io.hpp>
#include <foldring/surgery.hpp>

#include <catch_amalgamated.hpp>

#include <cstdio>

using namespace foldring;

namespace {

json fixture() { return read_json_file(std::string(FOLDRING_TEST_DATA_DIR) + "/p0.json"); }

} // namespace

TEST_CASE("integers cross the 53-bit fence as strings", "[json]") {
    const Int fence = (Int(1) << 53) - 1;
    REQUIRE(int_to_json(fence).is_number());
    REQUIRE(int_to_json(Int(fence + 1)).is_string());
    REQUIRE(int_to_json(Int(-fence)).is_number());
    REQUIRE(int_to_json(Int(-fence - 1)).is_string());

    for (const Int& v :
         {Int(0), Int(-17), fence, Int(fence + 1), Int("-123456789012345678901")}) {
        REQUIRE(int_from_json(int_to_json(v), "t") == v);
    }

    REQUIRE_THROWS_AS(int_from_json(json(1.5), "t"), parameter_error);
    REQUIRE_THROWS_AS(int_from_json(json("not a number"), "t"), parameter_error);
    REQUIRE_THROWS_AS(int_from_json(json(nullptr), "t"), parameter_error);
}

TEST_CASE("matrices round trip with huge entries", "[json]") {
    IntegerMatrix m(2, 3);
    m.at(0, 0) = Int("98765432109876543210987654321");
    m.at(1, 2) = -42;
    const json j = matrix_to_json(m);
    REQUIRE(matrix_from_json(j, "t") == m);
    REQUIRE_THROWS_AS(matrix_from_json(json::parse("[[1],[2,3]]"), "t"), parameter_error);
}

TEST_CASE("params documents parse with defaults", "[json]") {
    SECTION("the fixture document") {
        const ParamsDocument doc = params_from_json(fixture());
        REQUIRE(doc.params.a == 1);
        REQUIRE(doc.params.b == 2);
        REQUIRE(doc.params.bprime == 0);
        REQUIRE(doc.params.link_matrix == IntegerMatrix::from_rows({{1}, {1}}));
        REQUIRE(doc.params.crossing_form == IntegerMatrix::from_rows({{0, 1}, {1, 0}}));
        REQUIRE(doc.params.pontryagin == std::vector<Int>{0, 0});
        REQUIRE_FALSE(doc.params.partition);
        REQUIRE(doc.pipeline);
        REQUIRE(doc.pipeline->base_l_list == std::vector<int>{2});
        REQUIRE(doc.pipeline->m == 7);
        REQUIRE(doc.pipeline->spheres.size() == 2);
        REQUIRE(doc.pipeline->spheres[0].sub_ids == std::vector<int>{1});
        REQUIRE(doc.pipeline->spheres[0].base_classes ==
                std::vector<std::vector<Int>>{{Int(1)}});
        REQUIRE_FALSE(doc.pipeline->crossings); // derived from H downstream
        REQUIRE(doc.pipeline->point_count == 0);
    }
    SECTION("an empty object means empty parameters") {
        const ParamsDocument doc = params_from_json(json::object());
        REQUIRE(doc.params.a == 0);
        REQUIRE(doc.params.b == 0);
        REQUIRE(doc.params.link_matrix == IntegerMatrix(0, 0));
        REQUIRE(doc.params.pontryagin.empty());
        REQUIRE_FALSE(doc.pipeline);
    }
    SECTION("malformed documents are rejected") {
        REQUIRE_THROWS_AS(params_from_json(json::array()), parameter_error);
        REQUIRE_THROWS_AS(params_from_json(json::parse(R"({"a": -1})")), parameter_error);
        REQUIRE_THROWS_AS(params_from_json(json::parse(R"({"partition": 3})")),
                          parameter_error);
        REQUIRE_THROWS_AS(params_from_json(json::parse(R"({"pipeline": {}})")),
                          parameter_error);
    }
    SECTION("sphere entries check their own consistency") {
        json doc = fixture();
        doc["pipeline"]["spheres"][0]["sub_sphere_count"] = 2;
        REQUIRE_THROWS_AS(params_from_json(doc), parameter_error);

        doc = fixture();
        doc["pipeline"]["spheres"][0]["sub_ids"] = {1, 3};
        doc["pipeline"]["spheres"][0]["base_class"] = {{1}, {1}};
        doc["pipeline"]["spheres"][0]["sub_sphere_count"] = 2;
        const ParamsDocument parsed = params_from_json(doc);
        REQUIRE(parsed.pipeline->spheres[0].sub_ids == std::vector<int>{1, 3});
        REQUIRE(parsed.pipeline->spheres[0].base_classes.size() == 2);
    }
    SECTION("explicit crossings and kind") {
        json doc = fixture();
        doc["pipeline"]["kind"] = "polyhedral";
        doc["pipeline"]["crossings"] = json::parse(R"([{"pair": [1, 2], "sign": 1}])");
        const ParamsDocument parsed = params_from_json(doc);
        REQUIRE(parsed.pipeline->kind == SystemKind::polyhedral);
        REQUIRE(parsed.pipeline->kind_given);
        REQUIRE(parsed.pipeline->crossings->size() == 1);
        REQUIRE(parsed.pipeline->crossings->front().sign == 1);

        doc["pipeline"]["kind"] = "round";
        REQUIRE_THROWS_AS(params_from_json(doc), parameter_error);
    }
}

TEST_CASE("model reports reload byte for byte", "[json]") {
    const ParamsDocument doc = params_from_json(fixture());
    const ManifoldModel model = build_crossed_model(doc.params);
    const Report verification = verify_model(model);

    const json first = render_model_report(model, verification);
    const std::string bytes = render_bytes(first);

    const LoadedReport loaded = model_from_report(json::parse(bytes));
    REQUIRE(loaded.model.ring == model.ring);
    REQUIRE(loaded.model.homology_rank == model.homology_rank);
    REQUIRE(loaded.model.characteristic == model.characteristic);
    REQUIRE(loaded.recorded.ok());
    REQUIRE(loaded.recorded.notes.size() == 1);

    const json second = render_model_report(loaded.model, loaded.recorded);
    REQUIRE(render_bytes(second) == bytes);
}

TEST_CASE("record reports double as model reports", "[json]") {
    const ParamsDocument doc = params_from_json(fixture());
    InvariantRecord rec = special_generic_base(doc.pipeline->base_l_list, 7, 4);
    NormalSystem sys;
    sys.spheres = doc.pipeline->spheres;
    sys.target_form = doc.params.crossing_form;
    sys.crossings = crossings_for_form(sys.target_form, {1, 2});
    rec = apply_sphere_surgery(rec, sys);
    rec = realize_pontryagin(rec, doc.params.pontryagin);

    const json j = render_record_report(rec, verify_record(rec));
    REQUIRE(j["format"] == "foldring/record-report");
    REQUIRE(j["manifold_rank"] == json::parse("[1,0,3,2,2,3,0,1]"));
    REQUIRE(j["verdicts"]["verified"] == true);
    REQUIRE(j.contains("basis"));
    REQUIRE(j.contains("history"));

    const LoadedReport loaded = model_from_report(j);
    REQUIRE(loaded.model.homology_rank ==
            std::array<std::size_t, 8>{1, 0, 3, 2, 2, 3, 0, 1});
    REQUIRE(verify_model(loaded.model).ok());
}

TEST_CASE("report loader rejects structural damage", "[json]") {
    const ParamsDocument doc = params_from_json(fixture());
    const ManifoldModel model = build_crossed_model(doc.params);
    const json good = render_model_report(model, verify_model(model));

    json bad = good;
    bad.erase("format");
    REQUIRE_THROWS_AS(model_from_report(bad), parameter_error);

    bad = good;
    bad["format"] = "foldring/banana";
    REQUIRE_THROWS_AS(model_from_report(bad), parameter_error);

    bad = good;
    bad["basis"].erase(7);
    REQUIRE_THROWS_AS(model_from_report(bad), parameter_error);

    bad = good;
    bad["products"][0][4] = 6; // d1 + d2 != d3
    REQUIRE_THROWS_AS(model_from_report(bad), parameter_error);

    bad = good;
    bad["products"][0][1] = 99; // basis index out of range
    REQUIRE_THROWS_AS(model_from_report(bad), parameter_error);

    bad = good;
    bad.erase("characteristic");
    REQUIRE_THROWS_AS(model_from_report(bad), parameter_error);
}

TEST_CASE("doctored product tables fail re-verification, not parsing", "[json]") {
    const ParamsDocument doc = params_from_json(fixture());
    const ManifoldModel model = build_crossed_model(doc.params);
    json j = render_model_report(model, verify_model(model));

    // flip one structure constant; the loader replays it verbatim
    j["products"][0][6] = 7;
    const LoadedReport loaded = model_from_report(j);
    REQUIRE_FALSE(verify_model(loaded.model).ok());
}

TEST_CASE("file io round trip and missing files", "[json]") {
    const std::string path = "/tmp/foldring_test_roundtrip.json";
    json doc = json::object();
    doc["a"] = 1;
    doc["big"] = int_to_json(Int(Int(1) << 60));
    write_json_file(path, doc);
    REQUIRE(read_json_file(path) == doc);
    REQUIRE_THROWS_AS(read_json_file("/tmp/foldring_does_not_exist.json"), parameter_error);
    std::remove(path.c_str());
}
