#include <foldring/cli.hpp>

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>

using namespace foldring;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    CliResult r;
    r.code = cli::run_cli(std::move(args), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string data_file() { return std::string(FOLDRING_TEST_DATA_DIR) + "/p0.json"; }

std::string scratch(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("roundmap prints the fiber-count profile", "[cli]") {
    const CliResult r = run({"roundmap", "--l", "3"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out == "3 2 1 0\n");
    REQUIRE(run({"roundmap", "--l", "1"}).out == "1 0\n");
    REQUIRE(run({"roundmap", "--l", "0"}).code == 2);
}

TEST_CASE("build, verify and rebuild are deterministic", "[cli]") {
    const std::string out1 = scratch("foldring_cli_build1.json");
    const std::string out2 = scratch("foldring_cli_build2.json");

    const CliResult built =
        run({"build", "--theorem", "5", "--params", data_file(), "--out", out1});
    REQUIRE(built.code == 0);
    REQUIRE(built.out == "wrote " + out1 + " (verified=true)\n");

    const CliResult verified = run({"verify", out1});
    REQUIRE(verified.code == 0);
    REQUIRE(verified.out == "verified: no findings\n");

    REQUIRE(run({"build", "--theorem", "5", "--params", data_file(), "--out", out2}).code == 0);
    REQUIRE(read_json_file(out1) == read_json_file(out2));

    SECTION("tampered reports fail verification with exit 1") {
        json j = read_json_file(out1);
        j["products"][0][6] = 9;
        write_json_file(out2, j);
        const CliResult bad = run({"verify", out2});
        REQUIRE(bad.code == 1);
        REQUIRE(bad.out.find("finding(s)") != std::string::npos);
    }

    std::filesystem::remove(out1);
    std::filesystem::remove(out2);
}

TEST_CASE("analysis modes print exact integers", "[cli]") {
    SECTION("locus") {
        const CliResult r =
            run({"analyze", "--mode", "locus", "--bound", "4", data_file()});
        REQUIRE(r.code == 0);
        REQUIRE(r.out == "vanishing tuples in [-4,4]^3: 32\n"
                         "lines: 4\n"
                         "line (0, 0, 1)\n"
                         "line (0, 1, 0)\n"
                         "line (1, -1, -1)\n"
                         "line (1, 0, 0)\n"
                         "union_of_lines: true\n");
    }
    SECTION("isotropy, both families") {
        REQUIRE(run({"analyze", "--mode", "isotropy", "--bound", "3", data_file()}).out ==
                "max isotropic rank 1 at bound 3\n");
        REQUIRE(run({"analyze", "--mode", "isotropy", "--bound", "3", "--theorem", "1",
                     data_file()})
                    .out == "max isotropic rank 2 at bound 3\n"
                            "witness: (0, 0, 1), (0, 1, -3)\n");
    }
    SECTION("square") {
        REQUIRE(run({"analyze", "--mode", "square", "--coeffs", "0,1,0", data_file()}).out ==
                "square(0, 1, 0) = 0\n");
        REQUIRE(run({"analyze", "--mode", "square", "--coeffs", "1,1,1", data_file()}).out ==
                "square(1, 1, 1) = 4*b*_{1,4} + 4*b*_{2,4}\n");
        REQUIRE(run({"analyze", "--mode", "square", "--coeffs", "1,oops", data_file()}).code ==
                2);
    }
    SECTION("obstruction") {
        REQUIRE(run({"analyze", "--mode", "obstruction", data_file()}).out ==
                "obstructed: a_matrix_nonzero, H_nonzero\n");
        REQUIRE(run({"analyze", "--mode", "obstruction", "--theorem", "1", data_file()}).out ==
                "obstructed: a_matrix_nonzero\n");
    }
    SECTION("compare") {
        const CliResult same =
            run({"analyze", "--mode", "compare", "--bound", "3", data_file(), data_file()});
        REQUIRE(same.code == 0);
        REQUIRE(same.out == "no distinctions\n");

        const CliResult apart = run({"analyze", "--mode", "compare", "--bound", "3",
                                     "--theorem", "1", data_file(), data_file()});
        // both documents load as the plain family, so still no distinctions
        REQUIRE(apart.code == 0);

        const std::string report = scratch("foldring_cli_compare.json");
        REQUIRE(run({"build", "--theorem", "5", "--params", data_file(), "--out", report})
                    .code == 0);
        const CliResult found = run({"analyze", "--mode", "compare", "--bound", "3",
                                     "--theorem", "1", report, data_file()});
        REQUIRE(found.code == 1);
        REQUIRE(found.out.find("isotropy") != std::string::npos);
        std::filesystem::remove(report);
    }
    SECTION("unknown mode") {
        REQUIRE(run({"analyze", "--mode", "banana", data_file()}).code == 2);
    }
}

TEST_CASE("surgery replays the pipeline and compares references", "[cli]") {
    const std::string reference = scratch("foldring_cli_ref.json");
    const std::string out = scratch("foldring_cli_rec.json");
    REQUIRE(run({"build", "--theorem", "5", "--params", data_file(), "--out", reference})
                .code == 0);

    const CliResult ok =
        run({"surgery", "--pipeline", data_file(), "--reference", reference, "--out", out});
    REQUIRE(ok.code == 0);
    REQUIRE(ok.out == "wrote " + out + " (verified=true)\nequivalent to reference\n");

    SECTION("the emitted record verifies and analyzes like a model") {
        REQUIRE(run({"verify", out}).code == 0);
        REQUIRE(run({"analyze", "--mode", "isotropy", "--bound", "3", out}).out ==
                "max isotropic rank 1 at bound 3\n");
    }

    SECTION("a flipped crossing form diverges from the reference") {
        json doc = read_json_file(data_file());
        doc["H"] = json::parse("[[0,-1],[-1,0]]");
        const std::string mutated = scratch("foldring_cli_mutated.json");
        write_json_file(mutated, doc);
        const CliResult diff =
            run({"surgery", "--pipeline", mutated, "--reference", reference, "--out", out});
        REQUIRE(diff.code == 1);
        REQUIRE(diff.out.find("pipeline differs from reference") != std::string::npos);
        std::filesystem::remove(mutated);
    }

    std::filesystem::remove(reference);
    std::filesystem::remove(out);
}

TEST_CASE("usage errors map to exit code 2", "[cli]") {
    REQUIRE(run({}).code == 2);
    REQUIRE(run({"frobnicate"}).code == 2);
    REQUIRE(run({"verify", "/tmp/foldring_no_such_file.json"}).code == 2);
    REQUIRE(run({"build", "--theorem", "4", "--params", data_file(), "--out",
                 scratch("foldring_cli_never.json")})
                .code == 2);
    REQUIRE(run({"roundmap"}).code == 2); // --l is required

    const CliResult help = run({"--help"});
    REQUIRE(help.code == 0);
    REQUIRE(help.out.find("foldring") != std::string::npos);
}

TEST_CASE("malformed parameters are rejected before any output", "[cli]") {
    json doc = read_json_file(data_file());
    doc["H"] = json::parse("[[0,1],[2,0]]"); // asymmetric
    const std::string path = scratch("foldring_cli_bad.json");
    write_json_file(path, doc);
    const CliResult r = run({"build", "--theorem", "5", "--params", path, "--out",
                             scratch("foldring_cli_bad_out.json")});
    REQUIRE(r.code == 2);
    REQUIRE(r.out.empty());
    REQUIRE(r.err.find("symmetric") != std::string::npos);
    std::filesystem::remove(path);
}
