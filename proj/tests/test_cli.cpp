#include <catch2/catch.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunOutput {
    int exit_code = -1;
    std::string stdout_text;
};

RunOutput run_cli(const std::string& args) {
    const std::string command = std::string(GFC_BINARY) + " " + args + " 2>/dev/null";
    RunOutput out;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buffer{};
    std::size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        out.stdout_text.append(buffer.data(), got);
    const int status = pclose(pipe);
    out.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

json parse_payload(const RunOutput& out) {
    json doc = json::parse(out.stdout_text);
    return doc["payload"];
}

json strip_meta(const std::string& text) {
    json doc = json::parse(text);
    doc.erase("meta");
    return doc;
}

} // namespace

TEST_CASE("wn-betti golden values") {
    auto run1 = run_cli("wn-betti --n 1");
    CHECK(run1.exit_code == 0);
    json payload = parse_payload(run1);
    CHECK(payload["betti"] == json({{"0", 1}, {"3", 1}}));

    auto run2 = run_cli("wn-betti --n 2");
    CHECK(run2.exit_code == 0);
    CHECK(parse_payload(run2)["betti"] == json({{"0", 1}, {"5", 2}, {"7", 1}, {"8", 2}}));
}

TEST_CASE("invalid input exits with code 2") {
    CHECK(run_cli("wn-betti --n 0").exit_code == 2);
    CHECK(run_cli("wn-betti --n 9").exit_code == 2);
    CHECK(run_cli("brute --n 1 --kmax 99").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("crosscheck agrees and exits 0") {
    auto run = run_cli("crosscheck --n 1");
    CHECK(run.exit_code == 0);
    json payload = parse_payload(run);
    CHECK(payload["diff"].empty());
    CHECK(payload["spectral"] == json({{"0", 1}, {"3", 1}}));
}

TEST_CASE("brute includes zero entries up to kmax") {
    auto run = run_cli("brute --n 1 --kmax 4 --weight 0");
    CHECK(run.exit_code == 0);
    json betti = parse_payload(run)["betti"];
    CHECK(betti.size() == 5);
    CHECK(betti["0"] == 1);
    CHECK(betti["1"] == 0);
    CHECK(betti["3"] == 1);
    CHECK(betti["4"] == 0);
}

TEST_CASE("nonzero weights are acyclic through the CLI") {
    auto run = run_cli("brute --n 1 --kmax 3 --weight 2");
    CHECK(run.exit_code == 0);
    json betti = parse_payload(run)["betti"];
    for (const auto& [k, v] : betti.items()) {
        (void)k;
        CHECK(v == 0);
    }
}

TEST_CASE("koszul command verifies exactness") {
    auto run = run_cli("koszul --n 1 --kmax 3");
    CHECK(run.exit_code == 0);
    json payload = parse_payload(run);
    CHECK(payload["exact"] == true);
    CHECK(payload["subcomplex_ok"] == true);
}

TEST_CASE("invariants command reports partition counts and the product law") {
    auto run = run_cli("invariants --n 2 --r 3");
    CHECK(run.exit_code == 0);
    json payload = parse_payload(run);
    CHECK(payload["invariant_dims"] == json({{"1", 1}, {"2", 2}, {"3", 0}}));
    CHECK(payload["product_law_holds"] == true);
    CHECK(payload["trace_module_dim"] == 1);
}

TEST_CASE("s1 command verifies the circle pipeline") {
    auto run = run_cli("s1 --kmax 2 --mode-bound 8");
    CHECK(run.exit_code == 0);
    json payload = parse_payload(run);
    CHECK(payload["c2_cocycle"] == true);
    CHECK(payload["c3_cocycle"] == true);
    CHECK(payload["c2_coboundary_test"]["feasible"] == false);
    CHECK_FALSE(payload["c2_coboundary_test"]["combination"].empty());
    CHECK(payload["diagonal_betti"]["2"] ==
          json({{"2", 1}, {"3", 1}, {"4", 1}, {"5", 1}}));
    // grid entries for k = 2 at the four expected positions
    json grid = payload["e2_grids"]["2"];
    CHECK(grid.size() == 4);
}

TEST_CASE("output is byte-identical across runs modulo timing") {
    auto a = run_cli("wn-betti --n 2");
    auto b = run_cli("wn-betti --n 2");
    CHECK(strip_meta(a.stdout_text) == strip_meta(b.stdout_text));
    CHECK(strip_meta(a.stdout_text).dump() == strip_meta(b.stdout_text).dump());
}

TEST_CASE("--out writes the same document to a file") {
    const std::string path = "/tmp/gfc_out_test.json";
    std::remove(path.c_str());
    auto run = run_cli("wn-betti --n 1 --out " + path);
    CHECK(run.exit_code == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    CHECK(strip_meta(buffer.str()) == strip_meta(run.stdout_text));
    std::remove(path.c_str());
}

TEST_CASE("--pretty renders text instead of JSON") {
    auto run = run_cli("wn-betti --n 1 --pretty");
    CHECK(run.exit_code == 0);
    CHECK(run.stdout_text.find("Betti table") != std::string::npos);
    CHECK(run.stdout_text.find("\"payload\"") == std::string::npos);
}

TEST_CASE("--k restricts s1 to one diagonal index") {
    auto run = run_cli("s1 --k 3 --mode-bound 6");
    CHECK(run.exit_code == 0);
    json payload = parse_payload(run);
    CHECK(payload["e2_grids"].size() == 1);
    CHECK(payload["e2_grids"].contains("3"));
    CHECK(payload["diagonal_betti"]["3"].size() == 6); // degrees 2..7
}

TEST_CASE("--parallel yields identical results") {
    auto serial = run_cli("brute --n 2 --kmax 5");
    auto parallel = run_cli("brute --n 2 --kmax 5 --parallel");
    CHECK(serial.exit_code == 0);
    CHECK(parallel.exit_code == 0);
    CHECK(parse_payload(serial) == parse_payload(parallel));
}
