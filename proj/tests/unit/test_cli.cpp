#include "cantor/cli.hpp"
#include "cantor/numerics.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace cantor;
using nlohmann::ordered_json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) {
    std::ifstream in(std::string(CANTOR_GOLDEN_DIR) + "/" + name, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string two = R"({"preperiod":[],"period":[2],"cap":2})";

// Rebuilds the CSV table from JSON and compares it cell by cell.
void check_round_trip(std::vector<std::string> args) {
    const Result json = invoke(args);
    REQUIRE(json.code == 0);
    args.insert(args.begin(), {"--format", "csv"});
    const Result csv = invoke(args);
    REQUIRE(csv.code == 0);
    CHECK(csv.out == cli::to_csv(ordered_json::parse(json.out)));

    const auto table = cli::parse_csv(csv.out);
    REQUIRE(table.size() >= 2);
    const ordered_json doc = ordered_json::parse(json.out);
    ordered_json rest = doc;
    rest.erase("rows");
    const auto shared = cli::flatten(rest);
    const std::size_t n_rows = doc.contains("rows") ? doc["rows"].size() : 1;
    REQUIRE(table.size() == n_rows + 1);
    for (std::size_t r = 0; r < n_rows; ++r) {
        auto fields = shared;
        if (doc.contains("rows"))
            for (const auto& kv : cli::flatten(doc["rows"][r])) fields.push_back(kv);
        REQUIRE(table[r + 1].size() == fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c) {
            CHECK(table[0][c] == fields[c].first);
            CHECK(table[r + 1][c] == fields[c].second);
        }
    }
}

}  // namespace

TEST_CASE("golden outputs") {
    CHECK(invoke({"dim", "--moran", "--q", "4", "--u", "0", "--tol", "1e-9"}).out == golden("dim_moran.json"));
    CHECK(invoke({"integral", "--spec", two, "--both", "--depth", "12"}).out == golden("integral_both.json"));
    CHECK(invoke({"decode", "--polarity", "alternating", "--spec", two, "--digits", "0,1|0,1"}).out ==
          golden("decode_alternating.json"));
}

TEST_CASE("golden values carry the expected numbers") {
    const auto dim = ordered_json::parse(golden("dim_moran.json"));
    CHECK(Rational::parse(dim["alpha_lo"].get<std::string>()) <= Rational::parse("0.4395732108"));
    CHECK(Rational::parse(dim["alpha_hi"].get<std::string>()) >= Rational::parse("0.4395732108"));
    const auto integral = ordered_json::parse(golden("integral_both.json"));
    CHECK(integral["closed_form"] == "1/2");
    CHECK(integral["discrepancy"] == true);
    const auto dec = ordered_json::parse(golden("decode_alternating.json"));
    CHECK(dec["lo"] == "1/3");
    CHECK(dec["hi"] == "1/3");
}

TEST_CASE("output is deterministic") {
    const std::vector<std::string> args{"graph-data", "--target", "h", "--q", "5", "--u", "0", "--depth", "2"};
    CHECK(invoke(args).out == invoke(args).out);
}

TEST_CASE("JSON and CSV encode the same data") {
    check_round_trip({"decode", "--polarity", "alternating", "--spec", two, "--digits", "0,1|0,1"});
    check_round_trip({"integral", "--spec", two, "--both", "--depth", "8"});
    check_round_trip({"dim", "--moran", "--q", "4", "--u", "0"});
    check_round_trip({"count-squares", "--q", "4", "--u", "0", "--m", "1", "--m-hi", "4"});
    check_round_trip({"graph-data", "--target", "salem", "--matrix", R"({"columns":[["1/4","3/4"]]})", "--depth", "3"});
    check_round_trip({"encode", "--spec", R"({"preperiod":[],"period":[2,3],"cap":3})", "--x", "-13/30"});
}

TEST_CASE("graph data row counts") {
    auto rows = [](std::vector<std::string> args) {
        const Result r = invoke(args);
        REQUIRE(r.code == 0);
        return ordered_json::parse(r.out)["rows"].size();
    };
    CHECK(rows({"graph-data", "--target", "h", "--q", "5", "--u", "0", "--depth", "2"}) == 16);
    CHECK(rows({"graph-data", "--target", "salem", "--matrix", R"({"columns":[["1/4","3/4"]]})", "--depth", "3"}) == 8);
    CHECK(rows({"graph-data", "--target", "f", "--spec", two, "--depth", "2"}) == 4);
}

TEST_CASE("exit codes") {
    CHECK(invoke({}).code == cli::exit_input);
    CHECK(invoke({"nonsense"}).code == cli::exit_input);
    CHECK(invoke({"decode", "--unknown-flag"}).code == cli::exit_input);
    CHECK(invoke({"decode", "--spec", two, "--digits", "7"}).code == cli::exit_input);
    CHECK(invoke({"decode", "--spec-file", "/nonexistent", "--digits", "1"}).code == cli::exit_input);
    CHECK(invoke({"--help"}).code == cli::exit_ok);
    CHECK(invoke({"dim", "--q", "4", "--u", "0"}).code == cli::exit_input);
    const Result bad = invoke({"h-map", "--q", "2", "--u", "0", "--alphas", "|1"});
    CHECK(bad.code == cli::exit_input);
    CHECK_FALSE(bad.err.empty());
}

TEST_CASE("resource bound comes from the environment") {
    ::setenv("CANTOR_ATLAS_MAX_CELLS", "10", 1);
    CHECK(invoke({"count-squares", "--q", "4", "--u", "0", "--m", "5"}).code == cli::exit_resource);
    ::unsetenv("CANTOR_ATLAS_MAX_CELLS");
    CHECK(invoke({"count-squares", "--q", "4", "--u", "0", "--m", "5"}).code == cli::exit_ok);
}

TEST_CASE("CSV parser handles quoting") {
    const auto t = cli::parse_csv("a,\"b,c\",\"d\"\"e\"\n1,2,3\n");
    REQUIRE(t.size() == 2);
    CHECK(t[0] == std::vector<std::string>{"a", "b,c", "d\"e"});
    CHECK_THROWS_AS(cli::parse_csv("\"open"), std::invalid_argument);
}
