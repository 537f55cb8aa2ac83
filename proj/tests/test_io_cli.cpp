#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "freearr/cli.hpp"
#include "freearr/errors.hpp"
#include "support.hpp"

using namespace freearr;
using namespace testsupport;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = freearr::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::vector<std::string> fixture_names() {
    std::vector<std::string> names;
    for (const auto& entry : std::filesystem::directory_iterator(FREEARR_FIXTURE_DIR))
        if (entry.path().extension() == ".arr") names.push_back(entry.path().filename().string());
    std::sort(names.begin(), names.end());
    return names;
}

void expect_parse_error(const std::string& text, std::size_t line, std::size_t column) {
    CAPTURE(text);
    try {
        parse_arrangement(text);
        FAIL("no ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == line);
        CHECK(e.column() == column);
    }
}

}  // namespace

TEST_CASE("parse errors carry line and column") {
    expect_parse_error("line 1 0 0\n", 1, 1);
    expect_parse_error("field Q\nline 1 0\n", 2, 9);
    expect_parse_error("field Q\nline 1 0 x\n", 2, 10);
    expect_parse_error("field Q\nline 0 0 1\n", 2, 6);
    expect_parse_error("field Q\nline 1 0 0\nline 2 0 0\n", 3, 1);
    expect_parse_error("field Q\nfoo 1 2 3\n", 2, 1);
    expect_parse_error("field F 4\n", 1, 9);
    expect_parse_error("field Q sqrt 4\n", 1, 14);
    expect_parse_error("# header comment\n\nfield Q\n  line 1 2\n", 4, 11);
}

TEST_CASE("parsing accepts comments, blank lines and all field forms") {
    const Arrangement a = parse_arrangement("# c\nfield Q\n\nline 2 4 -6/4  # trailing\n");
    REQUIRE(a.size() == 1);
    CHECK(a.line(0).to_string() == "1 2 -3/4");
    CHECK(parse_arrangement("field F 7\nline 3 0 1\n").line(0).to_string() == "1 0 5");
    CHECK(parse_arrangement("field Q sqrt 2\nline r 1 0\n").field().radicand() == 2);
    const Multiarrangement m = parse_multiarrangement("field Q\nmline 1 0 2\nmline 0 1 3\n");
    CHECK(m.total() == 5);
}

TEST_CASE("every fixture round-trips") {
    const auto names = fixture_names();
    CHECK(names.size() == 16);
    for (const auto& name : names) {
        CAPTURE(name);
        const Arrangement a = load_fixture(name);
        const Arrangement b = parse_arrangement(serialize(a));
        CHECK(b.same_lines(a));
        CHECK(b.lines() == a.lines());
        CHECK(b.char_poly() == a.char_poly());
        CHECK(serialize(b) == serialize(a));
    }
    const Multiarrangement m = ziegler_restriction(load_fixture("grid12.arr"), RestrictionTarget::infinity());
    const Multiarrangement back = parse_multiarrangement(serialize(m));
    CHECK(back.to_string() == m.to_string());
}

TEST_CASE("random arrangements round-trip") {
    std::mt19937_64 rng(4);
    for (const Field& f : {Field::rationals(), Field::prime(5), Field::quadratic(3)})
        for (int k = 0; k < 60; ++k) {
            const Arrangement a = random_arrangement(rng, f, 8);
            CHECK(parse_arrangement(serialize(a)).lines() == a.lines());
        }
}

TEST_CASE("cli text examples") {
    const Run chi = invoke({"chi", fixture("grid12.arr")});
    CHECK(chi.code == 0);
    CHECK(first_line(chi.out) == "t^2 - 12 t + 35 = (t-5)(t-7)");

    const Run pent = invoke({"free", fixture("pentagon.arr")});
    CHECK(pent.code == 0);
    CHECK(first_line(pent.out) == "free, exp = (5,5)");

    const Run fq = invoke({"fq-count", fixture("f3_three.arr")});
    CHECK(fq.code == 0);
    CHECK(first_line(fq.out) == "complement = 2, chi(3) = 2, OK");

    CHECK(first_line(invoke({"free", fixture("sqrt2_slopes.arr")}).out) == "not free, b2 = 13 > d1 d2 = 7");
    CHECK(first_line(invoke({"chi", fixture("pencil_5.arr")}).out) == "t^2 - 5 t + 4 = (t-1)(t-4)");
    CHECK(first_line(invoke({"chi", fixture("pentagon.arr")}).out) == "t^2 - 10 t + 25 = (t-5)^2");
    CHECK(first_line(invoke({"exponents", fixture("grid12.arr")}).out) == "exp = (5,7)");
    CHECK(first_line(invoke({"free", "--target", "member:3", fixture("grid12.arr")}).out) == "free, exp = (5,7)");
    CHECK(invoke({"verify", fixture("grid12.arr")}).code == 0);
    CHECK(invoke({"spectrum", fixture("f3_pencil.arr")}).code == 0);
    CHECK(invoke({"fq-spectrum", fixture("f3_pencil.arr")}).code == 0);
    CHECK(invoke({"roots", fixture("sqrt2_slopes_rational.arr")}).code == 0);
    CHECK(invoke({"order", "--sub", "0,1", fixture("grid12.arr")}).code == 0);
    CHECK(invoke({"criteria", "--sub", "0,1", fixture("grid12.arr")}).code == 0);
    CHECK(invoke({"pair", fixture("grid12.arr"), "0"}).code == 0);
    CHECK(first_line(invoke({"fq-count", "--prime", "5", fixture("grid12.arr")}).out).starts_with("complement = "));
}

TEST_CASE("cli exit codes") {
    const Run fq = invoke({"fq-count", fixture("grid12.arr")});
    CHECK(fq.code == 1);
    CHECK(fq.err.find("prime field") != std::string::npos);

    CHECK(invoke({}).code == 1);
    CHECK(invoke({"bogus"}).code == 1);
    CHECK(invoke({"chi", "/nonexistent/file.arr"}).code == 1);
    CHECK(invoke({"pair", fixture("grid12.arr"), "99"}).code == 1);
    CHECK(invoke({"free", "--target", "member:x", fixture("grid12.arr")}).code == 1);
    CHECK(invoke({"chi", "--format", "xml", fixture("grid12.arr")}).code == 1);

    const auto dir = std::filesystem::temp_directory_path() / "freearr_cli_test";
    std::filesystem::create_directories(dir);
    const auto bad = dir / "bad.arr";
    std::ofstream(bad) << "field Q\nline 1 0 x\n";
    const Run parse = invoke({"chi", bad.string()});
    CHECK(parse.code == 1);
    CHECK(parse.err.find(":2:10:") != std::string::npos);
}

TEST_CASE("verify detects a corrupted b2 on every fixture") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        CHECK(invoke({"verify", fixture(name)}).code == 0);
        for (const char* delta : {"1", "-1", "3"}) {
            const Run r = invoke({"verify", "--corrupt-b2", delta, fixture(name)});
            CHECK(r.code == 2);
        }
    }
}

TEST_CASE("json lines") {
    const Run chi = invoke({"chi", "--format", "json", fixture("grid12.arr")});
    const auto j = nlohmann::json::parse(first_line(chi.out));
    CHECK(j["command"] == "chi");
    CHECK(j["n"] == 12);
    CHECK(j["b2"] == 35);
    CHECK(j["factored"] == "(t-5)(t-7)");

    const auto fr = nlohmann::json::parse(first_line(invoke({"free", "--format", "json", fixture("pentagon.arr")}).out));
    CHECK(fr["verdict"] == "free");
    CHECK(fr["d1"] == 5);
    CHECK(fr["d2"] == 5);

    const Run crit = invoke({"criteria", "--format", "json", fixture("f3_three.arr")});
    std::istringstream lines(crit.out);
    std::string line;
    std::size_t count = 0;
    while (std::getline(lines, line)) {
        const auto e = nlohmann::json::parse(line);
        CHECK(e.contains("criterion"));
        CHECK(e.contains("applicable"));
        CHECK(e.contains("conclusion"));
        CHECK(e["evidence"].is_object());
        ++count;
    }
    CHECK(count >= 8);

    const auto fq = nlohmann::json::parse(first_line(invoke({"fq-count", "--format", "json", fixture("f3_three.arr")}).out));
    CHECK(fq["complement"] == 2);
    CHECK(fq["chi_p"] == 2);
    CHECK(fq["ok"] == true);
}
