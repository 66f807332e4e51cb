#include "doctest.h"

#include "gaussdens/cli.hpp"
#include "gaussdens/errors.hpp"
#include "gaussdens/estimator.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gaussdens;
using gaussdens::cli::Command;
using gaussdens::cli::Format;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(Command cmd) {
    std::ostringstream out, err;
    const int code = cli::run(cmd, out, err);
    return {code, out.str(), err.str()};
}

Command make(const char* sub, const char* expr = "") {
    Command c;
    c.subcommand = sub;
    c.expression = expr;
    return c;
}

std::vector<std::vector<std::string>> read_csv_lines(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        bool quoted = false;
        for (const char ch : line) {
            if (ch == '"') quoted = !quoted;
            else if (ch == ',' && !quoted) {
                fields.push_back(field);
                field.clear();
            } else
                field += ch;
        }
        fields.push_back(field);
        rows.push_back(fields);
    }
    return rows;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / "gaussdens_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("exact prints the value and its trace") {
    const Result r = run(make("exact", "lattice(2,3)"));
    CHECK(r.code == 0);
    CHECK(r.out.find("1/6") != std::string::npos);
    CHECK(r.out.find("product-rule, multiples-rule") != std::string::npos);
}

TEST_CASE("exact as csv and json") {
    Command c = make("exact", "inter(lattice(2,3), lattice(3,2))");
    c.format = Format::csv;
    const auto rows = read_csv_lines(run(c).out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"expression", "kind", "value", "numerator", "denominator", "trace"});
    CHECK(rows[1][1] == "rational");
    CHECK(rows[1][3] == "1");
    CHECK(rows[1][4] == "36");

    c.format = Format::json;
    const auto j = nlohmann::json::parse(run(c).out);
    CHECK(j["kind"] == "rational");
    CHECK(j["numerator"] == "1");
    CHECK(j["denominator"] == "36");
    CHECK(j["trace"].is_array());
    CHECK(std::stod(j["value"].get<std::string>()) == doctest::Approx(1.0 / 36.0));
}

TEST_CASE("compare reports the discrepancy") {
    Command c = make("compare", "dilate(2,5,P2)");
    CHECK(run(c).out.find("discrepancy") != std::string::npos);
    c.format = Format::csv;
    const Result r = run(c);
    CHECK(r.code == 0);
    const auto rows = read_csv_lines(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][6] == "discrepancy");
    CHECK(std::stod(rows[1][2]) == doctest::Approx(0.1));
    CHECK(std::stod(rows[1][6]) <= 5e-3);
    CHECK(rows[1][7] == "true");
}

TEST_CASE("sweep of a lattice follows (pq)^-s") {
    Command c = make("sweep", "lattice(2,2)");
    c.out = (scratch_dir() / "sweep.csv").string();
    CHECK(run(c).code == 0);
    const auto rows = read_csv_lines(slurp(c.out));
    REQUIRE(rows.size() == cli::dense_schedule().size() + 1);
    CHECK(rows[0] == std::vector<std::string>{"s", "value", "tail_bound", "terms_used", "method"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double s = std::stod(rows[i][0]);
        CHECK(std::fabs(std::stod(rows[i][1]) - std::pow(4.0, -s)) <= 1e-12);
    }
}

TEST_CASE("estimate writes a points file and a summary file") {
    Command c = make("estimate", "lattice(2,3)");
    c.out = (scratch_dir() / "est.csv").string();
    CHECK(run(c).code == 0);
    const auto pts = read_csv_lines(slurp(c.out));
    const auto sum = read_csv_lines(slurp(cli::summary_path(c.out)));
    CHECK(pts.size() == 8);
    CHECK(pts[0][0] == "s");
    REQUIRE(sum.size() == 2);
    CHECK(sum[0][1] == "extrapolated");
    CHECK(std::fabs(std::stod(sum[1][1]) - 1.0 / 6.0) <= 5e-3);
    CHECK(cli::summary_path("a/b.csv") == "a/b.summary.csv");
    CHECK(cli::summary_path("report") == "report.summary.csv");

    c.out.clear();
    c.format = Format::json;
    const auto j = nlohmann::json::parse(run(c).out);
    CHECK(j["points"].size() == 7);
    CHECK(j["exact"]["denominator"] == "6");
}

TEST_CASE("exit codes") {
    CHECK(run(make("exact", "lattice(2,")).code == 2);
    CHECK(run(make("exact", "delim(pow(1,2), pow(1,0.5))")).code == 2);
    CHECK(run(make("exact", "")).code == 2);
    CHECK(run(make("frobnicate", "P2")).code == 2);

    Command strict = make("estimate", "delim(const(1),exp(1,2))");
    strict.strict = true;
    CHECK(run(strict).code == 3);
    strict.strict = false;
    CHECK(run(strict).code == 0);

    Command big = make("oracle", "P2");
    big.side = 20000;
    CHECK(run(big).code == 1);

    Command bad_schedule = make("estimate", "P2");
    bad_schedule.schedule = std::vector<double>{1.5, 1.4};
    CHECK(run(bad_schedule).code == 2);

    const Result parse = run(make("exact", "union(P2,\n  bogus)"));
    CHECK(parse.err.find("line 2, column 3") != std::string::npos);
}

TEST_CASE("oracle command") {
    Command c = make("oracle", "translate(lattice(2,3),1,4)");
    c.format = Format::csv;
    const Result r = run(c);
    CHECK(r.code == 0);
    const auto rows = read_csv_lines(r.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == std::vector<std::string>{"check", "s", "N", "value", "reference", "difference", "pass"});
    for (std::size_t i = 1; i <= 4; ++i) CHECK(rows[i][6] == "true");
    CHECK(rows[5][0] == "counting");
}

TEST_CASE("schedules, formats and settings") {
    CHECK(cli::parse_schedule("0..6") == geometric_schedule(0, 6));
    CHECK(cli::parse_schedule("k3..k9") == geometric_schedule(3, 9));
    CHECK(cli::parse_schedule("1.5, 1.25,1/8") == std::vector<double>{1.5, 1.25, 0.125});
    CHECK_THROWS_AS(cli::parse_schedule("6..0"), ValidationError);
    CHECK_THROWS_AS(cli::parse_schedule("a..b"), ValidationError);
    CHECK(cli::parse_format("json") == Format::json);
    CHECK_THROWS_AS(cli::parse_format("xml"), ValidationError);

    const auto path = scratch_dir() / "run.conf";
    {
        std::ofstream f(path);
        f << "# estimator settings\n\nschedule = 3..9\neps=1e-7\nbudget=5000000\ndegree = 3\nformat=csv\nstrict=true\n"
             "workers=2\n";
    }
    Command c;
    cli::apply_config_file(c, path.string());
    CHECK(c.schedule == geometric_schedule(3, 9));
    CHECK(*c.eps == doctest::Approx(1e-7));
    CHECK(*c.budget == 5000000);
    CHECK(*c.degree == 3);
    CHECK(*c.format == Format::csv);
    CHECK(c.strict);
    CHECK(c.workers == 2);
    CHECK_THROWS_AS(cli::apply_setting(c, "colour", "red"), ValidationError);
    CHECK_THROWS_AS(cli::apply_setting(c, "budget", "-4"), ValidationError);
    CHECK_THROWS_AS(cli::apply_config_file(c, (scratch_dir() / "missing.conf").string()), ValidationError);
}

TEST_CASE("check output is identical across worker counts") {
    Command a = make("check");
    a.format = Format::csv;
    a.exact_only = true;
    a.workers = 1;
    Command b = a;
    b.workers = 4;
    const Result ra = run(a), rb = run(b), ra2 = run(a);
    CHECK(ra.code == 0);
    CHECK(ra.out == rb.out);
    CHECK(ra.out == ra2.out);
    CHECK(ra.out.rfind("check,subject,expected,observed,tolerance,pass\n", 0) == 0);
}
