#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "twocover/commands.hpp"
#include "twocover/json_io.hpp"

using namespace twocover;
using cli::json;
using arith::HomPoly3;
using arith::Rational;
using arith::UniPoly;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
  json doc;
};

RunResult run(std::vector<std::string> args, const std::string& input_doc = "")
{
  std::ostringstream out, err;
  if (!input_doc.empty()) {
    // Use a temp file to feed the document.
    std::string path = "cli_input_tmp.json";
    {
      std::ofstream f(path);
      f << input_doc;
    }
    args.push_back("--input");
    args.push_back(path);
  }
  int code = cli::run_command(args, out, err);
  RunResult r{code, out.str(), err.str(), json()};
  if (!r.out.empty()) {
    json parsed = json::parse(r.out, nullptr, false);
    if (!parsed.is_discarded()) r.doc = parsed;
  }
  return r;
}

}  // namespace

#include <fstream>

TEST_CASE("polynomial parsing")
{
  HomPoly3 F = cli::parse_hompoly3("x0^2 + x1*x2");
  HomPoly3 expect = HomPoly3::variable(0) * HomPoly3::variable(0) +
                    HomPoly3::variable(1) * HomPoly3::variable(2);
  CHECK(F == expect);

  UniPoly p = cli::parse_unipoly("3/2*x - 7");
  CHECK(p.coeff(1) == Rational(3, 2));
  CHECK(p.coeff(0) == Rational(-7));

  CHECK_THROWS_AS(cli::parse_unipoly("x0 + x1 + "), cli::InputError);
  try {
    cli::parse_unipoly("x + ");
  } catch (const cli::InputError& e) {
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }

  // Inhomogeneous input for a homogeneous target.
  CHECK_THROWS_AS(cli::parse_hompoly3("x0^2 + x1"), cli::InputError);
  // No decimals.
  CHECK_THROWS_AS(cli::parse_unipoly("1.5*x"), cli::InputError);
  // Unknown variable.
  CHECK_THROWS_AS(cli::parse_unipoly("y + 1"), cli::InputError);
  // Parentheses and unary minus.
  CHECK(cli::parse_unipoly("-(x - 1)*(x + 1)") ==
        cli::parse_unipoly("1 - x^2"));
}

TEST_CASE("parse/render round trip property")
{
  std::mt19937_64 eng(123456);
  std::uniform_int_distribution<int> small(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> expo(0, 6);

  for (int trial = 0; trial < 500; ++trial) {
    // Random trivariate polynomial of degree <= 6, homogenized by
    // construction so it can flow through the canonical renderer.
    int d = expo(eng);
    std::map<arith::Exponents, Rational> terms;
    for (int t = 0; t < 4; ++t) {
      int i = std::uniform_int_distribution<int>(0, d)(eng);
      int j = std::uniform_int_distribution<int>(0, d - i)(eng);
      Rational c(small(eng), den(eng));
      if (c != 0) terms[{i, j, d - i - j}] = c;
    }
    HomPoly3 p = terms.empty() ? HomPoly3() : HomPoly3(d, std::move(terms));
    HomPoly3 back = cli::parse_hompoly3(p.to_string());
    CHECK(back == p);
  }

  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Rational> c(expo(eng) + 1);
    for (auto& q : c) q = Rational(small(eng), den(eng));
    UniPoly p{std::move(c)};
    CHECK(cli::parse_unipoly(p.to_string()) == p);
  }
}

TEST_CASE("split-p1 subcommand")
{
  // G = x^3 * J.
  auto r = run({"split-p1"},
               R"({"matrix": [["0", "x^3"], ["x^3", "0"]]})");
  CHECK(r.code == 0);
  REQUIRE(r.doc.is_object());
  CHECK(r.doc["e"] == json::array({3, 3}));
  CHECK(r.doc["verified"] == true);
  CHECK(r.doc.contains("Ax"));
  CHECK(r.doc.contains("Ay"));

  // Laurent entry via num/den.
  auto r2 = run({"split-p1"},
                R"({"matrix": [["x^3", "0"], ["0", {"num": "1", "den": "x"}]]})");
  CHECK(r2.code == 0);
  CHECK(r2.doc["e"] == json::array({3, -1}));

  // Malformed input exits 1, not 0 or 2.
  auto bad = run({"split-p1"}, R"({"matrix": [["x + ", "0"], ["0", "x"]]})");
  CHECK(bad.code == 1);
  CHECK(bad.err.find("error") != std::string::npos);

  auto singular = run({"split-p1"}, R"({"matrix": [["x", "x"], ["x", "x"]]})");
  CHECK(singular.code == 1);

  auto missing = run({"split-p1"}, R"({"nothing": 1})");
  CHECK(missing.code == 1);

  auto garbage = run({"split-p1"}, "not json at all");
  CHECK(garbage.code == 1);
}

TEST_CASE("trivialize-a1 subcommand")
{
  std::string doc = R"({
    "opens": ["x", "x - 1"],
    "base_transitions": [
      [["1", "0"], ["0", "1"]],
      [["1", {"num": "0 - 1", "den": "x^2 - x"}], ["0", "1"]]
    ]
  })";
  auto r = run({"trivialize-a1"}, doc);
  CHECK(r.code == 0);
  REQUIRE(r.doc.contains("frames"));
  CHECK(r.doc["frames"].size() == 2);

  // Opens failing to cover exit 1.
  auto bad = run({"trivialize-a1"},
                 R"({"opens": ["x"], "base_transitions": [[["1","0"],["0","1"]]]})");
  CHECK(bad.code == 1);
}

TEST_CASE("pushforward subcommand")
{
  auto r = run({"pushforward"},
               R"({"cover": "p1-two-point", "exponents": [3]})");
  CHECK(r.code == 0);
  CHECK(r.doc["field"] == "p1");
  CHECK(r.doc["rep"]["normal"] == true);

  auto r2 = run({"pushforward"}, R"({"cover": "conic", "exponents": [1, -1]})");
  CHECK(r2.code == 0);
  CHECK(r2.doc["field"] == "p2");
  CHECK(r2.doc["rep"]["charts"].size() == 3);

  auto bad = run({"pushforward"}, R"({"cover": "conic", "exponents": []})");
  CHECK(bad.code == 1);
}

TEST_CASE("pushforward output feeds validate")
{
  for (std::string cover : {"p1-two-point", "conic"}) {
    auto r = run({"pushforward"},
                 R"({"cover": ")" + cover + R"(", "exponents": [2]})");
    REQUIRE(r.code == 0);
    json doc{{"field", r.doc["field"]}, {"rep", r.doc["rep"]}};
    auto v = run({"validate"}, doc.dump());
    CHECK(v.code == 0);
    CHECK(v.doc["valid"] == true);
  }
}

TEST_CASE("restrict-line subcommand")
{
  auto r = run({"restrict-line"},
               R"({"cover": "conic", "n": 2, "line": {"form": ["1", "1", "1"]}})");
  CHECK(r.code == 0);
  CHECK((r.doc["kind"] == "p1" || r.doc["kind"] == "affine"));
}

TEST_CASE("jumping-scan subcommand")
{
  std::string doc = R"({
    "cover": "conic",
    "n": 5,
    "tangent_b": ["1/2", "-1/2", "3"],
    "random_transversal": 10
  })";
  auto r = run({"jumping-scan", "--seed", "42", "--jobs", "2"}, doc);
  CHECK(r.code == 0);
  REQUIRE(r.doc.contains("rows"));
  REQUIRE(r.doc["rows"].size() == 13);
  int flagged = 0;
  for (const auto& row : r.doc["rows"])
    if (row["jumping"].get<bool>()) {
      ++flagged;
      CHECK(row["e"] == json::array({4, 0}));
    }
  CHECK(flagged == 3);

  // Reproducibility under the same seed.
  auto r2 = run({"jumping-scan", "--seed", "42"}, doc);
  CHECK(r2.doc == r.doc);

  // Different seed changes the random lines but not the flag count.
  auto r3 = run({"jumping-scan", "--seed", "43"}, doc);
  int flagged3 = 0;
  for (const auto& row : r3.doc["rows"])
    if (row["jumping"].get<bool>()) ++flagged3;
  CHECK(flagged3 == 3);

  auto bad = run({"jumping-scan"}, R"({"cover": "conic", "n": 2})");
  CHECK(bad.code == 1);
}

TEST_CASE("sections subcommand")
{
  auto r = run({"sections", "--degree-bound", "4"},
               R"({"bidegree": [4, 2]})");
  CHECK(r.code == 0);
  CHECK(r.doc["dimension"] == 15);
  CHECK(r.doc["saturated"] == true);
  CHECK(r.doc["basis"].size() == 15);

  auto r2 = run({"sections", "--degree-bound", "2"}, R"({"bidegree": [0, 0]})");
  CHECK(r2.doc["dimension"] == 1);
}

TEST_CASE("branch-decompose subcommand")
{
  auto r = run({"branch-decompose"}, R"({"F": "x0^2 + x1*x2", "f": "x1"})");
  CHECK(r.code == 0);
  CHECK(r.doc["found"] == true);

  auto r2 = run({"branch-decompose"}, R"({"F": "x0^2 + x1*x2", "f": "x0"})");
  CHECK(r2.code == 0);
  CHECK(r2.doc["found"] == false);

  auto bad = run({"branch-decompose"}, R"({"F": "x0^2 + x1*x2", "f": "x0^2"})");
  CHECK(bad.code == 1);
}

TEST_CASE("validate subcommand")
{
  std::string good = R"({
    "field": "p1",
    "rep": {
      "charts": [{"h": "1", "infinity_removed": true},
                 {"h": "x", "infinity_removed": false}],
      "xi": [["1", {"num": "1", "den": "x"}], ["x", "1"]],
      "F": ["x", {"num": "1", "den": "x"}],
      "G": [
        [[["1","0"],["0","1"]], [["1","0"],["0","1"]]],
        [[["1","0"],["0","1"]], [["1","0"],["0","1"]]]
      ],
      "M": [{"a0": "0", "a1": "1", "a2": "x"},
            {"a0": "0", "a1": {"num": "1", "den": "x"}, "a2": "1"}],
      "good": false,
      "normal": false
    }
  })";
  auto r = run({"validate"}, good);
  CHECK(r.code == 0);
  CHECK(r.doc["valid"] == true);

  // Perturbed branch function: reported defect, exit 1.
  std::string broken = good;
  auto pos = broken.find("\"a2\": \"x\"");
  broken.replace(pos, 9, "\"a2\": \"x + 1\"");
  auto r2 = run({"validate"}, broken);
  CHECK(r2.code == 1);
  CHECK(r2.doc["valid"] == false);
  CHECK(r2.doc["defects"].size() > 0);
}

TEST_CASE("output formats and files")
{
  auto text = run({"split-p1", "--format", "text"},
                  R"({"matrix": [["x", "0"], ["0", "1"]]})");
  CHECK(text.code == 0);
  CHECK(text.out.find("e:") != std::string::npos);

  auto to_file = run({"split-p1", "--output", "cli_out_tmp.json"},
                     R"({"matrix": [["x", "0"], ["0", "1"]]})");
  CHECK(to_file.code == 0);
  std::ifstream f("cli_out_tmp.json");
  REQUIRE(f.good());
  json doc = json::parse(f);
  CHECK(doc["e"] == json::array({1, 0}));

  // Unknown flags and missing subcommands are input errors.
  std::ostringstream out, err;
  CHECK(cli::run_command({"no-such-command"}, out, err) == 1);
  CHECK(cli::run_command({}, out, err) == 1);
}
