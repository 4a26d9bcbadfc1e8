#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "ddcech/bifiltrations.hpp"
#include "ddcech/errors.hpp"
#include "ddcech/homology.hpp"
#include "ddcech/io.hpp"
#include "ddcech/suites.hpp"
#include "fixtures.hpp"

using namespace ddcech;
namespace fs = std::filesystem;

namespace {

Dataset parse(const std::string& text, InputKind kind = InputKind::kPoints,
              const std::optional<std::string>& weights = std::nullopt) {
  std::istringstream in(text);
  return read_dataset(in, kind, weights);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ddcech_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string data(const std::string& file) { return std::string(DDCECH_TEST_DATA) + "/" + file; }

struct Run {
  int code;
  std::string out;
};

// Runs the CLI with stdout and stderr captured in one file.
Run cli(const std::string& args) {
  static int counter = 0;
  const fs::path log = fs::temp_directory_path() / ("ddcech_cli_" + std::to_string(counter++) + ".log");
  const std::string cmd = std::string("\"") + DDCECH_CLI + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  Run r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(log)};
  fs::remove(log);
  return r;
}

std::string firep_text(const BifilteredComplex& k, std::size_t degree) {
  std::ostringstream os;
  write_firep(os, k, degree);
  return os.str();
}

}  // namespace

TEST_CASE("csv points with labels and default weights") {
  const Dataset d = parse("label,x\n# comment\na,0\n\nb,1\nc,3\n");
  REQUIRE(d.space.size() == 3);
  CHECK(d.space.label(2) == "c");
  CHECK(d.space(0, 2) == doctest::Approx(3.0));
  CHECK(d.measure.weights() == std::vector<double>{1, 1, 1});
}

TEST_CASE("csv weights from column w or a named column") {
  const Dataset d = parse("x,y,w\n0,0,2\n3,4,0.5\n");
  CHECK(d.space(0, 1) == doctest::Approx(5.0));
  CHECK(d.measure.weights() == std::vector<double>{2, 0.5});
  const Dataset e = parse("x,mass\n0,1\n1,3\n", InputKind::kPoints, "mass");
  CHECK(e.measure.weights() == std::vector<double>{1, 3});
}

TEST_CASE("csv matrix input") {
  const Dataset d = read_dataset_file(data("l3_matrix.csv"), InputKind::kMatrix, "mass");
  REQUIRE(d.space.size() == 3);
  CHECK(d.space(0, 2) == 3.0);
  CHECK(d.measure.weights() == std::vector<double>{1, 2, 0});
  CHECK(d.space.label(1) == "b");
}

TEST_CASE("csv errors carry line numbers") {
  SUBCASE("missing named weight column") {
    CHECK_THROWS_AS(parse("x\n0\n", InputKind::kPoints, std::string("w")), ParseError);
  }
  SUBCASE("bad number") {
    try {
      parse("x,y\n0,0\n1,zz\n");
      FAIL("no throw");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("wrong field count") { CHECK_THROWS_AS(parse("x,y\n0,0,1\n"), ParseError); }
  SUBCASE("no x column") { CHECK_THROWS_AS(parse("a,b\n0,0\n"), ParseError); }
  SUBCASE("asymmetric matrix") {
    CHECK_THROWS_AS(parse("a,b\n0,1\n2,0\n", InputKind::kMatrix), AsymmetryError);
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(read_dataset_file("/nonexistent.csv", InputKind::kPoints), Error); }
}

TEST_CASE("number formatting round trips") {
  for (double x : {0.0, 1.0, 0.1, 1.0 / 3.0, std::sqrt(2.0) / 2.0, 1e-300, 12345.678}) {
    CHECK(parse_number(format_number(x), 1) == x);
  }
  CHECK(format_number(kInf) == "inf");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(0.5) == "0.5");
  CHECK(parse_number("inf", 1) == kInf);
  CHECK_THROWS_AS(parse_number("1x", 4), ParseError);
  CHECK(parse_number_list("0,0.5,1") == std::vector<double>{0, 0.5, 1});
}

TEST_CASE("bifiltration artifact round trip") {
  const BifilteredComplex k = ambient_dc_planar(fixtures::square4(), DiscreteMeasure({1, 1, 1, 1}));
  std::ostringstream os;
  write_bifiltration(os, k);
  std::istringstream in(os.str());
  const BifilteredComplex back = read_bifiltration(in);
  CHECK(back == k);
  std::ostringstream again;
  write_bifiltration(again, back);
  CHECK(again.str() == os.str());
}

TEST_CASE("bifiltration artifact of the line") {
  const BifilteredComplex k = intrinsic_dc(fixtures::line3(), DiscreteMeasure({1, 1, 1}));
  std::ostringstream os;
  write_bifiltration(os, k);
  CHECK(os.str() ==
        "ddcech-bifiltration 1\n"
        "dim_cap 3\n"
        "universe 0 1 2\n"
        "simplices 7\n"
        "0 | 0 1 ; 1 2 ; 2 3\n"
        "1 | 0 1 ; 1 2 ; 2 3\n"
        "2 | 0 1 ; 2 3\n"
        "0 1 | 1 2 ; 2 3\n"
        "0 2 | 2 3\n"
        "1 2 | 2 3\n"
        "0 1 2 | 2 3\n");
}

TEST_CASE("bifiltration artifact errors") {
  auto read = [](const std::string& text) {
    std::istringstream in(text);
    return read_bifiltration(in);
  };
  CHECK_THROWS_AS(read("bogus 1\n"), ParseError);
  CHECK_THROWS_AS(read("ddcech-bifiltration 1\ndim_cap 3\nuniverse 0\nsimplices 2\n0 | 0 1\n"), ParseError);
  // Staircase not increasing.
  CHECK_THROWS_AS(read("ddcech-bifiltration 1\ndim_cap 3\nuniverse 0\nsimplices 1\n0 | 1 1 ; 0 2\n"), Error);
  // Edge present before its vertex.
  CHECK_THROWS_AS(
      read("ddcech-bifiltration 1\ndim_cap 3\nuniverse 0 1\nsimplices 3\n0 | 1 1\n1 | 0 1\n0 1 | 0 1\n"),
      ParseError);
}

TEST_CASE("hilbert csv writes every cell") {
  const BifilteredComplex k = intrinsic_dc(fixtures::square4(), DiscreteMeasure({1, 1, 1, 1}));
  const BettiTable t = betti_table(k, {1, 5}, {0, 1.2}, 2);
  std::ostringstream os;
  write_hilbert_csv(os, t);
  CHECK(os.str() ==
        "m,r,b0,b1,b2\n"
        "1,0,4,0,0\n"
        "1,1.2,1,0,1\n"
        "5,0,0,0,0\n"
        "5,1.2,0,0,0\n");
}

TEST_CASE("hilbert csv single cell") {
  const BifilteredComplex k = intrinsic_dc(fixtures::line3(), DiscreteMeasure({1, 1, 1}));
  std::ostringstream os;
  write_hilbert_csv(os, betti_table(k, {1}, {1}, 0));
  CHECK(os.str() == "m,r,b0\n1,1,2\n");
}

TEST_CASE("square has a 2-sphere in the intrinsic filtration") {
  const BifilteredComplex k = intrinsic_dc(fixtures::square4(), DiscreteMeasure({1, 1, 1, 1}));
  for (double r : {1.0, 1.2, 1.41}) CHECK(betti(k.complex_at(1, r), 2) == BettiVector{1, 0, 1});
  CHECK(betti(k.complex_at(1, std::sqrt(2.0)), 2) == BettiVector{1, 0, 0});
}

TEST_CASE("hilbert svg") {
  const BifilteredComplex k = intrinsic_dc(fixtures::line3(), DiscreteMeasure({1, 1, 1}));
  std::ostringstream os;
  write_hilbert_svg(os, betti_table(k, {1, 2}, {0, 1, 2}, 0), 0);
  const std::string s = os.str();
  CHECK(s.rfind("<svg", 0) == 0);
  CHECK(s.find("</svg>") != std::string::npos);
  std::size_t rects = 0;
  for (std::size_t p = s.find("<rect"); p != std::string::npos; p = s.find("<rect", p + 1)) ++rects;
  CHECK(rects >= 6);
}

TEST_CASE("barcode text") {
  Barcode b;
  b.by_degree = {{{0, 1}, {0, 2}, {0, kInf}}, {}};
  std::ostringstream os;
  write_barcode(os, b);
  CHECK(os.str() == "H0: [0,1) [0,2) [0,inf)\nH1:\n");
}

TEST_CASE("firep of the line, one generator per minimal grade") {
  const BifilteredComplex k = intrinsic_dc(fixtures::line3(), DiscreteMeasure({1, 1, 1}));
  const std::string f = firep_text(k, 0);
  CHECK(f ==
        "# ddcech firep, homology degree 0\n"
        "# grades are (r, -m), one generator per minimal grade of each simplex\n"
        "firep\nr\n-m\n"
        "4 8 0\n"
        "1 -2 ; 1 4\n"
        "2 -3 ; 2 5\n"
        "2 -3 ; 2 7\n"
        "2 -3 ; 5 7\n"
        "0 -1 ;\n1 -2 ;\n2 -3 ;\n"
        "0 -1 ;\n1 -2 ;\n2 -3 ;\n"
        "0 -1 ;\n2 -3 ;\n");
}

TEST_CASE("firep of an empty complex") {
  const BifilteredComplex empty(PointSet{}, 3, {});
  CHECK(firep_text(empty, 1) ==
        "# ddcech firep, homology degree 1\n"
        "# grades are (r, -m), one generator per minimal grade of each simplex\n"
        "firep\nr\n-m\n0 0 0\n");
}

TEST_CASE("firep degree beyond dim cap") {
  const BifilteredComplex k = intrinsic_dc(fixtures::line3(), DiscreteMeasure({1, 1, 1}), 1);
  CHECK_NOTHROW(firep_text(k, 0));
  CHECK_THROWS_AS(firep_text(k, 1), UnsupportedDimension);
}

TEST_CASE("atomic write") {
  const fs::path dir = scratch("atomic");
  write_file_atomically(dir / "a.txt", "one\n");
  write_file_atomically(dir / "a.txt", "two\n");
  CHECK(slurp(dir / "a.txt") == "two\n");
  CHECK_FALSE(fs::exists(dir / "a.txt.tmp"));
}

TEST_CASE("cli build and reproducible output") {
  const Run a = cli("build --input " + data("l3.csv"));
  CHECK(a.code == 0);
  CHECK(a.out.find("simplices 7\n") != std::string::npos);
  CHECK(cli("build --input " + data("l3.csv")).out == a.out);

  const Run planar = cli("build --input " + data("s4.csv") + " --mode ambient-planar");
  CHECK(planar.code == 0);
  CHECK(planar.out.find("0 2 | 0.7071067811865476 4\n") != std::string::npos);
}

TEST_CASE("cli writes output files") {
  const fs::path dir = scratch("out");
  CHECK(cli("build --input " + data("s4.csv") + " --out " + dir.string()).code == 0);
  const std::string artifact = slurp(dir / "bifiltration.txt");
  CHECK(artifact.rfind("ddcech-bifiltration 1\n", 0) == 0);

  CHECK(cli("hilbert --input " + data("s4.csv") + " --m-grid 1 --r-grid 0,1.2 --max-degree 2 --out " +
            dir.string())
            .code == 0);
  CHECK(slurp(dir / "hilbert.csv") == "m,r,b0,b1,b2\n1,0,4,0,0\n1,1.2,1,0,1\n");
  CHECK(fs::exists(dir / "hilbert_b2.svg"));

  CHECK(cli("slice --input " + data("l3.csv") + " --path m=1 --out " + dir.string()).code == 0);
  CHECK(slurp(dir / "barcode.txt").rfind("H0: [0,1) [0,2) [0,inf)\n", 0) == 0);

  CHECK(cli("export-firep --input " + data("l3.csv") + " --degree 0 --out " + dir.string()).code == 0);
  std::ostringstream direct;
  write_firep(direct, intrinsic_dc(fixtures::line3(), DiscreteMeasure({1, 1, 1})), 0);
  CHECK(slurp(dir / "degree0.firep") == direct.str());
}

TEST_CASE("cli hilbert from a saved artifact matches the direct run") {
  const fs::path dir = scratch("artifact");
  REQUIRE(cli("build --input " + data("s4.csv") + " --out " + dir.string()).code == 0);
  const Run direct = cli("hilbert --input " + data("s4.csv") + " --m-grid 1,2 --r-grid 0,1,1.5");
  const Run saved = cli("hilbert --artifact " + (dir / "bifiltration.txt").string() +
                        " --m-grid 1,2 --r-grid 0,1,1.5");
  CHECK(direct.code == 0);
  CHECK(saved.out == direct.out);
}

TEST_CASE("cli error exit codes") {
  CHECK(cli("build --input /nonexistent.csv").code == 2);
  CHECK(cli("build --input " + data("l3.csv") + " --weights w").code == 2);
  CHECK(cli("frobnicate").code == 2);
  const Run reversed = cli("slice --input " + data("l3.csv") + " --path m=1 --r-grid 3,1");
  CHECK(reversed.code == 2);
  CHECK(reversed.out.find("decreases") != std::string::npos);
  CHECK(cli("export-firep --input " + data("l3.csv") + " --degree 3").code == 2);
}

TEST_CASE("cli prohorov") {
  const Run d = cli("prohorov " + data("dirac0.csv") + " " + data("dirac1.csv"));
  CHECK(d.code == 0);
  CHECK(d.out.find("0.3") != std::string::npos);
  CHECK(cli("prohorov " + data("l3.csv") + " " + data("l3.csv")).out.rfind("0", 0) == 0);
  CHECK(cli("prohorov " + data("dirac0.csv") + " " + data("dirac1.csv") + " --check 0.3").code == 0);
  CHECK(cli("prohorov " + data("dirac0.csv") + " " + data("dirac1.csv") + " --check 0.2").code == 1);
}

TEST_CASE("cli prohorov with a large support needs --check") {
  const fs::path dir = scratch("prohorov");
  std::ofstream a(dir / "a.csv"), b(dir / "b.csv");
  a << "x,y\n";
  b << "x,y\n";
  // Same unit masses except that the last point moves by 0.5.
  for (int i = 0; i < 20; ++i) {
    a << i << ",0\n";
    b << (i == 19 ? 19.5 : i) << ",0\n";
  }
  a.close();
  b.close();
  const std::string files = (dir / "a.csv").string() + " " + (dir / "b.csv").string();
  const Run full = cli("prohorov " + files);
  CHECK(full.code == 2);
  CHECK(full.out.find("--check") != std::string::npos);
  CHECK(cli("prohorov " + files + " --check 0.5").code == 0);
  CHECK(cli("prohorov " + files + " --check 0.4").code == 1);
}

TEST_CASE("cli verify on a dataset and a corrupted ambient artifact") {
  const Run ok = cli("verify sandwich --input " + data("s4.csv"));
  CHECK(ok.code == 0);
  CHECK(ok.out.find("tight: {v1,v2} {v1,v4} {v2,v3} {v3,v4} {v1,v2,v3,v4}") != std::string::npos);

  const fs::path dir = scratch("corrupt");
  REQUIRE(cli("build --input " + data("s4.csv") + " --mode ambient-planar --out " + dir.string()).code == 0);
  std::string text = slurp(dir / "bifiltration.txt");
  const std::string tetra = "0 1 2 3 | 0.7071067811865476 4\n";
  const std::size_t pos = text.find(tetra);
  REQUIRE(pos != std::string::npos);
  text.replace(pos, tetra.size(), "0 1 2 3 | 5 4\n");
  write_file_atomically(dir / "bad.txt", text);
  const Run bad = cli("verify sandwich --input " + data("s4.csv") + " --ambient " + (dir / "bad.txt").string());
  CHECK(bad.code == 1);
  CHECK(bad.out.find("FAIL") != std::string::npos);
}

TEST_CASE("cli verify small randomized run") {
  const Run r = cli("verify lemma75 --trials 3 --seed 7");
  CHECK(r.code == 0);
  CHECK(r.out.find("lemma75: PASS instances=3") != std::string::npos);
  CHECK(cli("verify lemma75 --trials 3 --seed 7").out == r.out);
}

TEST_CASE("run_suite_on rejects random-only suites") {
  const Dataset d = read_dataset_file(data("l3.csv"), InputKind::kPoints);
  CHECK_THROWS_AS(run_suite_on("prop76", d), Error);
  CHECK(run_suite_on("nerve", d).pass);
}
