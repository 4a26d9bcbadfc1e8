// Command line front end: build, hilbert, slice, verify, prohorov, export-firep.
// Exit codes: 0 success, 1 failed verification, 2 usage or input error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ddcech/bifiltrations.hpp"
#include "ddcech/errors.hpp"
#include "ddcech/homology.hpp"
#include "ddcech/io.hpp"
#include "ddcech/prohorov.hpp"
#include "ddcech/suites.hpp"

namespace fs = std::filesystem;
using namespace ddcech;

namespace {

constexpr int kFailed = 1;
constexpr int kUsage = 2;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct InputOptions {
  std::string input;
  std::string kind = "points";
  std::optional<std::string> weights;
  std::string mode = "intrinsic";
  std::size_t dim_cap = BifilteredComplex::kDefaultDimCap;
  std::string artifact;
  std::string r_grid;
  std::string m_grid;
  std::string out;
};

InputKind parse_kind(const std::string& k) {
  if (k == "points") return InputKind::kPoints;
  if (k == "matrix") return InputKind::kMatrix;
  throw UsageError("--kind must be points or matrix");
}

Dataset load(const InputOptions& o) {
  if (o.input.empty()) throw UsageError("--input is required");
  return read_dataset_file(o.input, parse_kind(o.kind), o.weights);
}

std::optional<std::vector<double>> grid_option(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_number_list(text);
}

BifilteredComplex build(const InputOptions& o) {
  const Dataset d = load(o);
  if (o.dim_cap < 1) throw UsageError("--dim-cap must be at least 1");
  if (o.mode == "intrinsic") return intrinsic_dc(d.space, d.measure, o.dim_cap);
  if (o.mode == "ambient-finite") return ambient_dc_finite(d.space, d.measure, o.dim_cap);
  if (o.mode == "ambient-planar") {
    return ambient_dc_planar(d.space, d.measure, o.dim_cap, grid_option(o.r_grid));
  }
  throw UsageError("--mode must be intrinsic, ambient-finite or ambient-planar");
}

BifilteredComplex read_artifact(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_bifiltration(in);
}

// A built artifact if given, else built from the input.
BifilteredComplex complex_from(const InputOptions& o) {
  if (!o.artifact.empty()) return read_artifact(o.artifact);
  return build(o);
}

// Writes to out/name if an output directory is set, else to stdout.
void emit(const InputOptions& o, const std::string& name, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(o.out);
  write_file_atomically(fs::path(o.out) / name, text);
}

void add_input_options(CLI::App* cmd, InputOptions& o, bool with_artifact) {
  cmd->add_option("--input", o.input, "CSV input");
  cmd->add_option("--kind", o.kind, "points or matrix")->capture_default_str();
  cmd->add_option("--weights", o.weights, "weight column (default: column w, else all 1)");
  cmd->add_option("--mode", o.mode, "intrinsic, ambient-finite or ambient-planar")
      ->capture_default_str();
  cmd->add_option("--dim-cap", o.dim_cap, "largest simplex dimension")->capture_default_str();
  if (with_artifact) cmd->add_option("--artifact", o.artifact, "bifiltration file from build");
}

int run_build(const InputOptions& o) {
  std::ostringstream os;
  write_bifiltration(os, build(o));
  emit(o, "bifiltration.txt", os.str());
  return 0;
}

int run_hilbert(const InputOptions& o, std::optional<std::size_t> max_degree) {
  const BifilteredComplex k = complex_from(o);
  const std::size_t deg = max_degree.value_or(default_max_degree(k.dim_cap()));
  BettiTable t = betti_table(k, deg);
  if (auto m = grid_option(o.m_grid)) t = betti_table(k, *m, t.r_grid, deg);
  if (auto r = grid_option(o.r_grid)) t = betti_table(k, t.m_grid, *r, deg);
  std::ostringstream csv;
  write_hilbert_csv(csv, t);
  emit(o, "hilbert.csv", csv.str());
  if (!o.out.empty()) {
    for (std::size_t d = 0; d <= deg; ++d) {
      std::ostringstream svg;
      write_hilbert_svg(svg, t, d);
      emit(o, "hilbert_b" + std::to_string(d) + ".svg", svg.str());
    }
  }
  return 0;
}

std::pair<double, double> two_numbers(const std::string& text) {
  auto v = parse_number_list(text);
  if (v.size() != 2) throw UsageError("expected two numbers, got '" + text + "'");
  return {v[0], v[1]};
}

int run_slice(const InputOptions& o, const std::string& spec, std::optional<std::size_t> max_degree) {
  const BifilteredComplex k = complex_from(o);
  const std::size_t deg = max_degree.value_or(default_max_degree(k.dim_cap()));
  Barcode bc;
  if (spec.rfind("m=", 0) == 0) {
    const double m = parse_number(spec.substr(2), 1);
    if (auto r = grid_option(o.r_grid)) {
      std::vector<PathPoint> pts;
      for (double x : *r) pts.push_back({{m, x}, x});
      bc = slice_persistence(k, MonotonePath(pts), deg);
    } else {
      bc = slice_persistence(k, horizontal_path(k, m), deg);
    }
  } else if (spec.rfind("diag ", 0) == 0) {
    auto [m0, r0] = two_numbers(spec.substr(5));
    bc = slice_persistence(k, DiagonalSlice{m0, r0}, deg);
  } else if (spec.rfind("path ", 0) == 0) {
    std::vector<Grade> grades;
    std::string rest = spec.substr(5);
    std::istringstream parts(rest);
    std::string item;
    while (std::getline(parts, item, ';')) {
      auto [m, r] = two_numbers(item);
      grades.push_back({m, r});
    }
    bc = slice_persistence(k, MonotonePath::from_grades(grades), deg);
  } else {
    throw UsageError("--path must be 'm=<v>', 'diag <m0>,<r0>' or 'path <m>,<r>;<m>,<r>;...'");
  }
  std::ostringstream os;
  write_barcode(os, bc);
  emit(o, "barcode.txt", os.str());
  return 0;
}

int run_verify(const InputOptions& o, const std::string& suite, const SuiteConfig& config) {
  std::vector<std::string> names;
  const bool on_input = !o.input.empty();
  if (suite == "all") {
    names = on_input ? std::vector<std::string>{"sandwich", "duality", "restriction", "nerve"}
                     : suite_names();
  } else {
    names = {suite};
  }
  std::optional<Dataset> data;
  if (on_input) data = load(o);
  std::optional<BifilteredComplex> ambient;
  if (!o.artifact.empty()) ambient = read_artifact(o.artifact);
  bool ok = true;
  for (const std::string& name : names) {
    const SuiteResult r = on_input ? run_suite_on(name, *data, ambient) : run_suite(name, config);
    std::cout << format_result(r) << "\n";
    ok = ok && r.pass;
  }
  return ok ? 0 : kFailed;
}

// Both measures on one space: the union of the points of the two files, or a
// shared distance matrix.
int run_prohorov(const std::string& f0, const std::string& f1, const std::string& kind,
                 const std::optional<std::string>& weights, std::optional<double> check,
                 std::optional<std::size_t> cap) {
  const Dataset a = read_dataset_file(f0, parse_kind(kind), weights);
  const Dataset b = read_dataset_file(f1, parse_kind(kind), weights);
  FiniteMetricSpace space;
  std::vector<double> w0, w1;
  if (parse_kind(kind) == InputKind::kPoints) {
    std::vector<Point2> pts;
    auto index_of = [&](const Point2& p) {
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].x == p.x && pts[i].y == p.y) return i;
      }
      pts.push_back(p);
      w0.push_back(0.0);
      w1.push_back(0.0);
      return pts.size() - 1;
    };
    for (Index i = 0; i < a.space.size(); ++i) w0[index_of((*a.space.coords())[i])] += a.measure[i];
    for (Index i = 0; i < b.space.size(); ++i) w1[index_of((*b.space.coords())[i])] += b.measure[i];
    space = FiniteMetricSpace::from_points(pts);
  } else {
    bool same = a.space.size() == b.space.size();
    for (Index i = 0; same && i < a.space.size(); ++i) {
      for (Index j = 0; same && j < a.space.size(); ++j) same = a.space(i, j) == b.space(i, j);
    }
    if (!same) throw DifferentSpaces("the two matrix files describe different spaces");
    space = a.space;
    w0 = a.measure.weights();
    w1 = b.measure.weights();
  }
  const DiscreteMeasure mu0(w0), mu1(w1);
  if (check) {
    const ProhorovCheck c = prohorov_check(space, mu0, mu1, *check, cap.value_or(24));
    std::cout << (c.holds ? "pass" : "fail") << " eps=" << format_number(*check)
              << " worst_slack=" << format_number(c.worst_slack);
    if (!c.holds) {
      std::cout << " direction=" << c.direction << " witness=" << Simplex(c.witness).to_string();
    }
    std::cout << "\n";
    return c.holds ? 0 : kFailed;
  }
  std::cout << format_number(prohorov_distance(space, mu0, mu1, cap.value_or(kDefaultSupportCap)))
            << "\n";
  return 0;
}

int run_export(const InputOptions& o, std::size_t degree) {
  const BifilteredComplex k = complex_from(o);
  std::ostringstream os;
  write_firep(os, k, degree);
  emit(o, "degree" + std::to_string(degree) + ".firep", os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual degree Cech bifiltrations of finite metric measure spaces"};
  app.require_subcommand(1);

  InputOptions o;
  std::optional<std::size_t> max_degree;

  auto* build_cmd = app.add_subcommand("build", "write the staircase table of a bifiltration");
  add_input_options(build_cmd, o, false);
  build_cmd->add_option("--r-grid", o.r_grid, "radii sampled by ambient-planar (comma separated)");
  build_cmd->add_option("--out", o.out, "output directory (default: stdout)");

  auto* hilbert_cmd = app.add_subcommand("hilbert", "Betti numbers on a grid, CSV and SVG");
  add_input_options(hilbert_cmd, o, true);
  hilbert_cmd->add_option("--m-grid", o.m_grid, "m values (comma separated)");
  hilbert_cmd->add_option("--r-grid", o.r_grid, "r values (comma separated)");
  hilbert_cmd->add_option("--max-degree", max_degree, "largest homology degree");
  hilbert_cmd->add_option("--out", o.out, "output directory for hilbert.csv and SVGs");

  std::string path_spec;
  auto* slice_cmd = app.add_subcommand("slice", "barcode along a monotone path");
  add_input_options(slice_cmd, o, true);
  slice_cmd->add_option("--path", path_spec, "'m=<v>', 'diag <m0>,<r0>' or 'path <m>,<r>;...'")
      ->required();
  slice_cmd->add_option("--r-grid", o.r_grid, "radii for an m=<v> path, in path order");
  slice_cmd->add_option("--max-degree", max_degree, "largest homology degree");
  slice_cmd->add_option("--out", o.out, "output directory (default: stdout)");

  std::string suite = "all";
  SuiteConfig config;
  auto* verify_cmd = app.add_subcommand("verify", "randomized or fixture verification suites");
  verify_cmd->add_option("suite", suite,
                         "sandwich, duality, restriction, nerve, stability, lemma75, prop76 or all")
      ->capture_default_str();
  verify_cmd->add_option("--seed", config.seed, "random seed")->capture_default_str();
  verify_cmd->add_option("--trials", config.trials, "instances per suite")->capture_default_str();
  verify_cmd->add_option("--input", o.input, "run on this dataset instead of random instances");
  verify_cmd->add_option("--kind", o.kind, "points or matrix")->capture_default_str();
  verify_cmd->add_option("--weights", o.weights, "weight column");
  verify_cmd->add_option("--ambient", o.artifact, "ambient bifiltration file for sandwich");

  std::string file0, file1;
  std::optional<double> check;
  std::optional<std::size_t> cap;
  std::optional<std::string> pweights;
  std::string pkind = "points";
  auto* prohorov_cmd = app.add_subcommand("prohorov", "Prohorov distance of two measures");
  prohorov_cmd->add_option("file0", file0)->required();
  prohorov_cmd->add_option("file1", file1)->required();
  prohorov_cmd->add_option("--kind", pkind, "points or matrix")->capture_default_str();
  prohorov_cmd->add_option("--weights", pweights, "weight column");
  prohorov_cmd->add_option("--check", check, "only test this eps");
  prohorov_cmd->add_option("--cap", cap, "support size cap (default 15, 24 with --check)");

  std::size_t degree = 0;
  auto* export_cmd = app.add_subcommand("export-firep", "chain complex around one degree");
  add_input_options(export_cmd, o, true);
  export_cmd->add_option("--degree", degree, "homology degree")->required();
  export_cmd->add_option("--out", o.out, "output directory (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*build_cmd) return run_build(o);
    if (*hilbert_cmd) return run_hilbert(o, max_degree);
    if (*slice_cmd) return run_slice(o, path_spec, max_degree);
    if (*verify_cmd) return run_verify(o, suite, config);
    if (*prohorov_cmd) return run_prohorov(file0, file1, pkind, pweights, check, cap);
    if (*export_cmd) return run_export(o, degree);
  } catch (const SupportTooLarge& e) {
    std::cerr << "error: " << e.what() << " (try --check <eps>)\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
