#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "torusfix/errors.hpp"
#include "torusfix/fixtures.hpp"
#include "torusfix/report.hpp"

using namespace torusfix;

namespace {

struct Settings {
  unsigned degree_bound = 10;
  std::string format = "text";
  std::uint64_t seed = 0;
  unsigned lc_power_bound = 0;
  std::optional<std::uint64_t> lc_seed;
  std::string out;
  std::vector<std::string> lc_tori;
  std::string input;
  std::string fixture;
  std::string dir = ".";
};

AnnihilatorPolicy policy(const Settings& s) {
  AnnihilatorPolicy p;
  p.power_bound = s.lc_power_bound;
  p.seed = s.lc_seed.value_or(s.seed);
  return p;
}

void emit(const Settings& s, const Json& report) {
  const std::string body = s.format == "json" ? report.dump(2) + "\n" : render_text(report);
  if (s.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(s.out, std::ios::binary);
  if (!f) throw InvalidInput("cannot write '" + s.out + "'");
  f << body;
}

int write_fixture(const Settings& s) {
  std::filesystem::create_directories(s.dir);
  for (const auto& [file, doc] : fixture_files(s.fixture)) {
    const auto path = std::filesystem::path(s.dir) / file;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidInput("cannot write '" + path.string() + "'");
    f << doc.dump(2) << "\n";
    std::cout << path.string() << "\n";
  }
  return 0;
}

// A subgroup literal on the command line: JSON, or a bare "T" / "trivial".
SubgroupLattice torus_argument(const std::string& text, std::size_t n) {
  const bool structured = !text.empty() && (text.front() == '{' || text.front() == '[');
  if (!structured) return parse_subgroup(Json(text), n);
  const Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InvalidInput("--lc-torus: not JSON: '" + text + "'");
  return parse_subgroup(j, n);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Realizability checks for torus-equivariant cohomology"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  app.add_option("--degree-bound", s.degree_bound, "Cohomological degree bound")->capture_default_str();
  app.add_option("--format,--report", s.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--seed", s.seed, "Seed for all sampling")->capture_default_str();
  app.add_option("--lc-power-bound", s.lc_power_bound, "Annihilator power bound (0: twice the degree bound)");
  app.add_option("--lc-seed", s.lc_seed, "Seed for annihilator forms (default: --seed)");
  app.add_option("--out", s.out, "Write the report to a file");

  auto with_input = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("input", s.input, "Input JSON file")->required();
    return sub;
  };
  auto* graph_coh = with_input("graph-cohomology", "Hilbert function, forest criterion and freeness probe");
  auto* graph_real = with_input("graph-realizable", "Forest criterion for finite realizability");
  auto* gkm = with_input("gkm-validate", "Pairwise independence of labels at every vertex");
  auto* circle = with_input("circle-realizable", "S^1-realizability of a graded Q[x]-algebra");
  auto* system = with_input("system-check", "TC, SC, LC and hypotheses of a system of cdgas");
  system->add_option("--lc-torus", s.lc_tori, "Extra torus K for LC (subgroup literal, repeatable)");
  auto* criterion = with_input("criterion-check", "Realization criterion on subspace-indexed algebras");
  auto* fixtures = app.add_subcommand("fixtures", "Write a bundled fixture");
  fixtures->add_option("name", s.fixture, "Fixture name")->required();
  fixtures->add_option("--dir", s.dir, "Output directory")->capture_default_str();
  std::string names;
  for (const auto& n : fixture_names()) names += (names.empty() ? "" : ", ") + n;
  fixtures->footer("Fixtures: " + names);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*fixtures) return write_fixture(s);
    const Json input = read_json_file(s.input);
    if (*graph_coh) {
      emit(s, graph_cohomology_report(parse_graph(input), s.degree_bound));
    } else if (*graph_real) {
      emit(s, graph_realizable_report(parse_graph(input)));
    } else if (*gkm) {
      emit(s, gkm_report(parse_graph(input)));
    } else if (*circle) {
      emit(s, circle_report(parse_circle(input)));
    } else if (*system) {
      SystemCheckOptions options;
      options.degree_bound = s.degree_bound;
      options.lc.policy = policy(s);
      const SystemDiagram diagram = parse_system(input);
      for (const auto& t : s.lc_tori) options.lc.extra_tori.push_back(torus_argument(t, diagram.n()));
      emit(s, system_report(diagram, options));
    } else if (*criterion) {
      emit(s, criterion_report(parse_criterion(input), s.degree_bound, policy(s)));
    }
    return 0;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
