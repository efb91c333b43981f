// Command-line front end. Class and record indices are 1-based here.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "phf/error.hpp"
#include "phf/glgen.hpp"
#include "phf/io.hpp"
#include "phf/voronoi.hpp"

namespace fs = std::filesystem;
using namespace phf;
using io::json;

namespace {

constexpr const char* kCheckpointEnv = "PHF_CHECKPOINT_DIR";

struct Common {
  std::int64_t d = 0;
  int n = 2;
  int threads = 1;
  int time_budget = 0;  // seconds, 0 = none
  std::size_t checkpoint_every = 10;
  bool verbose = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App* app, Common& c, bool with_n = true) {
  app->add_option("--d", c.d, "squarefree d > 0, K = Q(sqrt(-d))")->required();
  if (!with_n) return;
  app->add_option("--n", c.n, "dimension (2 or 3)")->required();
  app->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
  app->add_option("--time-budget", c.time_budget, "stop after this many seconds per lattice")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--checkpoint-every", c.checkpoint_every, "checkpoint after this many new classes")
      ->check(CLI::PositiveNumber);
  app->add_flag("-v,--verbose", c.verbose, "progress on stderr");
}

std::shared_ptr<const ClassGroup> group_of(const QuadField& k) {
  return std::make_shared<const ClassGroup>(class_group(k));
}

void check_dimension(int n) {
  if (n < 2 || n > 3) throw UsageError("--n must be 2 or 3");
}

int parse_class(const std::string& text, const ClassGroup& g) {
  int j = 0;
  try {
    std::size_t pos = 0;
    j = std::stoi(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw UsageError("--class must be an index 1.." + std::to_string(g.order()) + " or 'all'");
  }
  if (j < 1 || j > g.order()) throw UsageError("--class out of range 1.." + std::to_string(g.order()));
  return j - 1;
}

EnumerationOptions options_for(const Common& c, const OKLattice& l) {
  EnumerationOptions o;
  o.threads = c.threads;
  if (c.time_budget > 0) o.time_budget = std::chrono::seconds(c.time_budget);
  o.checkpoint_every = c.checkpoint_every;
  if (c.verbose) o.log = [](const std::string& s) { std::cerr << s << "\n"; };
  if (const char* dir = std::getenv(kCheckpointEnv); dir && *dir) {
    fs::create_directories(dir);
    fs::path file = fs::path(dir) / ("d" + std::to_string(c.d) + "_n" + std::to_string(c.n) + "_c" +
                                     std::to_string(l.steinitz_class() + 1) + ".json");
    if (fs::exists(file)) {
      std::ifstream in(file);
      o.resume = io::state_from(json::parse(in), l.field());
      if (c.verbose) std::cerr << "resuming from " << file << "\n";
    }
    o.checkpoint = [file, l](const EnumerationState& s) {
      fs::path tmp = file;
      tmp += ".tmp";
      {
        std::ofstream out(tmp);
        out << io::state_json(s, l).dump() << "\n";
      }
      fs::rename(tmp, file);
    };
  }
  return o;
}

EnumerationResult run_lattice(const Common& c, const QuadField& k, std::shared_ptr<const ClassGroup> g, int j) {
  OKLattice l = OKLattice::standard(k, std::move(g), j, c.n);
  EnumerationResult r = enumerate_perfect(l, options_for(c, l));
  if (!r.complete) std::cerr << "warning: time budget exhausted, enumeration incomplete\n";
  return r;
}

int cmd_classgroup(const Common& c, const std::string& format) {
  QuadField k(c.d);
  ClassGroup g = class_group(k);
  if (format == "json") {
    json reps = json::array();
    for (int i = 0; i < g.order(); ++i) reps.push_back({{"class", i + 1}, {"ideal", g.reps[i].to_string()},
                                                        {"norm", g.reps[i].norm().get_str()}});
    std::cout << json{{"schema", io::kSchema}, {"d", c.d}, {"h", g.order()}, {"reps", reps}}.dump(2) << "\n";
  } else {
    std::cout << "h = " << g.order() << "\n";
    for (int i = 0; i < g.order(); ++i) std::cout << "a" << i + 1 << " = " << g.reps[i].to_string() << "\n";
  }
  return 0;
}

int cmd_perfect(const Common& c, const std::string& cls, const std::string& format) {
  check_dimension(c.n);
  QuadField k(c.d);
  auto g = group_of(k);
  std::vector<int> classes = cls == "all" ? lattice_class_reps(*g, c.n) : std::vector<int>{parse_class(cls, *g)};
  json runs = json::array();
  for (int j : classes) {
    EnumerationResult r = run_lattice(c, k, g, j);
    if (format == "json") {
      runs.push_back(io::run_json(r));
    } else {
      std::cout << "L = O_K^" << c.n - 1 << " + " << g->reps[j].to_string() << "  (class " << j + 1 << ", "
                << r.records.size() << " perfect forms" << (r.complete ? "" : ", incomplete") << ")\n"
                << io::records_table(r.records) << "\n";
    }
  }
  if (format == "json") std::cout << json{{"schema", io::kSchema}, {"runs", runs}}.dump(2) << "\n";
  return 0;
}

int cmd_hermite(const Common& c, const std::string& format) {
  check_dimension(c.n);
  QuadField k(c.d);
  auto g = group_of(k);
  HermiteConstant hc;
  bool first = true, complete = true;
  for (int j : lattice_class_reps(*g, c.n)) {
    EnumerationResult r = run_lattice(c, k, g, j);
    complete = complete && r.complete;
    for (const auto& rec : r.records) {
      Rational gam = hermite_invariant(rec.minvecs, rec.form, r.lattice);
      if (first || gam > hc.gamma_n) hc.gamma_n = gam, hc.maximizers.clear(), first = false;
      if (gam == hc.gamma_n) hc.maximizers.push_back({j, rec.id});
    }
  }
  if (format == "json") {
    json m = json::array();
    for (const auto& x : hc.maximizers) m.push_back({{"class", x.class_id + 1}, {"id", x.record_id + 1}});
    std::cout << json{{"schema", io::kSchema}, {"d", c.d}, {"n", c.n}, {"gamma_pow_n", io::rational_text(hc.gamma_n)},
                      {"maximizers", m}, {"complete", complete}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "gamma^" << c.n << " = " << to_string(hc.gamma_n) << (complete ? "" : "  (incomplete)") << "\n";
    for (const auto& x : hc.maximizers)
      std::cout << "maximizer: class " << x.class_id + 1 << ", P" << x.record_id + 1 << "\n";
  }
  return 0;
}

int cmd_graph(const Common& c, const std::string& cls, const std::string& format) {
  check_dimension(c.n);
  QuadField k(c.d);
  auto g = group_of(k);
  int j = parse_class(cls, *g);
  EnumerationResult r = run_lattice(c, k, g, j);
  if (format == "dot") {
    std::string name = "d" + std::to_string(c.d) + "_n" + std::to_string(c.n) + "_class" + std::to_string(j + 1);
    std::cout << io::graph_dot(r.graph, name);
  } else {
    std::cout << io::run_json(r).dump(2) << "\n";
  }
  return 0;
}

int cmd_glgen(const Common& c, const std::string& cls) {
  check_dimension(c.n);
  QuadField k(c.d);
  auto g = group_of(k);
  int j = parse_class(cls, *g);
  EnumerationResult r = run_lattice(c, k, g, j);
  if (!r.complete) throw UsageError("generators need a complete enumeration; raise --time-budget");
  std::cout << io::glgen_json(gl_generators(r), r.lattice).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perfect Hermitian forms over imaginary quadratic fields"};
  app.require_subcommand(1);
  Common c;
  std::string cls = "1", format;

  auto* cg = app.add_subcommand("classgroup", "class group and ideal representatives");
  add_common(cg, c, false);
  cg->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));

  auto* pf = app.add_subcommand("perfect", "enumerate perfect forms");
  add_common(pf, c);
  pf->add_option("--class", cls, "class index j (1-based) or 'all'")->required();
  pf->add_option("--format", format, "table | json")->check(CLI::IsMember({"table", "json"}));

  auto* hc = app.add_subcommand("hermite-constant", "gamma^n over all lattice classes");
  add_common(hc, c);
  hc->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));

  auto* gr = app.add_subcommand("graph", "weighted Voronoi graph");
  add_common(gr, c);
  gr->add_option("--class", cls, "class index j (1-based)")->required();
  gr->add_option("--format", format, "dot | json")->check(CLI::IsMember({"dot", "json"}));

  auto* gl = app.add_subcommand("glgen", "generators of GL(L)");
  add_common(gl, c);
  gl->add_option("--class", cls, "class index j (1-based)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*cg) return cmd_classgroup(c, format.empty() ? "text" : format);
    if (*pf) return cmd_perfect(c, cls, format.empty() ? "table" : format);
    if (*hc) return cmd_hermite(c, format.empty() ? "text" : format);
    if (*gr) return cmd_graph(c, cls, format.empty() ? "dot" : format);
    if (*gl) return cmd_glgen(c, cls);
  } catch (const InvariantViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
