// abelaut: command line front end.
//
// Exit codes: 0 success, 2 violation or golden mismatch, 64 usage, 65 invalid data.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "abelaut/abelaut.hpp"
#include "abelaut/testing/acceptance.hpp"

#ifndef ABELAUT_DATA_DIR
#define ABELAUT_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace abelaut;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 2;
constexpr int kUsage = 64;
constexpr int kInvalidData = 65;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

std::string utc_timestamp() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

// Header carries everything that varies between identical runs.
json make_header(const std::string& command, std::uint64_t seed, double seconds, json timings = json::object()) {
  timings["total_seconds"] = seconds;
  return {{"tool", "abelaut"},
          {"version", kVersion},
          {"schema", kReportSchema},
          {"command", command},
          {"seed", seed},
          {"timestamp", utc_timestamp()},
          {"timings", timings}};
}

std::string write_report(const std::string& dir, const std::string& name, const json& report) {
  fs::create_directories(dir);
  auto path = fs::path(dir) / name;
  std::ofstream os(path);
  os << report.dump(2) << "\n";
  if (!os) throw std::runtime_error("cannot write " + path.string());
  return path.string();
}

std::map<std::string, std::string> parse_pairs(const std::vector<std::string>& args) {
  std::map<std::string, std::string> kv;
  for (const auto& a : args) {
    auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("expected key=value, got '" + a + "'");
    kv[a.substr(0, eq)] = a.substr(eq + 1);
  }
  return kv;
}

std::pair<long long, long long> parse_range(const std::string& s, const char* what) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError(std::string(what) + " range must look like lo:hi");
  try {
    return {std::stoll(s.substr(0, colon)), std::stoll(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw UsageError(std::string(what) + " range must look like lo:hi");
  }
}

long long take_integer(std::map<std::string, std::string>& kv, const std::string& key, bool required = true,
                       long long fallback = 0) {
  auto it = kv.find(key);
  if (it == kv.end()) {
    if (required) throw PreconditionError(key + " is required");
    return fallback;
  }
  auto v = bounds::detail::parse_integer(key, it->second);
  kv.erase(it);
  return v;
}

bounds::ThreefoldInvariants threefold_from(std::map<std::string, std::string> kv) {
  long long k3 = take_integer(kv, kv.count("K3") ? "K3" : "k3");
  long long chi = take_integer(kv, "chi");
  if (!kv.empty()) throw PreconditionError("unknown invariant '" + kv.begin()->first + "'");
  return bounds::ThreefoldInvariants(k3, chi);
}

// ---------------------------------------------------------------- verify-lemmas

struct VerifyArgs {
  std::string lemma;
  std::size_t trials = 100, dim = 3, min_size = 0, max_size = 0;
  long long side = 0;
  std::uint64_t seed = 1;
  bool check_convexity = false;
  std::string format = "json";
  std::string out;
};

int cmd_verify(const VerifyArgs& a) {
  lemma::LemmaId id;
  try {
    id = lemma::parse_lemma_id(a.lemma);
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
  lemma::SuiteOptions o;
  o.lemma = id;
  o.trials = a.trials;
  o.dim = a.dim;
  o.seed = a.seed;
  o.min_size = a.min_size;
  o.max_size = a.max_size;
  o.side = a.side;
  o.check_convexity = a.check_convexity;
  o.witness_dir = (fs::path(a.out) / "witnesses").string();
  auto res = lemma::run_suite(o);

  json trials = json::array(), millis = json::array();
  for (const auto& t : res.trials) {
    trials.push_back(t.to_json(id));
    millis.push_back(t.millis);
  }
  json body{{"lemma", lemma::to_string(id)},
            {"dim", a.dim},
            {"master_seed", a.seed},
            {"trials", a.trials},
            {"attempts", res.attempts},
            {"admissible", res.admissible},
            {"violations", res.violations},
            {"witness_files", res.witness_paths},
            {"records", trials}};
  json report{{"header", make_header("verify-lemmas", a.seed, res.seconds, {{"trial_ms", millis}})}, {"body", body}};
  std::string stem = "verify-" + lemma::to_string(id) + "-d" + std::to_string(a.dim) + "-s" + std::to_string(a.seed);
  std::string path = write_report(a.out, stem + ".json", report);
  if (a.format == "csv") {
    std::ofstream os(fs::path(a.out) / (stem + ".csv"));
    os << "lemma,seed,index,admissible,lhs,rhs,satisfied\n";
    for (const auto& t : res.trials)
      os << lemma::to_string(id) << ',' << t.seed << ',' << t.index << ',' << t.admissible << ','
         << (t.admissible ? std::to_string(t.lhs) : "") << ',' << (t.admissible ? to_fraction_string(t.rhs) : "") << ','
         << (t.admissible ? (t.satisfied ? "1" : "0") : "") << '\n';
  }
  std::cout << "lemma " << lemma::to_string(id) << ": " << res.attempts << " trials, " << res.admissible
            << " admissible, " << res.violations << " violations\n"
            << "report: " << path << "\n";
  for (const auto& w : res.witness_paths) std::cout << "witness: " << w << "\n";
  return res.violations ? kViolation : kOk;
}

// ------------------------------------------------------------- enumerate-covers

struct EnumerateArgs {
  std::string bound = "3g+6";
  int gmin = 2, gmax = 8;
  std::optional<int> gamma;
  int kmin = 0;
  std::optional<int> kmax;
  bool no_hyperelliptic = false, cyclic = false;
  bool golden = false;
  std::string golden_path;
  std::string data;
  std::string out;
  std::set<std::string> explicit_options;
};

std::string default_golden(const EnumerateArgs& a, const covers::LinearBound& b) {
  if (b.a == 3 && b.b == 6) return "fermat_3g6.json";
  if (b.a == 3 && b.b == -3) return "variable_moduli_3g3.json";
  if (b.a == 2 && b.b == 2 && a.cyclic) return "cyclic_2g2.json";
  throw UsageError("no shipped golden list for bound " + b.text + "; pass --golden <file>");
}

int cmd_enumerate(EnumerateArgs a) {
  covers::LinearBound bound;
  try {
    bound = covers::LinearBound::parse(a.bound);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  std::optional<covers::GoldenRun> g;
  std::string golden_file;
  if (a.golden) {
    golden_file = a.golden_path.empty() ? (fs::path(a.data) / "golden" / default_golden(a, bound)).string() : a.golden_path;
    g = covers::load_golden(golden_file);
    // options left unset on the command line follow the golden run
    auto unset = [&](const char* name) { return !a.explicit_options.count(name); };
    if (unset("--bound")) bound = g->bound;
    if (unset("--gmin")) a.gmin = g->gmin;
    if (unset("--gmax")) a.gmax = g->gmax;
    if (unset("--gamma")) a.gamma = g->filters.gamma;
    if (unset("--kmin")) a.kmin = g->filters.kmin;
    if (unset("--kmax")) a.kmax = g->filters.kmax;
    if (unset("--no-hyperelliptic")) a.no_hyperelliptic = g->filters.require_no_hyperelliptic_witness;
    if (unset("--cyclic")) a.cyclic = g->filters.assume_cyclic;
  }
  if (a.gmin > a.gmax) throw UsageError("gmin exceeds gmax");
  covers::EnumerationFilters f;
  f.gamma = a.gamma;
  f.kmin = a.kmin;
  f.kmax = a.kmax;
  f.require_no_hyperelliptic_witness = a.no_hyperelliptic;
  f.assume_cyclic = a.cyclic;
  auto t0 = std::chrono::steady_clock::now();
  auto records = covers::enumerate_extremal(a.gmin, a.gmax, bound, f);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json recs = json::array();
  for (const auto& r : records) recs.push_back(r.to_json());
  json body{{"bound", bound.text},
            {"gmin", a.gmin},
            {"gmax", a.gmax},
            {"gamma", a.gamma ? json(*a.gamma) : json(nullptr)},
            {"kmin", a.kmin},
            {"kmax", a.kmax ? json(*a.kmax) : json(nullptr)},
            {"no_hyperelliptic", a.no_hyperelliptic},
            {"cyclic", a.cyclic},
            {"count", records.size()},
            {"records", recs}};
  int code = kOk;
  if (g) {
    auto cmp = covers::compare_golden(records, *g);
    body["golden"] = cmp.to_json();
    body["golden"]["file"] = fs::path(golden_file).filename().string();
    if (!cmp.exact()) code = kViolation;
  }
  json report{{"header", make_header("enumerate-covers", 0, secs)}, {"body", body}};
  std::string path = write_report(a.out, "covers-" + bound.text + "-g" + std::to_string(a.gmin) + "-" +
                                             std::to_string(a.gmax) + ".json",
                                  report);
  for (const auto& r : records) {
    auto sig = covers::signature_of(r);
    std::cout << sig.to_string() << " " << r.datum.group.name();
    if (auto w = covers::hyperelliptic_witness(r.datum)) std::cout << " " << w->kind();
    std::cout << "\n";
  }
  std::cout << records.size() << " records\n";
  if (body.contains("golden")) {
    const auto& gj = body["golden"];
    std::cout << "golden " << gj["file"].get<std::string>() << ": " << (gj["exact"].get<bool>() ? "match" : "MISMATCH") << "\n";
    if (gj.contains("printed_list")) {
      for (const auto& s : gj["printed_list"]["missing_from_search"]) std::cout << "flagged: printed but not found " << s.get<std::string>() << "\n";
      for (const auto& s : gj["printed_list"]["not_in_printed_list"]) std::cout << "flagged: found but not printed " << s.get<std::string>() << "\n";
    }
  }
  std::cout << "report: " << path << "\n";
  return code;
}

// ----------------------------------------------------------------------- bounds

int emit(const std::string& command, const json& body, const std::string& out, const std::string& file, double secs) {
  json report{{"header", make_header(command, 0, secs)}, {"body", body}};
  std::cout << report.dump(2) << "\n";
  if (!out.empty() && !file.empty()) std::cerr << "report: " << write_report(out, file, report) << "\n";
  return kOk;
}

struct BoundsArgs {
  std::vector<std::string> pairs;
  bool table = false;
  std::string k2_range = "1:100", chi_range = "1:30";
  std::string variant;
  std::string epsilon = "1/530";
  std::string out;
  bool save = false;
};

int cmd_bounds_surface(const BoundsArgs& a) {
  auto t0 = std::chrono::steady_clock::now();
  auto kv = parse_pairs(a.pairs);
  if (a.table) {
    auto [klo, khi] = parse_range(a.k2_range, "K2");
    auto [clo, chi] = parse_range(a.chi_range, "chi");
    bounds::SurfaceInvariants flags;
    if (!kv.empty()) {
      kv.emplace("K2", "1");
      kv.emplace("chi", "1");
      flags = bounds::SurfaceInvariants::from_pairs(kv);
    }
    std::cout << bounds::bound_table_csv(klo, khi, clo, chi, flags);
    return kOk;
  }
  auto s = bounds::SurfaceInvariants::from_pairs(kv);
  auto r = bounds::surface_bound(s);
  json body = r.to_json();
  body["invariants"] = s.to_json();
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit("bounds surface", body, a.save ? a.out : "", "bounds-surface.json", secs);
}

int cmd_bounds_plurigenus(const BoundsArgs& a) {
  auto kv = parse_pairs(a.pairs);
  long long n = take_integer(kv, "n");
  auto inv = threefold_from(kv);
  auto p = bounds::plurigenus(inv, n);
  json body{{"K3", inv.k3}, {"chi", inv.chi}, {"n", n}, {"p_n", p.value.str()}, {"integral", p.integral},
            {"floor_p_n_ge_5", n >= 3 ? json(p.floor_holds) : json(nullptr)}};
  if (!p.flag.empty()) throw PreconditionError("inadmissible invariants: " + p.flag);
  return emit("bounds plurigenus", body, "", "", 0);
}

int cmd_bounds_threefold(const BoundsArgs& a) {
  auto t0 = std::chrono::steady_clock::now();
  auto kv = parse_pairs(a.pairs);
  json body;
  if (!kv.empty()) {
    auto inv = threefold_from(kv);
    json table = json::array();
    for (long long n = 2; n <= 6; ++n) {
      auto p = bounds::plurigenus(inv, n);
      if (!p.flag.empty()) throw PreconditionError("inadmissible invariants: " + p.flag);
      table.push_back({{"n", n}, {"p_n", p.value.str()}});
    }
    body["invariants"] = {{"K3", inv.k3}, {"chi", inv.chi}};
    body["plurigenera"] = table;
  }
  auto c = bounds::threefold_constant();
  body["constant"] = {{"c", c.c.str()}, {"trail", c.trail},
                      {"note", "explicit constant assembled from the two branches of the argument; an upper bound, not a sharp value"}};
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit("bounds threefold", body, a.save ? a.out : "", "bounds-threefold.json", secs);
}

int cmd_bounds_margin(const BoundsArgs& a) {
  if (a.variant.empty()) throw UsageError("margin needs a variant");
  bounds::MarginSpec m;
  try {
    m = bounds::MarginSpec::parse(a.variant);
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
  auto kv = parse_pairs(a.pairs);
  bounds::MarginResult r;
  if (m.threefold()) {
    r = bounds::decomposability_margin(m, threefold_from(kv));
  } else {
    r = bounds::decomposability_margin(m, bounds::SurfaceInvariants::from_pairs(kv));
  }
  return emit("bounds margin", r.to_json(), "", "", 0);
}

int cmd_bounds_universal(const BoundsArgs& a) {
  auto t0 = std::chrono::steady_clock::now();
  Rational eps;
  try {
    eps = parse_rational(a.epsilon);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad epsilon: ") + e.what());
  }
  auto u = bounds::universal_n(eps);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json report{{"header", make_header("bounds universal-n", 0, secs)}, {"body", u.certificate}};
  std::string path = write_report(a.out, "universal-n-certificate.json", report);
  std::cout << "n_star " << u.n_star << "\n"
            << "leading coefficient " << u.certificate["leading_coefficient"].get<std::string>() << "\n"
            << "certificate: " << path << "\n";
  return kOk;
}

// ------------------------------------------------------------------- reproduce

int cmd_reproduce(const std::string& data, const std::string& out, std::uint64_t seed) {
  testing::AcceptanceOptions o;
  o.data_dir = data;
  o.witness_dir = (fs::path(out) / "witnesses").string();
  o.seed = seed;
  auto t0 = std::chrono::steady_clock::now();
  auto results = testing::run_acceptance(o, [](const testing::CriterionResult& r) { std::cout << r.line() << std::endl; });
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json list = json::array(), timings = json::object();
  bool ok = true;
  for (const auto& r : results) {
    list.push_back(r.to_json());
    timings[r.id + (r.supplementary ? "+" + r.title : "")] = r.seconds;
    if (!r.supplementary) ok = ok && r.pass;
  }
  json report{{"header", make_header("reproduce-paper", seed, secs, timings)}, {"body", {{"criteria", list}, {"all_pass", ok}}}};
  std::cout << "report: " << write_report(out, "acceptance.json", report) << "\n";
  return ok ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice mid-point lemmas, abelian covers of curves and automorphism bounds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  std::string out = env_or("ABELAUT_OUT", ".");
  std::string data = env_or("ABELAUT_DATA", ABELAUT_DATA_DIR);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify-lemmas", "run seeded triples through a counting lemma");
  verify->add_option("--lemma", va.lemma, "2.4, 2.5, 2.6 or 2.7")->required();
  verify->add_option("--trials", va.trials, "number of seeded trials")->check(CLI::PositiveNumber);
  verify->add_option("--dim", va.dim, "ambient dimension")->check(CLI::Range(2, 12));
  verify->add_option("--seed", va.seed, "master seed");
  verify->add_option("--min-size", va.min_size, "least #a3");
  verify->add_option("--max-size", va.max_size, "largest #a3");
  verify->add_option("--side", va.side, "box side for large instances");
  verify->add_flag("--check-convexity", va.check_convexity, "exact hull scans on every triple");
  verify->add_option("--format", va.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--out", out, "output directory (default $ABELAUT_OUT or .)");

  EnumerateArgs ea;
  auto* enumerate = app.add_subcommand("enumerate-covers", "exhaustive search for abelian covers above a bound");
  enumerate->add_option("--bound", ea.bound, "linear bound in g, e.g. 3g+6");
  enumerate->add_option("--gmin", ea.gmin)->check(CLI::Range(0, 64));
  enumerate->add_option("--gmax", ea.gmax)->check(CLI::Range(0, 64));
  enumerate->add_option("--gamma", ea.gamma, "quotient genus")->check(CLI::NonNegativeNumber);
  enumerate->add_option("--kmin", ea.kmin, "least number of branch points");
  enumerate->add_option("--kmax", ea.kmax, "largest number of branch points");
  enumerate->add_flag("--no-hyperelliptic", ea.no_hyperelliptic, "drop data with an involution of quotient genus <= 1");
  enumerate->add_flag("--cyclic", ea.cyclic, "cyclic groups only");
  auto* golden = enumerate->add_option("--golden", ea.golden_path, "compare with a golden list (shipped one if no file)")
                     ->expected(0, 1);
  enumerate->add_option("--data", data, "data directory holding golden/");
  enumerate->add_option("--out", out, "output directory");

  BoundsArgs ba;
  auto* bounds_cmd = app.add_subcommand("bounds", "exact bound arithmetic");
  bounds_cmd->require_subcommand(1);
  auto* surface = bounds_cmd->add_subcommand("surface", "bound for a surface: K2=.. chi=.. and flags");
  surface->add_option("pairs", ba.pairs, "key=value invariants");
  surface->add_flag("--table", ba.table, "CSV table over a (K2, chi) grid");
  surface->add_option("--k2", ba.k2_range, "K2 range lo:hi for --table");
  surface->add_option("--chi", ba.chi_range, "chi range lo:hi for --table");
  surface->add_flag("--save", ba.save, "also write the report to the output directory");
  surface->add_option("--out", out, "output directory");
  auto* threefold = bounds_cmd->add_subcommand("threefold", "explicit 3-fold constant; K3=.. chi=.. adds plurigenera");
  threefold->add_option("pairs", ba.pairs, "key=value invariants");
  threefold->add_flag("--save", ba.save, "also write the report to the output directory");
  threefold->add_option("--out", out, "output directory");
  auto* pluri = bounds_cmd->add_subcommand("plurigenus", "p_n for K3=.. chi=.. n=..");
  pluri->add_option("pairs", ba.pairs, "key=value invariants");
  auto* margin = bounds_cmd->add_subcommand("margin", "decomposability margin");
  margin->add_option("variant", ba.variant, "prop3.3(n), prop6.3, lemma7.2, lemma7.4, lemma7.6-12, lemma7.6-16")->required();
  margin->add_option("pairs", ba.pairs, "key=value invariants");
  auto* universal = bounds_cmd->add_subcommand("universal-n", "least universal N with certificate");
  universal->add_option("--epsilon", ba.epsilon, "epsilon, default 1/530");
  universal->add_option("--out", out, "output directory");

  std::uint64_t seed = 20020;
  auto* reproduce = app.add_subcommand("reproduce-paper", "run the full acceptance suite");
  reproduce->add_option("--seed", seed, "master seed");
  reproduce->add_option("--data", data, "data directory holding golden/");
  reproduce->add_option("--out", out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    va.out = ea.out = ba.out = out;
    ea.data = data;
    ea.golden = golden->count() > 0;
    for (const char* name : {"--bound", "--gmin", "--gmax", "--gamma", "--kmin", "--kmax", "--no-hyperelliptic", "--cyclic"})
      if (enumerate->count(name)) ea.explicit_options.insert(name);
    if (*verify) return cmd_verify(va);
    if (*enumerate) return cmd_enumerate(ea);
    if (*surface) return cmd_bounds_surface(ba);
    if (*threefold) return cmd_bounds_threefold(ba);
    if (*pluri) return cmd_bounds_plurigenus(ba);
    if (*margin) return cmd_bounds_margin(ba);
    if (*universal) return cmd_bounds_universal(ba);
    if (*reproduce) return cmd_reproduce(data, out, seed);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "invalid data: " << e.what() << "\n";
    return kInvalidData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kUsage;
}
