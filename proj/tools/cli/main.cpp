#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "report.hpp"
#include "vc2lab/vc2lab.h"

using nlohmann::json;

namespace {

struct ApiError : std::runtime_error {
  vc2_status status;
  ApiError(vc2_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

void check(vc2_status s) {
  if (s != VC2_OK) throw ApiError(s, vc2_last_error());
}

/// Takes ownership of a library-allocated string.
std::string take(char* s) {
  std::string out = s ? s : "";
  vc2_string_free(s);
  return out;
}

json take_json(char* s) { return json::parse(take(s)); }

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Basis = std::unique_ptr<vc2_basis, Deleter<vc2_basis, vc2_basis_free>>;
using Set = std::unique_ptr<vc2_set, Deleter<vc2_set, vc2_set_free>>;
using Construction = std::unique_ptr<vc2_construction, Deleter<vc2_construction, vc2_construction_free>>;
using Colouring = std::unique_ptr<vc2_colouring, Deleter<vc2_colouring, vc2_colouring_free>>;

Basis make_basis(std::uint32_t p, std::size_t n) {
  vc2_basis* b = nullptr;
  check(vc2_basis_build(p, n, &b));
  return Basis(b);
}

Set make_set(const std::string& kind, std::uint32_t p, std::size_t n) {
  vc2_set* s = nullptr;
  if (kind == "gs") {
    check(vc2_set_gs(p, n, &s));
  } else {
    const Basis b = make_basis(p, n);
    check(vc2_set_qgs(b.get(), &s));
  }
  return Set(s);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ApiError(VC2_ERR_IO, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ApiError(VC2_ERR_IO, "cannot write " + path);
  out << content;
  out.flush();
  if (!out) throw ApiError(VC2_ERR_IO, "write failed for " + path);
}

/// "0,1,-1;0,-1,1" -> flattened residues, each point of length n.
std::vector<std::uint32_t> parse_points(const std::string& text, std::uint32_t p, std::size_t n, std::size_t& count) {
  std::vector<std::uint32_t> out;
  count = 0;
  // Points are separated by ';' or whitespace.
  std::string normalised = text;
  std::replace_if(normalised.begin(), normalised.end(), [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); }, ';');
  std::stringstream pts(normalised);
  std::string point;
  while (std::getline(pts, point, ';')) {
    if (point.empty()) continue;
    std::stringstream coords(point);
    std::string c;
    std::size_t len = 0;
    while (std::getline(coords, c, ',')) {
      long long v = 0;
      try {
        v = std::stoll(c);
      } catch (const std::exception&) {
        throw ApiError(VC2_ERR_PARSE, "bad coordinate '" + c + "'");
      }
      const long long r = v % static_cast<long long>(p);
      out.push_back(static_cast<std::uint32_t>(r < 0 ? r + p : r));
      ++len;
    }
    if (len != n) throw ApiError(VC2_ERR_INVALID_ARGUMENT, "point '" + point + "' does not have " + std::to_string(n) + " coordinates");
    ++count;
  }
  return out;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

struct Globals {
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string format = "text";
  std::string output;
  bool timing = false;
};

struct Params {
  std::uint32_t p = 3;
  std::size_t n = 3;
  std::string set = "gs";
  std::size_t k_max = 20;
  std::string mode = "auto";
  std::uint64_t samples = 10000;
  std::string points;
  unsigned k = 2;
  std::string construction_in;
  std::string construction_out;
  std::size_t linear = 2;
  std::size_t quad = 2;
  std::size_t instances = 20;
  std::size_t left = 501;
  std::size_t right = 501;
  unsigned colours = 5;
  std::size_t bq = 3;
  std::size_t bs = 3;
  std::size_t count = 1;
  std::string input;
  std::uint64_t r = 5;
  std::string file;
};

cli::RunReport start(const char* command, const Globals& g, cli::Outcome outcome = cli::Outcome::pass) {
  cli::RunReport r;
  r.command = command;
  r.outcome = outcome;
  r.seed = g.seed;
  return r;
}

void save_artifact(const Globals& g, cli::RunReport& report, const json& artifact) {
  if (g.output.empty()) return;
  write_file(g.output, artifact.dump(2) + "\n");
  report.certificate_path = g.output;
}

cli::RunReport run_basis(const Globals& g, const Params& a) {
  if (a.n % 2 == 0)
    std::cerr << "warning: n = " << a.n << " is even; the high-rank basis is only claimed for odd n, "
              << "though the trace construction is valid here too\n";
  auto r = start("basis", g);
  const Basis b = make_basis(a.p, a.n);
  bool exhaustive = a.mode == "exhaustive";
  if (a.mode == "auto") {
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < a.n && size <= 1'000'000; ++i) size *= a.p;
    exhaustive = size <= 1'000'000;
  }
  int passed = 0;
  char* rep = nullptr;
  check(vc2_basis_check(b.get(), exhaustive, a.samples, g.seed, g.threads, &passed, &rep));
  const json report = take_json(rep);
  char* bj = nullptr;
  check(vc2_basis_to_json(b.get(), &bj));
  const json basis = take_json(bj);
  r.outcome = passed ? cli::Outcome::pass : cli::Outcome::fail;
  r.details = {{"p", a.p}, {"n", a.n}, {"poly", basis["poly"]}, {"check", report}};
  r.csv = {{std::to_string(a.p), std::to_string(a.n), report["mode"], std::to_string(report["checked"].get<std::uint64_t>()),
            bool_str(passed)}};
  r.text = {"p = " + std::to_string(a.p) + ", n = " + std::to_string(a.n) + ", poly " + basis["poly"].dump(),
            report["mode"].get<std::string>() + " full-rank check over " + report["checked"].dump() + " combinations"};
  if (!passed) r.text.push_back("rank-deficient combination " + report["witness"].dump());
  save_artifact(g, r, basis);
  return r;
}

cli::RunReport run_vc_dim(const Globals& g, const Params& a) {
  auto r = start("vc-dim", g, cli::Outcome::value);
  const Set s = make_set(a.set, a.p, a.n);
  std::size_t dim = 0;
  char* cert = nullptr;
  check(vc2_vc_dim(s.get(), a.k_max, g.threads, &dim, &cert));
  const json c = take_json(cert);
  r.value = dim;
  r.details = {{"set", a.set}, {"p", a.p}, {"n", a.n}, {"k_max", a.k_max}, {"shattered_set", c["S"]}};
  r.csv = {{a.set, std::to_string(a.p), std::to_string(a.n), std::to_string(dim)}};
  r.text = {a.set + "(" + std::to_string(a.p) + "," + std::to_string(a.n) + ") has VC-dimension " +
                std::to_string(dim),
            "shattered set " + c["S"].dump()};
  save_artifact(g, r, c);
  return r;
}

cli::RunReport run_shatter_check(const Globals& g, const Params& a) {
  auto r = start("shatter-check", g);
  const Set s = make_set(a.set, a.p, a.n);
  std::size_t count = 0;
  const auto pts = parse_points(a.points, a.p, a.n, count);
  int shattered = 0;
  char* res = nullptr;
  check(vc2_shatter_check(s.get(), pts.data(), count, g.threads, &shattered, &res));
  const json j = take_json(res);
  r.outcome = shattered ? cli::Outcome::pass : cli::Outcome::fail;
  r.details = {{"set", a.set}, {"p", a.p}, {"n", a.n}, {"points", count}};
  if (!shattered) r.details["missing"] = j["missing"];
  r.csv = {{a.set, std::to_string(a.p), std::to_string(a.n), std::to_string(count), bool_str(shattered)}};
  r.text = {shattered ? "every subset is cut out by some translate"
                      : "no translate realises pattern " + j["missing"].dump()};
  if (shattered) save_artifact(g, r, j);
  return r;
}

cli::RunReport run_vc2_verify(const Globals& g, const Params& a) {
  auto r = start("vc2-verify", g);
  Construction c;
  vc2_construction* raw = nullptr;
  if (!a.construction_in.empty()) {
    check(vc2_construction_from_json(read_file(a.construction_in).c_str(), &raw));
    c.reset(raw);
  } else {
    if (a.k != 2 && a.k != 3) throw ApiError(VC2_ERR_INVALID_ARGUMENT, "--k must be 2 or 3");
    const std::size_t n = a.n != 0 ? a.n : (a.k == 2 ? 13 : 31);
    const Basis b = make_basis(a.p, n);
    check(vc2_construction_build(b.get(), a.k, g.seed, &raw));
    c.reset(raw);
  }
  char* cj = nullptr;
  check(vc2_construction_to_json(c.get(), &cj));
  const json construction = take_json(cj);
  if (!a.construction_out.empty()) write_file(a.construction_out, construction.dump(2) + "\n");

  int all = 0;
  char* res = nullptr;
  check(vc2_construction_realize_all(c.get(), g.seed, g.threads, &all, &res));
  const json cert = take_json(res);
  const unsigned k = construction["k"];
  const std::uint32_t p = construction["basis"]["p"];
  const std::size_t n = construction["basis"]["n"];
  const std::size_t maps = std::size_t{1} << (k * k);
  json verdict = nullptr;
  bool verified = false;
  if (all) {
    int ok = 0;
    char* rep = nullptr;
    check(vc2_verify_certificate(cert.dump().c_str(), &ok, &rep));
    verdict = take_json(rep);
    verified = ok != 0;
  }
  r.outcome = all && verified ? cli::Outcome::pass : cli::Outcome::fail;
  r.details = {{"k", k}, {"p", p}, {"n", n}, {"maps", maps}, {"subspaces", construction["subspaces"]},
               {"complexity", construction["factor"]["linear"].size() + construction["factor"]["quad"].size()},
               {"verification", verdict}};
  if (!all) r.details["failed_at"] = cert["failed_at"];
  r.csv = {{std::to_string(k), std::to_string(p), std::to_string(n), std::to_string(all ? maps : 0),
            bool_str(verified)}};
  r.text = {"k = " + std::to_string(k) + ", p = " + std::to_string(p) + ", n = " + std::to_string(n)};
  if (all)
    r.text.push_back(std::to_string(maps) + " containment maps realised; independent re-check " +
                     (verified ? "accepted" : "REJECTED: " + verdict["message"].get<std::string>()));
  else
    r.text.push_back("no shift realises map " + cert["failed_at"].dump());
  if (all) save_artifact(g, r, cert);
  return r;
}

cli::RunReport run_atom_census(const Globals& g, const Params& a) {
  auto r = start("atom-census", g);
  const Basis b = make_basis(a.p, a.n);
  char* fj = nullptr;
  check(vc2_random_factor(b.get(), a.linear, a.quad, g.seed, &fj));
  const std::string factor = take(fj);
  int holds = 0;
  char* rep = nullptr;
  check(vc2_atom_census(b.get(), factor.c_str(), g.threads, &holds, &rep));
  const json report = take_json(rep);
  r.outcome = holds ? cli::Outcome::pass : cli::Outcome::fail;
  r.details = report;
  r.details["factor"] = json::parse(factor);
  r.details["p"] = a.p;
  r.details["n"] = a.n;
  r.csv = {{std::to_string(a.p), std::to_string(a.n), std::to_string(a.linear), std::to_string(a.quad),
            report["atoms"].dump(), report["min_size"].dump(), report["max_size"].dump(), bool_str(holds)}};
  r.text = {report["atoms"].dump() + " atoms, sizes in [" + report["min_size"].dump() + ", " +
                report["max_size"].dump() + "]",
            std::string("size bound with r = n ") + (holds ? "holds for every atom" : "violated")};
  save_artifact(g, r, r.details);
  return r;
}

cli::RunReport run_prop32(const Globals& g, const Params& a) {
  auto r = start("prop32-check", g);
  const Basis b = make_basis(a.p, a.n);
  int passed = 0;
  char* rep = nullptr;
  check(vc2_prop32_suite(b.get(), a.instances, g.seed, g.threads, &passed, &rep));
  const json report = take_json(rep);
  r.outcome = passed ? cli::Outcome::pass : cli::Outcome::fail;
  r.details = report;
  r.details["p"] = a.p;
  r.details["n"] = a.n;
  std::size_t i = 0;
  for (const auto& inst : report["instances"])
    r.csv.push_back({std::to_string(i++), inst["m"].dump(), inst["realizing_z"].dump(), bool_str(inst["vacuous"]),
                     bool_str(inst["passed"])});
  r.text = {report["instances"].size() == 0 ? "no instances"
                                            : std::to_string(report["instances"].size()) + " instances, " +
                                                  report["non_vacuous"].dump() + " non-vacuous, " +
                                                  report["vacuous"].dump() + " vacuous",
            report["checked_z"].dump() + " realising shifts checked"};
  save_artifact(g, r, report);
  return r;
}

cli::RunReport run_ramsey(const Globals& g, const Params& a) {
  auto r = start("ramsey-find", g);
  std::vector<Colouring> colourings;
  if (!a.input.empty()) {
    vc2_colouring* c = nullptr;
    check(vc2_colouring_parse(read_file(a.input).c_str(), &c));
    colourings.emplace_back(c);
  } else {
    for (std::size_t i = 0; i < a.count; ++i) {
      vc2_colouring* c = nullptr;
      check(vc2_colouring_random(a.left, a.right, a.colours, g.seed, i, &c));
      colourings.emplace_back(c);
    }
  }
  json results = json::array();
  std::size_t found_all = 0, constructive = 0;
  for (std::size_t i = 0; i < colourings.size(); ++i) {
    int found = 0;
    char* res = nullptr;
    check(vc2_find_biclique(colourings[i].get(), a.bq, a.bs, &found, &res));
    json j = take_json(res);
    found_all += found ? 1 : 0;
    constructive += j["constructive"].get<bool>() ? 1 : 0;
    r.csv.push_back({std::to_string(i), bool_str(found), bool_str(j["constructive"]),
                     found ? j["colour"].dump() : "", j["inspections"].dump()});
    results.push_back(std::move(j));
  }
  r.outcome = found_all == colourings.size() ? cli::Outcome::pass : cli::Outcome::fail;
  r.details = {{"q", a.bq}, {"s", a.bs}, {"colourings", colourings.size()}, {"found", found_all},
               {"constructive", constructive}, {"results", results}};
  if (a.input.empty()) r.details.update({{"m", a.left}, {"n", a.right}, {"r", a.colours}});
  r.text = {"monochromatic K_{" + std::to_string(a.bq) + "," + std::to_string(a.bs) + "} found in " +
            std::to_string(found_all) + " of " + std::to_string(colourings.size()) + " colourings (" +
            std::to_string(constructive) + " by the constructive path)"};
  save_artifact(g, r, results);
  return r;
}

cli::RunReport run_br_bound(const Globals& g, const Params& a) {
  auto r = start("br-bound", g, cli::Outcome::value);
  std::uint64_t value = 0;
  char* rep = nullptr;
  check(vc2_br_bound(a.r, &value, &rep));
  const json report = take_json(rep);
  r.value = value;
  r.details = {{"r", a.r}, {"steps", report["steps"]}};
  r.csv = {{std::to_string(a.r), std::to_string(value)}};
  r.text = {"br(" + std::to_string(a.r) + "; 3, 3) <= " + std::to_string(value)};
  for (const auto& step : report["steps"])
    r.text.push_back((step["holds"].get<bool>() ? "ok   " : "FAIL ") + step["claim"].get<std::string>());
  save_artifact(g, r, report);
  return r;
}

cli::RunReport run_verify(const Globals& g, const Params& a) {
  auto r = start("verify-certificate", g);
  int ok = 0;
  char* rep = nullptr;
  check(vc2_verify_certificate(read_file(a.file).c_str(), &ok, &rep));
  const json report = take_json(rep);
  r.outcome = ok ? cli::Outcome::pass : cli::Outcome::fail;
  r.details = report;
  r.details["file"] = a.file;
  r.csv = {{a.file, report["kind"], bool_str(ok), report["message"]}};
  r.text = {a.file + ": " + report["message"].get<std::string>()};
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Green-Sanders set VC / VC_2 toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.set_version_flag("--version", vc2_version());

  Globals g;
  if (const char* env = std::getenv("VC2LAB_THREADS")) {
    try {
      g.threads = static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring VC2LAB_THREADS=" << env << '\n';
    }
  }
  app.add_option("--seed", g.seed, "Master seed for all randomness")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker cap (0 = all cores; env VC2LAB_THREADS)");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}))->capture_default_str();
  app.add_option("--output", g.output, "Write the certificate or artifact to this path");
  app.add_flag("--timing", g.timing, "Include wall time in the report");

  Params a;
  const auto prime = [](CLI::App* sub, Params& prm, std::uint32_t def_p) {
    prm.p = def_p;
    sub->add_option("--p", prm.p, "Odd prime")->capture_default_str();
  };

  auto* basis = app.add_subcommand("basis", "Build the trace-form basis and check the full-rank property");
  prime(basis, a, 3);
  basis->add_option("--n", a.n, "Dimension")->required();
  basis->add_option("--mode", a.mode, "Check mode")->check(CLI::IsMember({"auto", "exhaustive", "sampled"}))->capture_default_str();
  basis->add_option("--samples", a.samples, "Combinations to sample in sampled mode")->capture_default_str();

  auto* vcdim = app.add_subcommand("vc-dim", "VC-dimension of GS(p,n) or QGS(p,n)");
  prime(vcdim, a, 3);
  vcdim->add_option("--n", a.n, "Dimension")->required();
  vcdim->add_option("--set", a.set, "Set family")->check(CLI::IsMember({"gs", "qgs"}))->capture_default_str();
  vcdim->add_option("--k-max", a.k_max, "Largest set size to search")->capture_default_str();

  auto* shatter = app.add_subcommand("shatter-check", "Check whether translates shatter the given points");
  prime(shatter, a, 3);
  shatter->add_option("--n", a.n, "Dimension")->required();
  shatter->add_option("--set", a.set, "Set family")->check(CLI::IsMember({"gs", "qgs"}))->capture_default_str();
  shatter->add_option("--points", a.points, "Points as 'a,b,c;d,e,f' or 'a,b,c d,e,f' (negative values allowed)")->required();

  auto* vc2 = app.add_subcommand("vc2-verify", "Build the shattered-grid construction and realise every map");
  prime(vc2, a, 3);
  vc2->add_option("--k", a.k, "Grid side (2 or 3)")->check(CLI::IsMember({2, 3}))->capture_default_str();
  vc2->add_option("--n", a.n, "Dimension (default: smallest admissible)");
  vc2->add_option("--construction", a.construction_in, "Load a saved construction instead of building one");
  vc2->add_option("--save-construction", a.construction_out, "Write the construction to this path");
  a.n = 0;

  auto* census = app.add_subcommand("atom-census", "Exact atom sizes of a seeded quadratic factor");
  prime(census, a, 3);
  census->add_option("--n", a.n, "Dimension")->required();
  census->add_option("--linear", a.linear, "Number of linear forms")->capture_default_str();
  census->add_option("--quad", a.quad, "Number of quadratic forms")->capture_default_str();

  auto* prop32 = app.add_subcommand("prop32-check", "Exhaustive shift search on seeded 4x4 grid instances");
  prime(prop32, a, 3);
  prop32->add_option("--n", a.n, "Dimension")->required();
  prop32->add_option("--instances", a.instances, "Number of grid instances")->capture_default_str();

  auto* ramsey = app.add_subcommand("ramsey-find", "Find a monochromatic biclique in r-colourings of K_{m,n}");
  ramsey->add_option("--m", a.left, "Left side size")->capture_default_str();
  ramsey->add_option("--n", a.right, "Right side size")->capture_default_str();
  ramsey->add_option("--r", a.colours, "Number of colours")->capture_default_str();
  ramsey->add_option("--q", a.bq, "Left part of the biclique")->capture_default_str();
  ramsey->add_option("--s", a.bs, "Right part of the biclique")->capture_default_str();
  ramsey->add_option("--count", a.count, "Number of seeded random colourings")->capture_default_str();
  ramsey->add_option("--input", a.input, "Colouring file ('m n r' header, then m rows)");

  auto* br = app.add_subcommand("br-bound", "Upper bound on br(r; 3, 3) with its arithmetic checked");
  br->add_option("--r", a.r, "Number of colours")->required();

  auto* verify = app.add_subcommand("verify-certificate", "Re-check a certificate file");
  verify->add_option("file", a.file, "Certificate JSON")->required();

  CLI11_PARSE(app, argc, argv);

  // vc2-verify uses n = 0 for "smallest admissible"; the other commands
  // require --n explicitly.
  const std::map<const CLI::App*, cli::RunReport (*)(const Globals&, const Params&)> handlers{
      {basis, run_basis},     {vcdim, run_vc_dim},         {shatter, run_shatter_check},
      {vc2, run_vc2_verify},  {census, run_atom_census},   {prop32, run_prop32},
      {ramsey, run_ramsey},   {br, run_br_bound},          {verify, run_verify}};

  const cli::Format format = g.format == "json"  ? cli::Format::json
                             : g.format == "csv" ? cli::Format::csv
                                                 : cli::Format::text;
  try {
    for (const auto& [sub, handler] : handlers) {
      if (!sub->parsed()) continue;
      const auto start = std::chrono::steady_clock::now();
      cli::RunReport report = handler(g, a);
      if (g.timing)
        report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      std::cout << cli::emit_report(report, format);
      return report.outcome == cli::Outcome::fail ? 1 : 0;
    }
  } catch (const ApiError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.status == VC2_ERR_INVALID_ARGUMENT || e.status == VC2_ERR_LIMIT_EXCEEDED ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
