#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "pxca/claims.hpp"
#include "pxca/engine.hpp"
#include "pxca/errors.hpp"
#include "pxca/expansivity.hpp"
#include "pxca/freegroup.hpp"
#include "pxca/presets.hpp"
#include "pxca/render.hpp"
#include "pxca/report.hpp"
#include "pxca/z2subst.hpp"

using namespace pxca;
namespace fs = std::filesystem;

namespace {

struct Globals {
  std::uint64_t seed = 20240611;
  int threads = 1;
  std::string out;
};

using clk = std::chrono::steady_clock;

std::string seconds_since(clk::time_point t0) {
  std::ostringstream o;
  o.precision(3);
  o << std::fixed << std::chrono::duration<double>(clk::now() - t0).count();
  return o.str();
}

// "key=value" argument, with the key checked
std::string keyed(const std::string& arg, const std::string& key) {
  auto eq = arg.find('=');
  if (eq == std::string::npos || arg.substr(0, eq) != key)
    throw usage_error("expected " + key + "=..., got '" + arg + "'");
  return arg.substr(eq + 1);
}

// free group word with optional repeat counts: "3a" -> "a a a", "2B a" -> "B B a"
Site parse_word(const Lattice& lat, const std::string& text) {
  std::istringstream in(text);
  std::string tok, expanded;
  while (in >> tok) {
    std::size_t i = 0;
    while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i;
    int rep = i ? std::stoi(tok.substr(0, i)) : 1;
    std::string rest = tok.substr(i);
    if (rest.empty()) throw usage_error("bad word token '" + tok + "'");
    for (int r = 0; r < rep; ++r)
      for (char ch : rest) {
        expanded += ch;
        expanded += ' ';
      }
  }
  return parse_site(lat, expanded);
}

// spot:<state>[@site], file:<path>, random:<radius>[,<density>]
Configuration parse_init(const Rule& rule, const std::string& spec, std::uint64_t seed) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon), arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  const Lattice& lat = rule.lattice();
  if (kind == "file") {
    Configuration c = load_configuration(arg);
    if (!(c.lattice() == lat) || c.states() != rule.states())
      throw usage_error("configuration file does not match the rule's lattice and alphabet");
    return c;
  }
  if (kind == "spot") {
    std::string state = arg, where;
    if (auto at = arg.find('@'); at != std::string::npos) {
      state = arg.substr(0, at);
      where = arg.substr(at + 1);
    }
    std::vector<int> digits;
    std::stringstream ss(state);
    for (std::string d; std::getline(ss, d, ',');) digits.push_back(std::stoi(d));
    State s = digits.size() == 1 ? digits[0] : rule.alphabet().compose(digits);
    if (s < 0 || s >= rule.states()) throw usage_error("state out of range: " + state);
    Site z = where.empty() ? identity(lat) : (lat.kind == LatticeKind::free ? parse_word(lat, where) : parse_site(lat, where));
    return Configuration::spot(lat, rule.states(), z, s, rule.quiescent());
  }
  if (kind == "random") {
    std::int64_t radius = 8;
    double density = 0.5;
    if (!arg.empty()) {
      auto comma = arg.find(',');
      radius = std::stoll(arg.substr(0, comma));
      if (comma != std::string::npos) density = std::stod(arg.substr(comma + 1));
    }
    std::mt19937_64 rng(seed);
    return random_configuration(lat, rule.states(), radius, density, rng);
  }
  throw usage_error("unknown init '" + spec + "' (spot:<state>[@site], file:<path>, random:<radius>[,<density>])");
}

fs::path out_dir(const Globals& g) {
  fs::path p(g.out);
  fs::create_directories(p);
  return p;
}

int finish(RunReport& rep) {
  rep.print(std::cout);
  return rep.passed() ? 0 : 1;
}

struct SimulateArgs {
  std::string rule, init = "spot:1";
  std::int64_t steps = 0, window = -1;
  bool render = false;
};

int cmd_simulate(const SimulateArgs& a, const Globals& g) {
  Rule rule = make_rule(a.rule);
  Configuration c = parse_init(rule, a.init, g.seed);
  auto t0 = clk::now();
  Configuration final_c = iterate(rule, c, a.steps);
  std::string sim_secs = seconds_since(t0);
  if (g.out.empty()) {
    if (a.render) throw usage_error("--render needs --out DIR");
    write_configuration(std::cout, final_c);
    return 0;
  }
  RunReport rep("simulate");
  fs::path dir = out_dir(g);
  save_configuration((dir / "initial.cfg").string(), c);
  save_configuration((dir / "final.cfg").string(), final_c);
  rep.set("rule", rule.name());
  rep.set("lattice", format_lattice(rule.lattice()));
  rep.set("steps", a.steps);
  rep.set("final_cells", final_c.count());
  rep.set("artifact.initial", (dir / "initial.cfg").string());
  rep.set("artifact.final", (dir / "final.cfg").string());
  rep.set("seconds.simulate", sim_secs);
  if (a.render) {
    t0 = clk::now();
    std::int64_t window = a.window >= 0 ? a.window : std::max<std::int64_t>(c.size(), 0) + a.steps * rule.radius();
    if (rule.lattice().kind == LatticeKind::free) {
      std::ofstream(dir / "spacetime.txt") << render_text(rule, c, window, a.steps);
      rep.set("artifact.text", (dir / "spacetime.txt").string());
    } else {
      std::vector<PgmImage> imgs = render_spacetime(rule, c, window, a.steps);
      if (imgs.size() == 1) {
        write_pgm((dir / "spacetime.pgm").string(), imgs[0]);
        rep.set("artifact.image", (dir / "spacetime.pgm").string());
      } else {
        for (std::size_t i = 0; i < imgs.size(); ++i) {
          char name[32];
          std::snprintf(name, sizeof name, "frame_%05zu.pgm", i);
          write_pgm((dir / name).string(), imgs[i]);
        }
        rep.set("artifact.frames", std::to_string(imgs.size()) + " x " + (dir / "frame_NNNNN.pgm").string());
      }
    }
    rep.set("render_window", window);
    rep.set("seconds.render", seconds_since(t0));
  }
  return finish(rep);
}

int cmd_verify(const std::vector<std::string>& only, const Globals& g) {
  RunReport rep("verify");
  ClaimOptions opt;
  opt.seed = g.seed;
  opt.threads = g.threads;
  std::vector<std::string> names;
  if (only.empty())
    for (const ClaimInfo& c : claim_list()) names.push_back(c.name);
  else
    names = only;
  for (const std::string& n : names) run_claim(n, rep, opt);  // unknown names throw before any output
  rep.set("seed", g.seed);
  rep.set("threads", g.threads);
  return finish(rep);
}

struct BenchArgs {
  std::int64_t size = 4096, steps = 256;
};

int cmd_bench(const BenchArgs& a, const Globals& g) {
  if (a.size < 1 || a.steps < 0) throw usage_error("size must be positive and steps non-negative");
  RunReport rep("bench");
  Rule vn2 = make_rule("vn2");
  std::mt19937_64 rng(g.seed);
  Configuration c(Lattice::plane(), 2);
  // sparse seeds spanning the window: the packed backend's work depends on the box, not the density
  std::bernoulli_distribution on(1.0 / 64);
  std::int64_t half = a.size / 2;
  for (std::int64_t y = -half; y < a.size - half; ++y)
    for (std::int64_t x = -half; x < a.size - half; ++x)
      if (on(rng)) c.set(Site::z2(x, y), 1);
  Evolution ev(vn2, c);
  auto t0 = clk::now();
  ev.advance(a.steps);
  auto t1 = clk::now();
  double secs = std::chrono::duration<double>(t1 - t0).count();
  std::uint64_t updates = static_cast<std::uint64_t>(a.size) * static_cast<std::uint64_t>(a.size) *
                          static_cast<std::uint64_t>(a.steps);
  rep.set("backend", ev.backend());
  rep.set("window", std::to_string(a.size) + "x" + std::to_string(a.size));
  rep.set("steps", a.steps);
  rep.set("cell_updates", updates);
  rep.set("seconds.stepping", seconds_since(t0));
  rep.set("updates_per_second", static_cast<std::uint64_t>(secs > 0 ? static_cast<double>(updates) / secs : 0));

  SearchOptions so;
  so.threads = g.threads;
  t0 = clk::now();
  ExpansivityVerdict v = kexp_search(vn2_linear(), 2, 8, 3, 256, so);
  double ssecs = std::chrono::duration<double>(clk::now() - t0).count();
  rep.set("search", "vn2 k=2 R=8 m=3 t_max=256");
  rep.set("search.found", v.found ? "yes" : "no");
  rep.set("search.candidates", v.examined);
  rep.set("search.candidates_per_second",
          static_cast<std::uint64_t>(ssecs > 0 ? static_cast<double>(v.examined) / ssecs : 0));
  rep.print(std::cout);
  return 0;
}

struct KexpArgs {
  std::string rule;
  int k = 1;
  std::int64_t radius = 4;
  int window = 1;
  std::int64_t tmax = 64;
  std::string alpha;
  std::int64_t threshold = -1;
  std::string init;
  bool pairs = false;
};

int cmd_check_kexp(const KexpArgs& a, const Globals& g) {
  Rule rule = make_rule(a.rule);
  RunReport rep("check-kexp");
  SearchOptions so;
  so.threads = g.threads;
  auto t0 = clk::now();
  std::optional<LinearRuleZm> lin = rule.as_linear();
  ExpansivityVerdict v = (lin && !a.pairs) ? kexp_search(*lin, a.k, a.radius, a.window, a.tmax, so)
                                           : pair_preexp_probe(rule, a.k, a.radius, a.window, a.tmax, so);
  rep.set("rule", rule.name());
  rep.set("method", (lin && !a.pairs) ? "kexp_search" : "pair_preexp_probe");
  rep.set("k", a.k);
  rep.set("support_radius", a.radius);
  rep.set("window", a.window);
  rep.set("t_max", a.tmax);
  rep.set("examined", v.examined);
  std::ostringstream space;
  space << static_cast<double>(v.search_space);
  rep.set("search_space", space.str());
  rep.set("verdict", v.found ? "witness" : "no_witness_within_bounds");
  rep.set("seconds.search", seconds_since(t0));
  if (v.found) {
    std::string cells;
    for (const auto& [z, s] : v.witness.cells()) cells += (cells.empty() ? "" : " ") + format_site(z) + ":" + std::to_string(s);
    rep.note("witness " + cells + " (null radius-" + std::to_string(a.window) + " difference trace through t=" +
             std::to_string(a.tmax) + ")");
    rep.check("witness-reverified", v.reverified, "plain simulation agrees with the search");
    if (!g.out.empty()) {
      fs::path dir = out_dir(g);
      save_configuration((dir / "witness.cfg").string(), v.witness);
      save_configuration((dir / "partner.cfg").string(), v.partner);
      rep.set("artifact.witness", (dir / "witness.cfg").string());
      rep.set("artifact.partner", (dir / "partner.cfg").string());
    }
  }
  if (!a.alpha.empty()) {
    if (rule.lattice().kind != LatticeKind::z) throw usage_error("--alpha needs a rule on Z");
    auto slash = a.alpha.find('/');
    std::int64_t num = std::stoll(a.alpha.substr(0, slash));
    std::int64_t den = slash == std::string::npos ? 1 : std::stoll(a.alpha.substr(slash + 1));
    // fronts of the witness pair, or of --init (default spot 1) against the quiescent configuration
    Configuration c = v.found ? v.witness
                              : (a.init.empty() ? Configuration::spot(rule.lattice(), rule.states(), Site::z(0), 1,
                                                                      rule.quiescent())
                                                : parse_init(rule, a.init, g.seed));
    Configuration d = v.found ? v.partner : Configuration(rule.lattice(), rule.states(), rule.quiescent());
    DirectionalFronts df = directional_fronts(rule, c, d, num, den, a.tmax, a.threshold);
    rep.set("alpha", std::to_string(num) + "/" + std::to_string(den));
    rep.set("front_threshold", df.threshold);
    rep.set("left_escapes_below", df.left_escapes_below ? "yes" : "no");
    rep.set("right_escapes_above", df.right_escapes_above ? "yes" : "no");
  }
  return finish(rep);
}

struct FreeArgs {
  int n = 2;
  std::string profile;
  std::vector<std::string> witness;
  int window = 3;
  std::int64_t tmax = 64;
  int oddk = 0;
  std::int64_t radius = 2;
};

int cmd_freegroup(const FreeArgs& a, const Globals&) {
  RunReport rep("freegroup");
  Lattice lat = Lattice::free_group(a.n);
  rep.set("n", a.n);
  bool any = false;
  if (!a.profile.empty()) {
    any = true;
    auto comma = a.profile.find(',');
    if (comma == std::string::npos) throw usage_error("--profile expects L,T");
    int L = std::stoi(a.profile.substr(0, comma));
    std::int64_t T = std::stoll(a.profile.substr(comma + 1));
    auto t0 = clk::now();
    LayerProfile lp = layer_profile(a.n, L, T);
    for (std::size_t t = 0; t < lp.profile.size(); ++t) {
      std::string row = "t=" + std::to_string(t) + " ";
      for (State s : lp.profile[t]) row += std::to_string(s);
      rep.note(row);
    }
    rep.check("layer-equivariance", lp.equivariant, "cells checked " + std::to_string(lp.cells_checked) +
                                                         (lp.first_violation.empty() ? "" : ", " + lp.first_violation));
    rep.check("layer-diagonal", lp.diagonal_ones, "profile[l][l] = 1");
    rep.check("layer-recurrence", lp.recurrence_agrees, "radial recurrence matches the simulation");
    rep.set("seconds.profile", seconds_since(t0));
  }
  if (!a.witness.empty()) {
    any = true;
    if (a.witness.size() != 2) throw usage_error("--witness expects z=<word> sprime=<letter>");
    Site z = parse_word(lat, keyed(a.witness[0], "z"));
    Site sp = parse_word(lat, keyed(a.witness[1], "sprime"));
    auto t0 = clk::now();
    FreeWitnessReport w = fg_non2exp_witness(a.n, z, sp, a.window, a.tmax);
    rep.set("x", format_site(w.x));
    rep.set("y", format_site(w.y));
    rep.check("witness-equidistant", w.equidistant, "x and y equidistant from every cell of B_m");
    rep.check("witness-totalistic", w.totalistic, "rule commutes with tree automorphisms fixing the identity");
    rep.check("witness-radial", w.radial_null, "layer recurrence route through t=" + std::to_string(a.tmax));
    rep.check("witness-quotient", w.quotient_null, "path quotient route through t=" + std::to_string(a.tmax));
    rep.check("witness-direct", w.direct_null, "plain simulation through t=" + std::to_string(w.direct_horizon));
    rep.set("seconds.witness", seconds_since(t0));
  }
  if (a.oddk) {
    any = true;
    auto t0 = clk::now();
    OddKReport r = fg_oddk_check(a.n, a.oddk, a.radius, std::max<std::int64_t>(a.tmax, a.radius));
    rep.check("odd-k", r.ok(), std::to_string(r.confirmed) + "/" + std::to_string(r.subsets) + " subsets" +
                                   (r.sampled ? " (sampled)" : "") +
                                   (r.first_failure.empty() ? "" : ", " + r.first_failure));
    rep.set("seconds.oddk", seconds_since(t0));
  }
  if (!any) throw usage_error("freegroup needs --profile, --witness or --oddk");
  return finish(rep);
}

struct Z2Args {
  std::vector<std::string> uv;
  std::string null_check;
  int window = 1;
  bool tri = false;
  std::int64_t tsim = 2048;
  int kmax = 12;
  int uv_sim = -1, structure = -1, witness = -1;
  std::int64_t three = -1;
};

int cmd_z2(const Z2Args& a, const Globals& g) {
  RunReport rep("z2");
  bool any = false;
  if (!a.uv.empty()) {
    any = true;
    if (a.uv.size() != 2) throw usage_error("--uv expects z=<x,y> k=<int>");
    Site z = parse_site(Lattice::plane(), keyed(a.uv[0], "z"));
    int k = std::stoi(keyed(a.uv[1], "k"));
    UVPair p = uv_words(z, k);
    rep.set("z", format_site(z));
    rep.set("k", k);
    rep.set("u", p.u.str());
    rep.set("v", p.v.str());
  }
  if (!a.null_check.empty()) {
    any = true;
    Configuration c = load_configuration(a.null_check);
    bool null = exact_trace_null(c, a.window);
    rep.set("window", a.window);
    rep.set("null_trace", null ? "yes" : "no");
  }
  if (a.tri) {
    any = true;
    auto t0 = clk::now();
    TriClaimReport r = tri_claim_check(a.tsim, a.kmax);
    rep.check("tri-simulation", r.simulated_null, "spot at (0,36), window 2, t<=" + std::to_string(a.tsim));
    rep.check("tri-base-case", r.base_case, "no influence on B_2 before t=32");
    rep.check("tri-supports", r.supports && r.supports_vs_simulation, "four-point supports of F^{2^k}");
    rep.check("tri-far-points", r.far_points, "far points miss B_2 within 2^k steps");
    rep.set("certified_until", r.certified_until());
    if (!r.first_failure.empty()) rep.note(r.first_failure);
    rep.set("seconds.tri", seconds_since(t0));
  }
  if (a.uv_sim >= 0) {
    any = true;
    UVSimReport r = uv_vs_simulation(a.uv_sim);
    rep.check("uv-vs-simulation", r.ok(), std::to_string(r.cells) + " cells" +
                                               (r.first_mismatch.empty() ? "" : ", first mismatch " + r.first_mismatch));
  }
  if (a.structure >= 0) {
    any = true;
    UVStructureReport r = uv_structure_checks(a.structure);
    rep.check("uv-structure", r.ok(), std::to_string(r.cells) + " cells" +
                                          (r.first_failure.empty() ? "" : ", " + r.first_failure));
  }
  if (a.three >= 0) {
    any = true;
    auto t0 = clk::now();
    ThreeTraceReport r = three_trace_check(a.three, g.threads);
    rep.check("three-trace", r.ok(), std::to_string(r.triples) + " triples, null T_1: " + std::to_string(r.null_t1));
    rep.set("seconds.three_trace", seconds_since(t0));
  }
  if (a.witness >= 1) {
    any = true;
    Configuration w = vn2_two_spot_witness(a.witness);
    int m = 0;
    while (exact_trace_null(w, m + 1)) ++m;
    rep.set("witness_k", a.witness);
    rep.set("largest_null_window", m);
  }
  if (!any) throw usage_error("z2 needs one of --uv, --null-check, --tri-claim, --uv-sim, --structure, --three-trace, --witness");
  return finish(rep);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pxca: cellular automata expansivity toolkit"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "seed for randomized sweeps");
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "artifact directory");

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "evolve a configuration, optionally render the space-time diagram");
  s->add_option("--rule", sim.rule, "preset or linear rule")->required();
  s->add_option("--init", sim.init, "spot:<state>[@site] | file:<path> | random:<radius>[,<density>]");
  s->add_option("--steps", sim.steps)->check(CLI::NonNegativeNumber);
  s->add_option("--window", sim.window, "render window radius");
  s->add_flag("--render", sim.render);

  std::vector<std::string> only;
  auto* v = app.add_subcommand("verify", "run the verification suite");
  v->add_option("--only", only, "claim names")->delimiter(',');

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "stepping and search throughput");
  b->add_option("--size", bench.size);
  b->add_option("--steps", bench.steps);

  KexpArgs kx;
  auto* k = app.add_subcommand("check-kexp", "bounded k-expansivity witness search");
  k->add_option("--rule", kx.rule)->required();
  k->add_option("--k", kx.k)->required();
  k->add_option("--support-radius", kx.radius);
  k->add_option("--window", kx.window);
  k->add_option("--tmax", kx.tmax);
  k->add_option("--alpha", kx.alpha, "direction p/q for front analysis");
  k->add_flag("--pairs", kx.pairs, "use the general pair probe even for linear rules");
  k->add_option("--threshold", kx.threshold, "front escape threshold (default t_max * radius / 2)");
  k->add_option("--init", kx.init, "configuration for --alpha when no witness is found");

  FreeArgs fa;
  auto* f = app.add_subcommand("freegroup", "Lambda_n on the free group");
  f->add_option("--n", fa.n);
  f->add_option("--profile", fa.profile, "L,T");
  f->add_option("--witness", fa.witness, "z=<word> sprime=<letter>")->expected(2);
  f->add_option("--window", fa.window);
  f->add_option("--tmax", fa.tmax);
  f->add_option("--oddk", fa.oddk);
  f->add_option("--radius", fa.radius);

  Z2Args za;
  auto* z = app.add_subcommand("z2", "XOR automata on Z^2");
  z->add_option("--uv", za.uv, "z=<x,y> k=<int>")->expected(2);
  z->add_option("--null-check", za.null_check, "configuration file");
  z->add_option("--window", za.window);
  z->add_flag("--tri-claim", za.tri);
  z->add_option("--tsim", za.tsim);
  z->add_option("--kmax", za.kmax);
  z->add_option("--uv-sim", za.uv_sim, "k_max");
  z->add_option("--structure", za.structure, "k_max");
  z->add_option("--three-trace", za.three, "R");
  z->add_option("--witness", za.witness, "k");

  for (CLI::App* sub : {s, v, b, k, f, z}) sub->fallthrough();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*s) return cmd_simulate(sim, g);
    if (*v) return cmd_verify(only, g);
    if (*b) return cmd_bench(bench, g);
    if (*k) return cmd_check_kexp(kx, g);
    if (*f) return cmd_freegroup(fa, g);
    if (*z) return cmd_z2(za, g);
  } catch (const resource_error& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
