#include "shiftforge/cli.hpp"

#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "shiftforge/errors.hpp"
#include "shiftforge/json_io.hpp"

namespace shiftforge {

namespace {

constexpr const char* kSchema = "shiftforge-report/1";

struct Output {
  std::string out;  // JSON report path, empty for stdout
  std::string csv;  // CSV table path, optional
};

struct Ctx {
  std::ostream& out;
  std::ostream& err;
  Output o;
};

Json report(const std::string& command, const Json& config) {
  Json r;
  r["schema"] = kSchema;
  r["command"] = command;
  r["config"] = config;
  return r;
}

void emit(Ctx& c, const Json& r) {
  if (c.o.out.empty())
    c.out << dump_json(r);
  else
    write_text_file(c.o.out, dump_json(r));
}

void emit_csv(Ctx& c, const std::string& text) {
  if (!c.o.csv.empty()) write_text_file(c.o.csv, text);
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

FiniteSet run_window(int dim, Coord n) { return folner_window(n, dim).box; }

EnumerateOptions options(int margin) {
  EnumerateOptions opt;
  opt.margin = margin;
  return opt;
}

CombingConfig cover_config(Coord side, double eps) {
  CombingConfig cc;
  cc.tile_side = side;
  cc.eps = eps;
  return cc;
}

// ---- count / entropy

struct CountArgs {
  std::string sft;
  Coord window = 0;
  int margin = -1;
  std::string emit_path;
};

void cmd_count(Ctx& c, const CountArgs& a) {
  SubshiftHandle x = handle_from_json(read_json_file(a.sft));
  FiniteSet f = run_window(x.dim(), a.window);
  EnumerateOptions opt = options(a.margin);
  opt.want_list = !a.emit_path.empty();
  Json cfg{{"sft", a.sft}, {"window", a.window}, {"margin", a.margin}, {"emit", a.emit_path}};
  Json r = report("count", cfg);
  Enumeration e = enumerate_patterns(x, f, opt);
  r["tier"] = tier_name(e.result.tier);
  r["result"] = to_json(e.result);
  if (opt.want_list) {
    Json p{{"window", to_json(f)}, {"patterns", e.patterns}};
    write_text_file(a.emit_path, dump_json(p));
  }
  emit(c, r);
}

void cmd_entropy(Ctx& c, const CountArgs& a) {
  SubshiftHandle x = handle_from_json(read_json_file(a.sft));
  FiniteSet f = run_window(x.dim(), a.window);
  Json cfg{{"sft", a.sft}, {"window", a.window}, {"margin", a.margin}};
  Json r = report("entropy", cfg);
  CountResult cr = count_patterns(x, f, options(a.margin));
  r["tier"] = tier_name(cr.tier);
  r["result"] = to_json(cr);
  if (x.dim() == 1) {
    double h = entropy_exact_1d(x);
    r["result"]["exact"] = h;
    r["result"]["gap"] = cr.entropy - h;
  }
  emit(c, r);
}

// ---- tiling

struct TilingArgs {
  std::string tiling;
  Coord window = 0;
  Coord k = 2;
  std::string labels;
};

Json tiles_json(const std::vector<Tile>& ts) {
  Json a = Json::array();
  for (const auto& t : ts) a.push_back(Json{{"shape", t.shape}, {"center", to_json(t.center)}});
  return a;
}

void cmd_tiling(Ctx& c, const std::string& mode, const TilingArgs& a) {
  PeriodicTiling t = tiling_from_json(read_json_file(a.tiling));
  FiniteSet f = run_window(t.dim(), a.window);
  Json cfg{{"tiling", a.tiling}, {"window", a.window}, {"k", a.k}, {"labels", a.labels}};
  Json r = report("tiling " + mode, cfg);
  r["tier"] = "exact";
  Alphabet tok = encoding_tokens(t.shapes());
  Json res;
  if (mode == "encode") {
    Pattern p = encode_tiling(t, f);
    Json labels = Json::array();
    for (auto s : p.labels) labels.push_back(tok.token(s));
    res["domain"] = to_json(p.domain);
    res["labels"] = labels;
    res["tiles"] = tiles_json(decode_tiling(p, t.shapes()));
  } else if (mode == "verify") {
    Pattern p;
    if (a.labels.empty()) {
      p = encode_tiling(t, f);
    } else {
      Json j = read_json_file(a.labels);
      FiniteSet dom = finite_set_from_json(j.at("domain"));
      Word w;
      for (const auto& s : j.at("labels")) w.push_back(s.is_string() ? tok.require(s.get<std::string>()) : s.get<Symbol>());
      p = Pattern(dom, w);
    }
    auto v = check_rule_R1(p, t.shapes());
    Json vs = Json::array();
    for (const auto& e : v)
      vs.push_back(Json{{"at", to_json(e.at)}, {"source", to_json(e.source)}, {"expected", tok.token(e.expected)},
                        {"found", tok.token(e.found)}});
    res["violations"] = vs;
    res["consistent"] = v.empty();
    if (v.empty()) res["tiles"] = decode_tiling(p, t.shapes()).size();
  } else {
    auto ap = tile_approximations(t, f);
    FiniteSet k = FiniteSet::cube(t.dim(), 0, a.k);
    FiniteSet fr = frame(t, k, f);
    res["outer_tiles"] = ap.outer.size();
    res["inner_tiles"] = ap.inner.size();
    res["outer_cells"] = ap.outer_cells.size();
    res["inner_cells"] = ap.inner_cells.size();
    res["window_cells"] = f.size();
    res["inner_fraction"] = to_string(Rational(ap.inner_cells.size(), f.size()));
    res["frame_cells"] = fr.size();
    res["invariance_defect"] = to_string(invariance_defect(difference_set(k), f));
  }
  r["result"] = res;
  emit(c, r);
}

// ---- comb

struct CombArgs {
  std::string sft;
  Coord L = 6;
  double eps = 0.3;
  Coord window = 60;
  int margin = -1;
  std::size_t max_steps = 100000;
  bool strict = false;
  bool no_decompose = false;
  bool project = false;
  Coord projection_window = 0;
};

CombingConfig comb_config(const CombArgs& a) {
  CombingConfig cfg;
  cfg.eps = a.eps;
  cfg.tile_side = a.L;
  cfg.window = a.window;
  cfg.margin = a.margin;
  cfg.max_steps = a.max_steps;
  cfg.strict = a.strict;
  cfg.decompose = !a.no_decompose;
  cfg.projection_window = a.projection_window;
  return cfg;
}

void cmd_comb(Ctx& c, const CombArgs& a) {
  SftSpec x = sft_from_json(read_json_file(a.sft));
  Json cfg{{"sft", a.sft},        {"L", a.L},         {"eps", a.eps},
           {"window", a.window},  {"margin", a.margin}, {"max_steps", a.max_steps},
           {"strict", a.strict},  {"decompose", !a.no_decompose}, {"project", a.project},
           {"projection_window", a.projection_window}};
  Json r = report("comb", cfg);
  CombingSetup s = build_Z0(x, comb_config(a));
  ChainReport ch = run_chain(s);
  r["tier"] = ch.tier;
  r["result"] = to_json(ch);
  std::ostringstream csv;
  csv << "n,census,h\n";
  for (const auto& st : ch.steps) csv << st.n << "," << st.census << "," << fmt(st.h) << "\n";
  if (a.project) {
    Json ps = Json::array();
    for (const auto& p : project_chain(s, ch)) ps.push_back(to_json(p));
    r["result"]["projected"] = ps;
  }
  emit(c, r);
  emit_csv(c, csv.str());
}

// ---- cover

struct CoverArgs {
  std::string sofic;
  std::string sft;
  std::string factor;
  std::string v;
  std::string emit_path;
  Coord L = 3;
  double eps = 0.3;
  Coord window = 0;
  std::size_t samples = 16;
  std::uint64_t seed = 1;
  double lo = 0.0, hi = 0.3;
  double r = 0.0;
  std::vector<double> schedule;
  Coord chain_L = 6;
  Coord chain_window = 36;
  Coord projection_window = 0;
  int margin = -1;
};

CombingConfig chain_cfg(const CoverArgs& a) {
  CombingConfig cc = cover_config(a.chain_L, a.eps);
  cc.window = a.chain_window;
  cc.projection_window = a.projection_window;
  cc.margin = a.margin;
  cc.decompose = false;
  return cc;
}

Json cover_echo(const CoverArgs& a) {
  return Json{{"sofic", a.sofic}, {"sft", a.sft}, {"factor", a.factor}, {"v", a.v}, {"emit", a.emit_path},
              {"L", a.L}, {"eps", a.eps}, {"window", a.window}, {"samples", a.samples}, {"seed", a.seed},
              {"lo", a.lo}, {"hi", a.hi}, {"r", a.r}, {"schedule", a.schedule}, {"chain_L", a.chain_L},
              {"chain_window", a.chain_window}, {"projection_window", a.projection_window}, {"margin", a.margin}};
}

void cmd_cover(Ctx& c, const std::string& mode, const CoverArgs& a) {
  Json r = report("cover " + mode, cover_echo(a));
  if (mode == "gap" && !a.factor.empty()) {
    if (a.sft.empty()) throw PreconditionError("--factor needs --sft");
    SftSpec x = sft_from_json(read_json_file(a.sft));
    SftSpec t = sft_from_json(read_json_file(a.factor));
    FiniteSet f = run_window(x.dim(), a.window ? a.window : 12);
    GapReport g = product_gap_control(x, t, a.samples, f, a.seed, options(a.margin));
    r["tier"] = g.tier;
    r["result"] = to_json(g);
    emit(c, r);
    return;
  }
  if (a.sofic.empty()) throw PreconditionError("--sofic is required");
  SoficPresentation w = sofic_from_json(read_json_file(a.sofic));
  if (mode == "build" || mode == "gap") {
    CoverConstruction cc = build_cover(w, cover_config(a.L, a.eps));
    FiniteSet f = run_window(w.cover.dim(), a.window ? a.window : 3 * a.L);
    EnumerateOptions opt = options(a.margin);
    Json res;
    res["delta"] = cc.delta;
    res["qx"] = cc.qx;
    res["qw"] = cc.qw;
    res["cover_window"] = to_json(cc.spec.window());
    res["cover_alphabet"] = cc.spec.alphabet().size();
    res["cover_allowed"] = cc.spec.allowed().size();
    res["warnings"] = cc.warnings;
    if (mode == "build") {
      res["projects_onto"] = cover_projects_onto(cc, f, opt);
      res["matches_rules"] = cover_matches_rules(cc, f, opt);
      res["typing_violations"] = typing_violations(cc, f, opt);
      r["tier"] = cc.spec.dim() == 1 ? "exact-1D" : "local-margin";
      if (!a.emit_path.empty()) write_text_file(a.emit_path, dump_json(to_json(SoficPresentation{cc.spec, cc.code})));
    } else {
      GapReport g = estimate_max_gap(cc, a.samples, f, a.seed, opt);
      r["tier"] = g.tier;
      res["gap"] = to_json(g);
      std::ostringstream csv;
      csv << "label,seed,h_up,h_down,gap,within\n";
      for (const auto& s : g.samples)
        csv << s.label << "," << s.seed << "," << fmt(s.h_up) << "," << fmt(s.h_down) << "," << fmt(s.gap) << ","
            << (s.within ? 1 : 0) << "\n";
      emit_csv(c, csv.str());
    }
    r["result"] = res;
    emit(c, r);
    return;
  }
  r["tier"] = w.cover.dim() == 1 ? "exact-1D" : "local-margin";
  if (mode == "dense") {
    SubshiftHandle v = a.v.empty() ? SubshiftHandle(SftSpec(w.code.target(), FiniteSet({Site::origin(w.cover.dim())}), {}))
                                   : handle_from_json(read_json_file(a.v));
    SoficFamilyResult res = sofic_dense_family(w, v, a.lo, a.hi, cover_config(a.L, a.eps), chain_cfg(a));
    Json tried = Json::array();
    for (const auto& [k, h] : res.tried) tried.push_back(Json{{"step", k}, {"h", h}});
    r["result"] = Json{{"step", res.step}, {"h_up", res.h_up}, {"h_down", res.h_down}, {"monotone", res.monotone},
                       {"evaluated", tried}};
    if (!a.emit_path.empty()) write_text_file(a.emit_path, dump_json(to_json(res.presentation)));
  } else {
    std::vector<double> eps = a.schedule.empty() ? std::vector<double>{0.6, 0.55, 0.5} : a.schedule;
    NestReport nr = entropy_target_nest(w, a.r, eps, cover_config(a.L, a.eps), chain_cfg(a));
    Json lv = Json::array();
    for (const auto& l : nr.levels) lv.push_back(Json{{"step", l.step}, {"eps", l.eps}, {"h", l.h}});
    r["result"] = Json{{"r", nr.r}, {"levels", lv}, {"complete", nr.complete},
                       {"monotone", nr.monotone}, {"message", nr.message}};
  }
  emit(c, r);
}

// ---- cx

struct CxArgs {
  int levels = 4;
  std::uint32_t inv_delta = 10;
  int n = 3;
  int k = 2;
  std::string radius;
  Coord height = 4096;
  Coord half = 0;
  std::int64_t center = -1;
  std::uint64_t seed = 0;
  bool no_primes = false;
  std::int64_t lift_radius = 63;
};

void cmd_cx(Ctx& c, const std::string& mode, const CxArgs& a) {
  WordSystem ws(a.inv_delta);
  Json r;
  r["tier"] = "exact";
  Json res;
  if (mode == "freq") {
    r = report("cx freq", Json{{"levels", a.levels}, {"inv_delta", a.inv_delta}});
    r["tier"] = "exact";
    if (a.levels < 1) throw PreconditionError("--levels must be at least 1");
    Rational third(1, 3), delta(1, a.inv_delta);
    Json rows = Json::array();
    std::ostringstream csv;
    csv << "n,T,L,ones,f,f_decimal,above_bound,drop_ok\n";
    for (int n = 1; n <= a.levels; ++n) {
      Rational f = ws.frequency(n);
      bool above = f > third - delta;
      // f_n - f_{n+1} <= 2n / T_n < delta / 2^n
      Rational drop = f - ws.frequency(n + 1);
      Rational b1(BigInt(2 * n), ws.T(n));
      Rational b2 = delta / Rational(BigInt(1) << n);
      bool drop_ok = drop <= b1 && b1 < b2;
      rows.push_back(Json{{"n", n}, {"T", bigint_json(ws.T(n))}, {"L", bigint_json(ws.L(n))},
                          {"ones", bigint_json(ws.ones(n))}, {"f", to_string(f)}, {"f_decimal", to_double(f)},
                          {"above_bound", above}, {"drop", to_string(drop)}, {"drop_ok", drop_ok}});
      csv << n << "," << ws.T(n) << "," << ws.L(n) << "," << ws.ones(n) << "," << to_string(f) << ","
          << fmt(to_double(f)) << "," << above << "," << drop_ok << "\n";
    }
    res["levels"] = rows;
    emit_csv(c, csv.str());
  } else if (mode == "find") {
    BigInt radius = a.radius.empty() ? ws.L(a.n + 1) : BigInt(a.radius.c_str());
    r = report("cx find", Json{{"n", a.n}, {"radius", to_string(radius)}, {"inv_delta", a.inv_delta}});
    r["tier"] = "exact";
    P3Occurrence o = check_P3_window(ws, a.n, radius);
    res = Json{{"n", o.n}, {"start", o.start}, {"center", o.center}};
  } else if (mode == "refute") {
    Coord half = a.half > 0 ? a.half : 2 * a.n;
    std::int64_t center = a.center;
    if (center < 0) center = static_cast<std::int64_t>(check_P3_window(ws, a.n, ws.L(a.n + 1)).center);
    r = report("cx refute", Json{{"n", a.n}, {"k", a.k}, {"height", a.height}, {"half", half}, {"center", center},
                                 {"seed", a.seed}, {"primes", !a.no_primes}, {"inv_delta", a.inv_delta}});
    r["tier"] = "exact";
    std::optional<std::uint64_t> seed;
    if (!a.no_primes) seed = a.seed;
    Pattern z = lifted_column_window(ws, center, half, a.height, seed);
    res = to_json(periodize_and_refute(z, a.n, a.k));
  } else {
    r = report("cx entropy", Json{{"radius", a.lift_radius}, {"inv_delta", a.inv_delta}});
    r["tier"] = "exact";
    res = to_json(lift_entropy(ws, a.lift_radius));
  }
  r["result"] = res;
  emit(c, r);
}

// ---- validate

void cmd_validate(Ctx& c, const std::string& path) {
  Json r = report("validate", Json{{"path", path}});
  std::vector<std::string> d = validate_document(read_json_file(path));
  bool ok = true;
  for (const auto& s : d)
    if (s.rfind("warning:", 0) != 0) ok = false;
  r["result"] = Json{{"valid", ok}, {"diagnostics", d}};
  emit(c, r);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pattern counts, combing chains and sofic covers for subshifts", "shiftforge"};
  app.require_subcommand(1);
  Ctx c{out, err, {}};
  auto add_out = [&](CLI::App* s) {
    s->add_option("--out,--report", c.o.out, "JSON report path (default: standard output)");
  };
  auto add_csv = [&](CLI::App* s) { s->add_option("--csv", c.o.csv, "CSV table path"); };

  std::function<void()> action;

  CountArgs ca;
  auto* count = app.add_subcommand("count", "Count P(F, X) on F = [0, n)^d");
  count->add_option("--sft", ca.sft, "SFT or handle JSON")->required();
  count->add_option("--window,--window-size", ca.window, "window side n")->required();
  count->add_option("--margin", ca.margin, "padding for the local engine (2D)");
  count->add_option("--emit", ca.emit_path, "write the pattern list here");
  add_out(count);
  count->callback([&] { action = [&] { cmd_count(c, ca); }; });

  CountArgs ea;
  auto* entropy = app.add_subcommand("entropy", "Window entropy log|P(F, X)| / |F|");
  entropy->add_option("--sft", ea.sft, "SFT or handle JSON")->required();
  entropy->add_option("--window,--window-size", ea.window, "window side n")->required();
  entropy->add_option("--margin", ea.margin, "padding for the local engine (2D)");
  add_out(entropy);
  entropy->callback([&] { action = [&] { cmd_entropy(c, ea); }; });

  TilingArgs ta;
  auto* tiling = app.add_subcommand("tiling", "Periodic tilings: encode, verify, approx");
  tiling->require_subcommand(1);
  for (const char* mode : {"encode", "verify", "approx"}) {
    auto* s = tiling->add_subcommand(mode, std::string("tiling ") + mode);
    s->add_option("--tiling", ta.tiling, "tiling JSON")->required();
    s->add_option("--window", ta.window, "window side n")->required();
    if (std::string(mode) == "approx") s->add_option("--k", ta.k, "side of the window K for the frame");
    if (std::string(mode) == "verify") s->add_option("--labels", ta.labels, "pattern JSON {domain, labels} to check");
    add_out(s);
    std::string m = mode;
    s->callback([&, m] { action = [&, m] { cmd_tiling(c, m, ta); }; });
  }

  CombArgs cb;
  auto* comb = app.add_subcommand("comb", "Run the combing chain");
  comb->add_option("--sft", cb.sft, "SFT JSON")->required();
  comb->add_option("--L", cb.L, "tile side");
  comb->add_option("--eps", cb.eps, "epsilon");
  comb->add_option("--window", cb.window, "run window side");
  comb->add_option("--margin", cb.margin, "padding for the local engine (2D)");
  comb->add_option("--max-steps", cb.max_steps, "step cap");
  comb->add_flag("--strict", cb.strict, "refuse when the invariance conditions fail");
  comb->add_flag("--no-decompose", cb.no_decompose, "skip the counting decomposition");
  comb->add_flag("--project", cb.project, "add projected steps");
  comb->add_option("--projection-window", cb.projection_window, "side of the projection window");
  add_out(comb);
  add_csv(comb);
  comb->callback([&] { action = [&] { cmd_comb(c, cb); }; });

  CoverArgs co;
  auto* cover = app.add_subcommand("cover", "Sofic covers: build, gap, dense, nest");
  cover->require_subcommand(1);
  for (const char* mode : {"build", "gap", "dense", "nest"}) {
    std::string m = mode;
    auto* s = cover->add_subcommand(mode, std::string("cover ") + mode);
    s->add_option("--sofic", co.sofic, "sofic presentation JSON");
    s->add_option("--L", co.L, "cover tile side");
    s->add_option("--eps", co.eps, "epsilon");
    s->add_option("--margin", co.margin, "padding for the local engine (2D)");
    if (m == "build" || m == "gap") s->add_option("--window", co.window, "check window side (default 3L)");
    if (m == "build" || m == "dense") s->add_option("--emit", co.emit_path, "write the resulting presentation here");
    if (m == "gap") {
      s->add_option("--samples", co.samples, "random subsystems");
      s->add_option("--seed", co.seed, "sampling seed");
      s->add_option("--sft", co.sft, "X for the product control");
      s->add_option("--factor", co.factor, "T for the product control (projection X x T -> X)");
      add_csv(s);
    }
    if (m == "dense" || m == "nest") {
      s->add_option("--chain-L", co.chain_L, "chain tile side upstairs");
      s->add_option("--chain-window", co.chain_window, "chain window side");
      s->add_option("--projection-window", co.projection_window, "projection window side");
    }
    if (m == "dense") {
      s->add_option("--v", co.v, "subsystem V of W (default: empty)");
      s->add_option("--lo", co.lo, "target lower end");
      s->add_option("--hi", co.hi, "target upper end");
    }
    if (m == "nest") {
      s->add_option("--r", co.r, "target entropy");
      s->add_option("--schedule", co.schedule, "eps_1 eps_2 ...")->expected(1, -1);
    }
    add_out(s);
    s->callback([&, m] { action = [&, m] { cmd_cover(c, m, co); }; });
  }

  CxArgs xa;
  auto* cx = app.add_subcommand("cx", "The recursive-word counterexample");
  cx->require_subcommand(1);
  {
    auto* s = cx->add_subcommand("freq", "T_n, L_n and exact frequencies");
    s->add_option("--levels", xa.levels, "levels");
    s->add_option("--inv-delta", xa.inv_delta, "1 / delta");
    add_out(s);
    add_csv(s);
    s->callback([&] { action = [&] { cmd_cx(c, "freq", xa); }; });
    s = cx->add_subcommand("find", "Locate 0^n 1 0^n");
    s->add_option("--n", xa.n, "n")->required();
    s->add_option("--radius", xa.radius, "search radius (default L_{n+1})");
    s->add_option("--inv-delta", xa.inv_delta, "1 / delta");
    add_out(s);
    s->callback([&] { action = [&] { cmd_cx(c, "find", xa); }; });
    s = cx->add_subcommand("refute", "Periodize a lifted window");
    s->add_option("--n", xa.n, "n")->required();
    s->add_option("--k", xa.k, "SFT window side")->required();
    s->add_option("--height", xa.height, "window height");
    s->add_option("--half", xa.half, "half width (default 2n)");
    s->add_option("--center", xa.center, "center column (default: first 0^n 1 0^n)");
    s->add_option("--seed", xa.seed, "seed for the primes");
    s->add_flag("--no-primes", xa.no_primes, "lift every one to 1");
    s->add_option("--inv-delta", xa.inv_delta, "1 / delta");
    add_out(s);
    s->callback([&] { action = [&] { cmd_cx(c, "refute", xa); }; });
    s = cx->add_subcommand("entropy", "Lift count on [-r, r]^2");
    s->add_option("--radius", xa.lift_radius, "radius");
    s->add_option("--inv-delta", xa.inv_delta, "1 / delta");
    add_out(s);
    s->callback([&] { action = [&] { cmd_cx(c, "entropy", xa); }; });
  }

  std::string vpath;
  auto* validate = app.add_subcommand("validate", "List invariant violations of a JSON document");
  validate->add_option("path", vpath, "document")->required();
  add_out(validate);
  validate->callback([&] { action = [&] { cmd_validate(c, vpath); }; });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }
  try {
    if (!action) throw PreconditionError("no command given");
    action();
    return 0;
  } catch (const PreconditionError& e) {
    err << "refused: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "refused: malformed input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace shiftforge
