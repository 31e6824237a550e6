#include "shiftforge/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "shiftforge/errors.hpp"

namespace shiftforge {

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(origin + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed for " + path);
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw InputError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Coord coord_of(const Json& v) {
  if (!v.is_number_integer()) bad("coordinates must be integers, got " + v.dump());
  return v.get<Coord>();
}

Symbol symbol_of(const Json& v, const Alphabet& a) {
  if (v.is_string()) {
    auto s = a.index_of(v.get<std::string>());
    if (!s) bad("unknown symbol " + v.dump());
    return *s;
  }
  if (v.is_number_integer()) {
    auto i = v.get<long long>();
    if (i < 0 || static_cast<std::size_t>(i) >= a.size()) bad("symbol index " + v.dump() + " out of range");
    return static_cast<Symbol>(i);
  }
  bad("symbols are indices or tokens, got " + v.dump());
}

Word word_of(const Json& v, const Alphabet& a, std::size_t len) {
  if (!v.is_array()) bad("patterns are arrays, got " + v.dump());
  if (v.size() != len) bad("pattern " + v.dump() + " has length " + std::to_string(v.size()) + ", window has " +
                           std::to_string(len) + " sites");
  Word w;
  for (const auto& s : v) w.push_back(symbol_of(s, a));
  return w;
}

Alphabet alphabet_of(const Json& j) {
  const Json& a = field(j, "alphabet");
  if (a.is_number_integer()) return Alphabet::numeric(a.get<std::size_t>());
  if (!a.is_array()) bad("alphabet must be a token list or a size");
  std::vector<std::string> t;
  for (const auto& s : a) {
    if (s.is_string())
      t.push_back(s.get<std::string>());
    else if (s.is_number_integer())
      t.push_back(std::to_string(s.get<long long>()));
    else
      bad("alphabet tokens must be strings");
  }
  return Alphabet(std::move(t));
}

int dim_of(const Json& j, const Json& sites) {
  if (j.is_object() && j.contains("dim")) return j.at("dim").get<int>();
  if (sites.is_array() && !sites.empty() && sites[0].is_array()) return static_cast<int>(sites[0].size());
  bad("cannot infer the dimension");
}

// Window sites as listed, before any translation.
std::vector<Site> raw_sites(const Json& v, int dim) {
  if (!v.is_array()) bad("site lists are arrays");
  std::vector<Site> out;
  for (const auto& s : v) out.push_back(site_from_json(s, dim));
  return out;
}

}  // namespace

Json to_json(const Site& s) {
  Json j = Json::array();
  for (int i = 0; i < s.dim; ++i) j.push_back(s[i]);
  return j;
}

Site site_from_json(const Json& j, int dim) {
  if (dim != 1 && dim != 2) bad("dimension must be 1 or 2");
  if (j.is_number_integer() && dim == 1) return Site::of(coord_of(j));
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    bad("site " + j.dump() + " does not have " + std::to_string(dim) + " coordinates");
  return dim == 1 ? Site::of(coord_of(j[0])) : Site::of(coord_of(j[0]), coord_of(j[1]));
}

Json to_json(const FiniteSet& f) {
  Json j = Json::array();
  for (const auto& s : f) j.push_back(to_json(s));
  return j;
}

FiniteSet finite_set_from_json(const Json& j) {
  int d = dim_of(Json(), j);
  return FiniteSet(raw_sites(j, d), d);
}

Json to_json(const Pattern& p) {
  Json j;
  j["domain"] = to_json(p.domain);
  j["labels"] = p.labels;
  return j;
}

Json bigint_json(const BigInt& n) { return to_string(n); }

SftSpec sft_from_json(const Json& j) {
  if (!j.is_object()) bad("an SFT spec is a JSON object");
  Alphabet a = alphabet_of(j);
  const Json& w = field(j, "window");
  int d = dim_of(j, w);
  FiniteSet window(raw_sites(w, d), d);
  bool has_a = j.contains("allowed"), has_f = j.contains("forbidden");
  if (has_a == has_f) bad("give exactly one of \"allowed\" and \"forbidden\"");
  std::vector<Word> words;
  for (const auto& p : j.at(has_a ? "allowed" : "forbidden")) words.push_back(word_of(p, a, window.size()));
  if (has_a) return SftSpec(a, window, words);
  return SftSpec::from_forbidden(a, window, words);
}

Json to_json(const SftSpec& x) {
  Json j;
  j["dim"] = x.dim();
  j["alphabet"] = x.alphabet().tokens();
  j["window"] = to_json(x.window());
  Json al = Json::array();
  for (const auto& w : x.allowed()) al.push_back(w);
  j["allowed"] = al;
  return j;
}

SubshiftHandle handle_from_json(const Json& j) {
  SftSpec base = sft_from_json(j);
  std::vector<Pattern> extra;
  if (j.contains("extra_forbidden")) {
    for (const auto& e : j.at("extra_forbidden")) {
      const Json& sh = field(e, "shape");
      FiniteSet dom(raw_sites(sh, base.dim()), base.dim());
      if (dom.size() != sh.size()) bad("extra_forbidden shape has repeated sites");
      // Labels follow the listed site order; reorder to canonical.
      const Json& pj = field(e, "pattern");
      Word listed = word_of(pj, base.alphabet(), sh.size());
      Word labels(dom.size());
      for (std::size_t i = 0; i < sh.size(); ++i)
        labels[*dom.index_of(site_from_json(sh[i], base.dim()))] = listed[i];
      extra.emplace_back(dom, labels);
    }
  }
  return SubshiftHandle(std::move(base), std::move(extra));
}

Json to_json(const SubshiftHandle& h) {
  Json j = to_json(h.base);
  Json ex = Json::array();
  for (const auto& p : h.extra_forbidden) {
    Json e;
    e["shape"] = to_json(p.domain);
    e["pattern"] = p.labels;
    ex.push_back(e);
  }
  j["extra_forbidden"] = ex;
  return j;
}

namespace {

std::vector<FiniteSet> shape_list(const Json& j) {
  const Json& sh = field(j, "shapes");
  if (!sh.is_array() || sh.empty()) bad("\"shapes\" must be a nonempty array");
  int d = j.contains("dim") ? j.at("dim").get<int>() : dim_of(Json(), sh[0]);
  std::vector<FiniteSet> out;
  for (const auto& s : sh) out.emplace_back(raw_sites(s, d), d);
  return out;
}

}  // namespace

ShapeSystem shapes_from_json(const Json& j) { return ShapeSystem(shape_list(j)); }

Json to_json(const ShapeSystem& s) {
  Json j;
  j["dim"] = s.dim();
  Json a = Json::array();
  for (const auto& f : s.shapes()) a.push_back(to_json(f));
  j["shapes"] = a;
  return j;
}

PeriodicTiling tiling_from_json(const Json& j) {
  ShapeSystem s = shapes_from_json(j);
  std::vector<Site> lattice;
  for (const auto& v : field(j, "lattice")) lattice.push_back(site_from_json(v, s.dim()));
  std::vector<Tile> tiles;
  for (const auto& t : field(j, "tiles")) {
    Tile tile;
    auto idx = field(t, "shape").get<long long>();
    if (idx < 0 || static_cast<std::size_t>(idx) >= s.size()) bad("tile shape index " + std::to_string(idx) + " out of range");
    tile.shape = static_cast<std::size_t>(idx);
    tile.center = site_from_json(field(t, "center"), s.dim());
    tiles.push_back(tile);
  }
  return PeriodicTiling(s, lattice, tiles);
}

Json to_json(const PeriodicTiling& t) {
  Json j = to_json(t.shapes());
  Json l = Json::array();
  for (const auto& v : t.lattice()) l.push_back(to_json(v));
  j["lattice"] = l;
  Json ts = Json::array();
  for (const auto& tile : t.tiles()) {
    Json e;
    e["shape"] = tile.shape;
    e["center"] = to_json(tile.center);
    ts.push_back(e);
  }
  j["tiles"] = ts;
  return j;
}

namespace {

BlockCode code_from_json(const Json& c, const SftSpec& cover) {
  const Alphabet& src = cover.alphabet();
  if (c.contains("map")) {
    const Json& m = c.at("map");
    if (!m.is_object()) bad("code map must be an object from symbol to symbol");
    std::vector<std::string> targets;
    if (c.contains("target")) {
      for (const auto& t : c.at("target")) targets.push_back(t.is_string() ? t.get<std::string>() : t.dump());
    } else {
      std::set<std::string> seen;
      for (auto it = m.begin(); it != m.end(); ++it) seen.insert(it.value().is_string() ? it.value().get<std::string>() : it.value().dump());
      targets.assign(seen.begin(), seen.end());
    }
    Alphabet tgt(targets);
    std::vector<Symbol> table(src.size());
    std::vector<bool> set(src.size(), false);
    for (auto it = m.begin(); it != m.end(); ++it) {
      auto s = src.index_of(it.key());
      if (!s) bad("code maps unknown symbol \"" + it.key() + "\"");
      table[*s] = symbol_of(it.value().is_string() ? it.value() : Json(it.value().dump()), tgt);
      set[*s] = true;
    }
    for (std::size_t i = 0; i < set.size(); ++i)
      if (!set[i]) bad("code does not map symbol \"" + src.token(static_cast<Symbol>(i)) + "\"");
    return BlockCode::one_block(src, tgt, table);
  }
  // General sliding block code.
  std::vector<std::string> targets;
  for (const auto& t : field(c, "target")) targets.push_back(t.get<std::string>());
  Alphabet tgt(targets);
  const Json& nb = field(c, "neighborhood");
  FiniteSet n(raw_sites(nb, cover.dim()), cover.dim());
  std::map<Word, Symbol> rule;
  for (const auto& r : field(c, "rule")) {
    if (!r.is_array() || r.size() != 2) bad("code rules are [word, symbol] pairs");
    rule[word_of(r[0], src, n.size())] = symbol_of(r[1], tgt);
  }
  return BlockCode(src, tgt, n, rule);
}

}  // namespace

SoficPresentation sofic_from_json(const Json& j) {
  SftSpec cover = sft_from_json(field(j, "cover"));
  BlockCode code = code_from_json(field(j, "code"), cover);
  return make_presentation(std::move(cover), std::move(code));
}

Json to_json(const SoficPresentation& w) {
  Json j;
  j["cover"] = to_json(w.cover);
  Json c;
  c["target"] = w.code.target().tokens();
  Json m = Json::object();
  for (std::size_t s = 0; s < w.cover.alphabet().size(); ++s)
    m[w.cover.alphabet().token(static_cast<Symbol>(s))] = w.code.target().token(w.code.map_symbol(static_cast<Symbol>(s)));
  c["map"] = m;
  j["code"] = c;
  return j;
}

namespace {

void check_sft(const Json& j, std::vector<std::string>& out, const std::string& where) {
  try {
    Alphabet a = alphabet_of(j);
    const Json& w = field(j, "window");
    int d = dim_of(j, w);
    auto sites = raw_sites(w, d);
    FiniteSet win(sites, d);
    if (win.size() != sites.size()) out.push_back(where + "window lists a site twice");
    if (!win.contains(Site::origin(d))) out.push_back(where + "window does not contain the origin");
    bool has_a = j.contains("allowed"), has_f = j.contains("forbidden");
    if (has_a == has_f) {
      out.push_back(where + "give exactly one of \"allowed\" and \"forbidden\"");
      return;
    }
    std::set<Word> seen;
    std::size_t dup = 0;
    for (const auto& p : j.at(has_a ? "allowed" : "forbidden")) {
      try {
        if (!seen.insert(word_of(p, a, sites.size())).second) ++dup;
      } catch (const InputError& e) {
        out.push_back(where + e.what());
      }
    }
    if (dup) out.push_back("warning: " + where + std::to_string(dup) + " duplicate pattern(s) will be dropped");
    if (has_a && seen.empty()) out.push_back("warning: " + where + "no allowed patterns, the shift is empty");
    if (j.contains("extra_forbidden")) {
      try {
        handle_from_json(j);
      } catch (const Error& e) {
        out.push_back(where + e.what());
      }
    }
  } catch (const Error& e) {
    out.push_back(where + e.what());
  } catch (const nlohmann::json::exception& e) {
    out.push_back(where + e.what());
  }
}

}  // namespace

std::vector<std::string> validate_document(const Json& j) {
  std::vector<std::string> out;
  if (!j.is_object()) return {"document is not a JSON object"};
  if (j.contains("cover") || j.contains("code")) {
    if (!j.contains("cover")) return {"sofic presentation without \"cover\""};
    check_sft(j.at("cover"), out, "cover: ");
    if (!out.empty()) return out;
    try {
      SftSpec cover = sft_from_json(j.at("cover"));
      BlockCode code = code_from_json(field(j, "code"), cover);
      for (auto& v : presentation_violations(cover, code)) out.push_back("code: " + v);
      if (!code.is_one_block()) out.push_back("warning: code is not one-block and will be recoded to higher blocks");
    } catch (const Error& e) {
      out.push_back(std::string("code: ") + e.what());
    } catch (const nlohmann::json::exception& e) {
      out.push_back(std::string("code: ") + e.what());
    }
    return out;
  }
  if (j.contains("shapes")) {
    try {
      auto shapes = shape_list(j);
      for (auto& v : ShapeSystem::violations(shapes)) out.push_back("shapes: " + v);
      if (out.empty() && (j.contains("lattice") || j.contains("tiles"))) tiling_from_json(j);
    } catch (const Error& e) {
      out.push_back(std::string("tiling: ") + e.what());
    } catch (const nlohmann::json::exception& e) {
      out.push_back(std::string("tiling: ") + e.what());
    }
    return out;
  }
  if (j.contains("window")) {
    check_sft(j, out, "");
    return out;
  }
  return {"unrecognised document: expected an SFT spec, a shape system, a tiling or a sofic presentation"};
}

Json to_json(const CountResult& r) {
  Json j;
  j["count"] = bigint_json(r.count);
  j["log_count"] = r.log_count;
  j["entropy"] = r.entropy;
  j["window_size"] = r.window_size;
  j["tier"] = tier_name(r.tier);
  j["margin"] = r.margin;
  j["empty"] = r.empty;
  return j;
}

Json to_json(const Hypotheses& h) {
  Json j;
  j["delta"] = h.delta;
  j["eta"] = to_string(h.eta);
  j["eta_ok"] = h.eta_ok;
  j["shape_border"] = h.shape_border;
  j["border_small"] = h.border_small;
  j["shape_large"] = h.shape_large;
  j["kk_inside"] = h.kk_inside;
  j["theta"] = to_string(h.theta);
  j["theta_ok"] = h.theta_ok;
  j["h_sigma0"] = h.h_sigma0;
  j["sigma0_small"] = h.sigma0_small;
  j["warnings"] = h.warnings;
  return j;
}

namespace {

Json block_json(const AlignedBlock& b) {
  Json j;
  j["shape"] = b.shape;
  j["x_layer"] = b.x_layer;
  return j;
}

}  // namespace

Json to_json(const ChainReport& r) {
  Json j;
  Json cfg;
  cfg["eps"] = r.config.eps;
  cfg["tile_side"] = r.config.tile_side;
  cfg["window"] = r.config.window;
  cfg["margin"] = r.config.margin;
  cfg["max_steps"] = r.config.max_steps;
  cfg["strict"] = r.config.strict;
  cfg["decompose"] = r.config.decompose;
  cfg["decomposition_steps"] = r.config.decomposition_steps;
  cfg["projection_window"] = r.config.projection_window;
  j["config"] = cfg;
  j["hypotheses"] = to_json(r.hyp);
  j["tier"] = r.tier;
  j["margin"] = r.margin;
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    Json e;
    e["n"] = s.n;
    e["beta"] = s.beta ? block_json(*s.beta) : Json();
    e["census"] = s.census;
    e["count"] = bigint_json(s.count);
    e["h"] = s.h;
    e["drop"] = s.drop;
    e["u1_eps"] = s.u1_eps;
    e["u1_delta"] = s.u1_delta;
    e["census_decreased"] = s.census_decreased;
    e["lost_only_beta"] = s.lost_only_beta;
    e["ratio_ok"] = s.ratio_ok;
    e["max_interiors"] = s.max_interiors;
    steps.push_back(e);
  }
  j["steps"] = steps;
  Json dec = Json::array();
  for (const auto& d : r.decompositions) {
    Json e;
    e["step"] = d.step;
    e["count"] = bigint_json(d.count);
    e["lower"] = bigint_json(d.lower);
    e["upper"] = bigint_json(d.upper);
    e["log_upper_delta"] = d.log_upper_delta;
    e["e1"] = d.e1;
    e["e2"] = d.e2;
    e["e2_delta"] = d.e2_delta;
    e["phases"] = d.phases;
    e["frame_labellings"] = d.frame_labellings;
    e["declined"] = d.declined;
    e["reason"] = d.reason;
    dec.push_back(e);
  }
  j["decompositions"] = dec;
  j["terminal"] = r.terminal;
  j["truncated"] = r.truncated;
  j["u2_eps"] = r.u2_eps;
  j["u2_delta"] = r.u2_delta;
  j["census_strict"] = r.census_strict;
  j["entropy_monotone"] = r.entropy_monotone;
  j["ratio_all"] = r.ratio_all;
  j["lost_all"] = r.lost_all;
  return j;
}

Json to_json(const ProjectedStep& p) {
  Json j;
  j["n"] = p.n;
  j["count_z"] = bigint_json(p.count_z);
  j["count_image"] = bigint_json(p.count_image);
  j["count_sigma0"] = bigint_json(p.count_sigma0);
  j["h_z"] = p.h_z;
  j["h_image"] = p.h_image;
  j["h_sigma0"] = p.h_sigma0;
  j["h_wrapped"] = p.h_wrapped;
  j["gap_ok"] = p.gap_ok;
  return j;
}

Json to_json(const GapReport& g) {
  Json j;
  j["tier"] = g.tier;
  j["max_gap"] = g.max_gap;
  j["window_bound"] = g.window_bound;
  j["analytic_bound"] = g.analytic_bound;
  j["h_tiling"] = g.h_tiling;
  j["all_within"] = g.all_within;
  j["analytic_ok"] = g.analytic_ok;
  Json s = Json::array();
  for (const auto& x : g.samples) {
    Json e;
    e["label"] = x.label;
    e["seed"] = x.seed;
    e["count_up"] = bigint_json(x.count_up);
    e["count_down"] = bigint_json(x.count_down);
    e["h_up"] = x.h_up;
    e["h_down"] = x.h_down;
    e["gap"] = x.gap;
    e["within"] = x.within;
    s.push_back(e);
  }
  j["samples"] = s;
  return j;
}

Json to_json(const Refutation& r) {
  Json j;
  j["n"] = r.n;
  j["k"] = r.k;
  j["column"] = r.column;
  j["l1"] = r.l1;
  j["l2"] = r.l2;
  j["repeated"] = r.repeated;
  j["rectangle"] = to_json(r.rectangle);
  j["row_period"] = r.row_period;
  j["column_period"] = r.column_period;
  j["blocks_checked"] = r.blocks_checked;
  j["blocks_occur"] = r.blocks_occur;
  j["missing_block"] = r.missing_block ? to_json(*r.missing_block) : Json();
  j["rows_periodic"] = r.rows_periodic;
  j["longest_zero_run"] = r.longest_zero_run;
  j["forbidden_absent"] = r.forbidden_absent;
  return j;
}

Json to_json(const LiftEntropy& e) {
  Json j;
  j["radius"] = e.radius;
  j["ones"] = e.ones;
  j["cells"] = e.cells;
  j["log2_count"] = bigint_json(e.log2_count);
  j["density"] = e.density;
  j["above"] = e.above;
  return j;
}

}  // namespace shiftforge
