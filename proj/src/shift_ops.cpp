#include "shiftforge/shift_ops.hpp"

#include <algorithm>
#include <set>

#include "shiftforge/errors.hpp"

namespace shiftforge {

Pattern excise_and_replace(const SftSpec& x_spec, const Pattern& x, const Pattern& y, const FiniteSet& f) {
  if (x.domain != y.domain) throw PreconditionError("splice inputs have different domains");
  const FiniteSet kk = difference_set(x_spec.window());
  if (!is_subset(product_set(kk, f), x.domain))
    throw PreconditionError("splice domain does not contain the padded region");
  const SubshiftHandle h(x_spec);
  if (!locally_admissible(h, x) || !locally_admissible(h, y))
    throw PreconditionError("splice inputs are not admissible");
  for (const auto& s : boundary(kk, f))
    if (x.at(s) != y.at(s)) throw PreconditionError("splice inputs disagree on the boundary at " + to_string(s));
  Pattern z = x;
  for (std::size_t i = 0; i < z.domain.size(); ++i)
    if (f.contains(z.domain[i])) z.labels[i] = y.labels[i];
  return z;
}

Pattern apply_block_code(const BlockCode& code, const Pattern& p) {
  if (code.is_one_block()) {
    Word out;
    out.reserve(p.labels.size());
    for (Symbol s : p.labels) out.push_back(code.map_symbol(s));
    return Pattern(p.domain, std::move(out));
  }
  const FiniteSet& n = code.neighborhood();
  const FiniteSet dom = interior(n, p.domain);
  if (dom.empty()) throw PreconditionError("pattern domain too small for the code neighborhood");
  Word out;
  Word buf;
  for (const auto& g : dom) {
    buf.clear();
    for (const auto& k : n) {
      const Symbol s = p.at(k + g);
      if (s >= code.source().size()) throw PreconditionError("symbol outside source alphabet");
      buf.push_back(s);
    }
    out.push_back(code.map_word(buf));
  }
  return Pattern(dom, std::move(out));
}

namespace {

std::string join_tokens(const Alphabet& a, const Word& w) {
  bool single = true;
  for (Symbol s : w) single = single && a.token(s).size() == 1;
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single && i) out += ".";
    out += a.token(w[i]);
  }
  return out;
}

bool fits_in_translate(const FiniteSet& small, const FiniteSet& big) {
  for (const auto& b : big) {
    const Site g = b - small[0];
    bool ok = true;
    for (const auto& s : small)
      if (!big.contains(s + g)) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

// All labellings of u whose restriction to k lies in `allowed`.
std::vector<Word> extend_to(const FiniteSet& u, const FiniteSet& k, const std::vector<Word>& allowed, std::size_t q) {
  std::vector<std::size_t> kpos, free;
  for (std::size_t i = 0; i < u.size(); ++i) (k.contains(u[i]) ? kpos : free).push_back(i);
  std::vector<Word> out;
  for (const auto& w : allowed) {
    Word full(u.size(), 0);
    for (std::size_t j = 0; j < kpos.size(); ++j) full[kpos[j]] = w[j];
    for (;;) {
      out.push_back(full);
      std::size_t i = free.size();
      while (i > 0 && ++full[free[i - 1]] == q) full[free[--i]] = 0;
      if (i == 0) break;
    }
  }
  return out;
}

}  // namespace

Recoding higher_block_recode(const SftSpec& x, const BlockCode& code) {
  const FiniteSet& k = code.neighborhood();
  if (!k.contains(Site::origin(k.dim()))) throw PreconditionError("code neighborhood does not contain the origin");
  if (k.dim() != x.dim()) throw DimensionMismatch("code and SFT dimensions differ");
  if (!fits_in_translate(x.window(), k))
    throw PreconditionError("the code neighborhood does not cover a translate of the SFT window");
  if (code.source() != x.alphabet()) throw PreconditionError("code source alphabet differs from the SFT alphabet");
  const SubshiftHandle h(x);
  EnumerateOptions opt;
  opt.want_list = true;
  const auto symbols = enumerate_patterns(h, k, opt).patterns;
  if (symbols.empty()) throw PreconditionError("the SFT has no patterns on the code neighborhood");
  std::vector<std::string> tokens;
  std::map<Word, Symbol> index;
  for (const auto& w : symbols) {
    index.emplace(w, static_cast<Symbol>(tokens.size()));
    tokens.push_back(join_tokens(x.alphabet(), w));
  }
  Alphabet big(tokens);

  const FiniteSet win = product_set(inverse(k), k);
  const FiniteSet dom = product_set(win, k);
  const auto wide = enumerate_patterns(h, dom, opt).patterns;
  std::vector<Word> allowed;
  allowed.reserve(wide.size());
  Word sym, label;
  for (const auto& w : wide) {
    const Pattern p(dom, w);
    label.clear();
    for (const auto& g : win) {
      sym.clear();
      for (const auto& s : k) sym.push_back(p.at(s + g));
      label.push_back(index.at(sym));
    }
    allowed.push_back(label);
  }
  SftSpec recoded(big, win, std::move(allowed));

  const auto origin = *k.index_of(Site::origin(k.dim()));
  std::vector<Symbol> read(symbols.size()), comp(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    read[i] = symbols[i][origin];
    comp[i] = code.map_word(symbols[i]);
  }
  auto conj = BlockCode::one_block(big, x.alphabet(), read);
  auto composed = BlockCode::one_block(big, code.target(), comp);
  return Recoding{std::move(recoded), std::move(conj), std::move(composed)};
}

Alphabet product_alphabet(const Alphabet& a, const Alphabet& b) {
  std::vector<std::string> t;
  t.reserve(a.size() * b.size());
  for (const auto& x : a.tokens())
    for (const auto& y : b.tokens()) t.push_back(x + "|" + y);
  return Alphabet(std::move(t));
}

ProductShift product_shift(const SftSpec& x, const SftSpec& t) {
  if (x.dim() != t.dim()) throw DimensionMismatch("product of SFTs with different dimensions");
  const FiniteSet u = set_union(x.window(), t.window());
  const auto xs = extend_to(u, x.window(), x.allowed(), x.alphabet().size());
  const auto ts = extend_to(u, t.window(), t.allowed(), t.alphabet().size());
  const std::size_t qt = t.alphabet().size();
  std::vector<Word> allowed;
  allowed.reserve(xs.size() * ts.size());
  for (const auto& a : xs)
    for (const auto& b : ts) {
      Word w(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) w[i] = static_cast<Symbol>(a[i] * qt + b[i]);
      allowed.push_back(std::move(w));
    }
  Alphabet pa = product_alphabet(x.alphabet(), t.alphabet());
  std::vector<Symbol> px(pa.size()), pt(pa.size());
  for (std::size_t i = 0; i < pa.size(); ++i) {
    px[i] = static_cast<Symbol>(i / qt);
    pt[i] = static_cast<Symbol>(i % qt);
  }
  SftSpec spec(pa, u, std::move(allowed));
  auto first = BlockCode::one_block(pa, x.alphabet(), px);
  auto second = BlockCode::one_block(pa, t.alphabet(), pt);
  return ProductShift{std::move(spec), std::move(first), std::move(second)};
}

SftSpec sft_outer_approximation(const SubshiftHandle& x, std::size_t budget, std::size_t window_cap) {
  if (budget == 0) return x.base;
  budget = std::min(budget, x.extra_forbidden.size());
  SubshiftHandle part(x.base, std::vector<Pattern>(x.extra_forbidden.begin(),
                                                   x.extra_forbidden.begin() + static_cast<std::ptrdiff_t>(budget)));
  FiniteSet w = x.base.window();
  for (const auto& p : part.extra_forbidden) w = set_union(w, p.domain);
  if (w.size() > window_cap)
    throw CapExceeded("enlarged window has " + std::to_string(w.size()) + " sites, cap is " + std::to_string(window_cap));
  EnumerateOptions opt;
  opt.want_list = true;
  auto pats = enumerate_patterns(part, w, opt).patterns;
  return SftSpec(x.alphabet(), w, std::move(pats));
}

SftSpec union_outer(const SubshiftHandle& a, const SubshiftHandle& b, const FiniteSet& w, const EnumerateOptions& opt) {
  if (a.alphabet() != b.alphabet()) throw PreconditionError("union of subshifts over different alphabets");
  EnumerateOptions o = opt;
  o.want_list = true;
  auto pa = enumerate_patterns(a, w, o).patterns;
  auto pb = enumerate_patterns(b, w, o).patterns;
  std::vector<Word> all;
  all.reserve(pa.size() + pb.size());
  std::set_union(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(all));
  return SftSpec(a.alphabet(), w, std::move(all));
}

}  // namespace shiftforge
