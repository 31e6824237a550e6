#include "shiftforge/shift.hpp"

#include <algorithm>
#include <cmath>

#include "shiftforge/errors.hpp"

namespace shiftforge {

std::string word_key(const Word& w) {
  return std::string(reinterpret_cast<const char*>(w.data()), w.size() * sizeof(Symbol));
}

Alphabet::Alphabet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty()) throw InputError("alphabet is empty");
  if (tokens_.size() > 65535) throw InputError("alphabet too large");
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], static_cast<Symbol>(i)).second)
      throw InputError("duplicate alphabet token '" + tokens_[i] + "'");
  }
}

Alphabet Alphabet::numeric(std::size_t q) {
  std::vector<std::string> t;
  for (std::size_t i = 0; i < q; ++i) t.push_back(std::to_string(i));
  return Alphabet(std::move(t));
}

std::optional<Symbol> Alphabet::index_of(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::require(const std::string& token) const {
  auto s = index_of(token);
  if (!s) throw InputError("unknown symbol '" + token + "'");
  return *s;
}

Pattern::Pattern(FiniteSet d, Word l) : domain(std::move(d)), labels(std::move(l)) {
  if (domain.size() != labels.size())
    throw InputError("pattern has " + std::to_string(labels.size()) + " labels for " +
                     std::to_string(domain.size()) + " sites");
}

Symbol Pattern::at(const Site& s) const {
  auto i = domain.index_of(s);
  if (!i) throw PreconditionError("site " + to_string(s) + " outside pattern domain");
  return labels[*i];
}

std::optional<Symbol> Pattern::find(const Site& s) const {
  auto i = domain.index_of(s);
  if (!i) return std::nullopt;
  return labels[*i];
}

Pattern Pattern::restrict_to(const FiniteSet& sub) const {
  Word out;
  out.reserve(sub.size());
  for (const auto& s : sub) out.push_back(at(s));
  return Pattern(sub, std::move(out));
}

Pattern Pattern::translated(const Site& g) const { return Pattern(translate(domain, g), labels); }

bool Pattern::operator<(const Pattern& o) const {
  if (domain.sites() != o.domain.sites()) return domain.sites() < o.domain.sites();
  return labels < o.labels;
}

Pattern word_pattern(const Word& w, Coord start) {
  return Pattern(FiniteSet::interval(start, start + static_cast<Coord>(w.size())), w);
}

SftSpec::SftSpec(Alphabet alphabet, FiniteSet window, std::vector<Word> allowed)
    : alphabet_(std::move(alphabet)), window_(std::move(window)), allowed_(std::move(allowed)) {
  if (window_.empty()) throw InputError("SFT window is empty");
  shift_ = Site::origin(window_.dim());
  if (!window_.contains(Site::origin(window_.dim()))) {
    shift_ = -window_[0];
    window_ = translate(window_, shift_);
  }
  for (const auto& w : allowed_) {
    if (w.size() != window_.size())
      throw InputError("allowed pattern length " + std::to_string(w.size()) +
                       " does not match window size " + std::to_string(window_.size()));
    for (Symbol s : w)
      if (s >= alphabet_.size()) throw InputError("allowed pattern uses symbol index out of range");
  }
  const std::size_t before = allowed_.size();
  std::sort(allowed_.begin(), allowed_.end());
  allowed_.erase(std::unique(allowed_.begin(), allowed_.end()), allowed_.end());
  duplicates_ = before - allowed_.size();
  auto set = std::make_shared<std::unordered_set<std::string>>();
  set->reserve(allowed_.size() * 2);
  for (const auto& w : allowed_) set->insert(word_key(w));
  lookup_ = std::move(set);
}

SftSpec SftSpec::full_shift(std::size_t q, int dim) {
  std::vector<Word> allowed;
  for (std::size_t i = 0; i < q; ++i) allowed.push_back(Word{static_cast<Symbol>(i)});
  return SftSpec(Alphabet::numeric(q), FiniteSet({Site::origin(dim)}, dim), std::move(allowed));
}

SftSpec SftSpec::from_forbidden(Alphabet alphabet, FiniteSet window, const std::vector<Word>& forbidden) {
  std::unordered_set<std::string> bad;
  for (const auto& w : forbidden) bad.insert(word_key(w));
  const std::size_t q = alphabet.size();
  const std::size_t n = window.size();
  std::vector<Word> allowed;
  Word w(n, 0);
  for (;;) {
    if (!bad.count(word_key(w))) allowed.push_back(w);
    std::size_t i = n;
    while (i > 0 && ++w[i - 1] == q) w[--i] = 0;
    if (i == 0) break;
  }
  return SftSpec(std::move(alphabet), std::move(window), std::move(allowed));
}

SftSpec SftSpec::golden_mean() {
  return from_forbidden(Alphabet::numeric(2), FiniteSet::interval(0, 2), {Word{1, 1}});
}

bool SftSpec::allows(const Word& w) const { return lookup_ && lookup_->count(word_key(w)) > 0; }

bool SftSpec::allows_key(const std::string& key) const { return lookup_ && lookup_->count(key) > 0; }

SubshiftHandle::SubshiftHandle(SftSpec b, std::vector<Pattern> extra)
    : base(std::move(b)), extra_forbidden(std::move(extra)) {
  for (const auto& p : extra_forbidden) {
    if (p.domain.empty()) throw InputError("forbidden pattern has an empty shape");
    require_same_dim(p.domain, base.window(), "forbidden pattern");
    for (Symbol s : p.labels)
      if (s >= base.alphabet().size()) throw InputError("forbidden pattern symbol out of range");
  }
}

SubshiftHandle SubshiftHandle::with_forbidden(Pattern p) const {
  auto extra = extra_forbidden;
  extra.push_back(std::move(p));
  return SubshiftHandle(base, std::move(extra));
}

BlockCode::BlockCode(Alphabet source, Alphabet target, FiniteSet neighborhood, std::map<Word, Symbol> rule)
    : source_(std::move(source)), target_(std::move(target)), neighborhood_(std::move(neighborhood)),
      rule_(std::move(rule)) {
  if (neighborhood_.empty()) throw InputError("block code neighborhood is empty");
  for (const auto& [w, t] : rule_) {
    if (w.size() != neighborhood_.size()) throw InputError("block code rule has wrong arity");
    if (t >= target_.size()) throw InputError("block code target symbol out of range");
  }
  if (is_one_block()) {
    table_.assign(source_.size(), 0);
    std::vector<bool> seen(source_.size(), false);
    for (const auto& [w, t] : rule_) {
      if (w[0] >= source_.size()) throw InputError("block code source symbol out of range");
      table_[w[0]] = t;
      seen[w[0]] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (!seen[i]) throw InputError("one-block code has no image for symbol '" + source_.token(static_cast<Symbol>(i)) + "'");
  }
}

BlockCode BlockCode::one_block(Alphabet source, Alphabet target, std::vector<Symbol> table) {
  if (table.size() != source.size()) throw InputError("one-block table size does not match source alphabet");
  std::map<Word, Symbol> rule;
  for (std::size_t i = 0; i < table.size(); ++i) rule[Word{static_cast<Symbol>(i)}] = table[i];
  const int dim = 1;
  return BlockCode(std::move(source), std::move(target), FiniteSet({Site::origin(dim)}, dim), std::move(rule));
}

BlockCode BlockCode::identity(const Alphabet& a, int dim) {
  std::map<Word, Symbol> rule;
  for (std::size_t i = 0; i < a.size(); ++i) rule[Word{static_cast<Symbol>(i)}] = static_cast<Symbol>(i);
  return BlockCode(a, a, FiniteSet({Site::origin(dim)}, dim), std::move(rule));
}

bool BlockCode::is_one_block() const {
  return neighborhood_.size() == 1 && neighborhood_[0].is_origin();
}

const std::vector<Symbol>& BlockCode::table() const {
  if (!is_one_block()) throw PreconditionError("block code is not one-block");
  return table_;
}

Symbol BlockCode::map_symbol(Symbol s) const {
  if (s >= table().size()) throw PreconditionError("symbol outside source alphabet");
  return table_[s];
}

Symbol BlockCode::map_word(const Word& w) const {
  auto it = rule_.find(w);
  if (it == rule_.end()) throw PreconditionError("block code has no rule for the given neighborhood labels");
  return it->second;
}

const char* tier_name(Tier t) { return t == Tier::Exact1D ? "exact-1D" : "local-margin"; }

CountResult make_count_result(BigInt count, std::size_t window_size, Tier tier, int margin) {
  CountResult r;
  r.count = std::move(count);
  r.tier = tier;
  r.margin = margin;
  r.window_size = window_size;
  if (r.count == 0) {
    r.empty = true;
  } else {
    r.log_count = log_bigint(r.count);
    r.entropy = window_size ? r.log_count / static_cast<double>(window_size) : 0.0;
  }
  return r;
}

}  // namespace shiftforge
