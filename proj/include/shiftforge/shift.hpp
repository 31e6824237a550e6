#pragma once

// Alphabets, patterns, SFT specifications and block codes.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "shiftforge/bigint.hpp"
#include "shiftforge/geometry.hpp"

namespace shiftforge {

using Symbol = std::uint16_t;
using Word = std::vector<Symbol>;

std::string word_key(const Word& w);

class Alphabet {
 public:
  Alphabet() = default;
  /// Throws InputError on an empty list or duplicate tokens.
  explicit Alphabet(std::vector<std::string> tokens);
  /// Tokens "0", "1", ..., "q-1".
  static Alphabet numeric(std::size_t q);

  std::size_t size() const { return tokens_.size(); }
  const std::string& token(Symbol s) const { return tokens_.at(s); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::optional<Symbol> index_of(const std::string& token) const;
  Symbol require(const std::string& token) const;

  bool operator==(const Alphabet& o) const { return tokens_ == o.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, Symbol> index_;
};

/// A labelling of a finite domain; labels[i] belongs to domain[i].
struct Pattern {
  FiniteSet domain;
  Word labels;

  Pattern() = default;
  Pattern(FiniteSet d, Word l);

  Symbol at(const Site& s) const;
  std::optional<Symbol> find(const Site& s) const;
  Pattern restrict_to(const FiniteSet& sub) const;
  Pattern translated(const Site& g) const;

  bool operator==(const Pattern&) const = default;
  bool operator<(const Pattern& o) const;
};

/// Reads a 1D word as a pattern on [start, start + |w|).
Pattern word_pattern(const Word& w, Coord start = 0);

/// An SFT given by a window K (containing the origin) and the allowed
/// labellings of K, each listed in the canonical order of K's sites.
class SftSpec {
 public:
  SftSpec() = default;
  /// A window missing the origin is translated by minus its least site.
  /// Allowed words are sorted and deduplicated.
  SftSpec(Alphabet alphabet, FiniteSet window, std::vector<Word> allowed);

  static SftSpec full_shift(std::size_t q, int dim);
  static SftSpec from_forbidden(Alphabet alphabet, FiniteSet window, const std::vector<Word>& forbidden);
  static SftSpec golden_mean();

  const Alphabet& alphabet() const { return alphabet_; }
  const FiniteSet& window() const { return window_; }
  const std::vector<Word>& allowed() const { return allowed_; }
  int dim() const { return window_.dim(); }
  bool allows(const Word& w) const;
  bool allows_key(const std::string& key) const;
  /// Number of duplicate allowed words dropped at construction.
  std::size_t duplicates_dropped() const { return duplicates_; }
  /// Translation applied to the window at construction.
  const Site& window_shift() const { return shift_; }

 private:
  Alphabet alphabet_;
  FiniteSet window_;
  std::vector<Word> allowed_;
  std::shared_ptr<const std::unordered_set<std::string>> lookup_;
  std::size_t duplicates_ = 0;
  Site shift_{1, {0, 0}};
};

/// A base SFT with additional patterns forbidden at every translate.
struct SubshiftHandle {
  SftSpec base;
  std::vector<Pattern> extra_forbidden;

  SubshiftHandle() = default;
  explicit SubshiftHandle(SftSpec b) : base(std::move(b)) {}
  SubshiftHandle(SftSpec b, std::vector<Pattern> extra);

  int dim() const { return base.dim(); }
  const Alphabet& alphabet() const { return base.alphabet(); }
  SubshiftHandle with_forbidden(Pattern p) const;
};

/// A sliding block code. One-block codes keep a direct symbol table.
class BlockCode {
 public:
  BlockCode() = default;
  BlockCode(Alphabet source, Alphabet target, FiniteSet neighborhood, std::map<Word, Symbol> rule);
  static BlockCode one_block(Alphabet source, Alphabet target, std::vector<Symbol> table);
  static BlockCode identity(const Alphabet& a, int dim);

  const Alphabet& source() const { return source_; }
  const Alphabet& target() const { return target_; }
  const FiniteSet& neighborhood() const { return neighborhood_; }
  bool is_one_block() const;
  /// One-block table; throws if the code is not one-block.
  const std::vector<Symbol>& table() const;
  Symbol map_symbol(Symbol s) const;
  Symbol map_word(const Word& neighborhood_labels) const;
  const std::map<Word, Symbol>& rule() const { return rule_; }

 private:
  Alphabet source_;
  Alphabet target_;
  FiniteSet neighborhood_;
  std::map<Word, Symbol> rule_;
  std::vector<Symbol> table_;
};

enum class Tier { Exact1D, LocalMargin };
const char* tier_name(Tier t);

struct CountResult {
  BigInt count;
  double log_count = 0.0;
  /// log_count / |F|, zero for the empty subshift.
  double entropy = 0.0;
  Tier tier = Tier::Exact1D;
  int margin = 0;
  bool empty = false;
  std::size_t window_size = 0;
};

CountResult make_count_result(BigInt count, std::size_t window_size, Tier tier, int margin);

}  // namespace shiftforge
