#pragma once

// Constructions on SFTs: splicing, block codes, recoding, products,
// outer approximations and unions.

#include "shiftforge/engine.hpp"
#include "shiftforge/shift.hpp"

namespace shiftforge {

/// z = y on F and x elsewhere. x and y share a domain containing
/// (K K^{-1}) + F and agree on the (K K^{-1})-boundary of F.
Pattern excise_and_replace(const SftSpec& x_spec, const Pattern& x, const Pattern& y, const FiniteSet& f);

/// Pointwise image for one-block codes; otherwise the image lives on the
/// sites g whose neighborhood translate fits inside the domain.
Pattern apply_block_code(const BlockCode& code, const Pattern& p);

struct Recoding {
  SftSpec recoded;        // over the alphabet P(K, X), window K^{-1} K
  BlockCode conjugacy;    // reads the symbol at the origin
  BlockCode composed;     // one-block version of the original code
};

/// Higher-block presentation making a sliding block code one-block.
Recoding higher_block_recode(const SftSpec& x, const BlockCode& code);

struct ProductShift {
  SftSpec spec;           // pair symbol index = a * |T| + t
  BlockCode first;        // projection to X
  BlockCode second;       // projection to T
};

ProductShift product_shift(const SftSpec& x, const SftSpec& t);

/// Product alphabet tokens "a|t".
Alphabet product_alphabet(const Alphabet& a, const Alphabet& b);

/// One SFT on the union of the base window and the first `budget` extra
/// forbidden shapes, allowed = locally admissible labellings there.
SftSpec sft_outer_approximation(const SubshiftHandle& x, std::size_t budget, std::size_t window_cap = 48);

/// SFT on window w whose allowed set is P(w, a) union P(w, b).
SftSpec union_outer(const SubshiftHandle& a, const SubshiftHandle& b, const FiniteSet& w,
                    const EnumerateOptions& opt = {});

}  // namespace shiftforge
