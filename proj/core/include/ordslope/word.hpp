#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ordslope/knot.hpp"
#include "ordslope/matrix2.hpp"

namespace ordslope {

// Words in the free group on two generators a, b, stored run-length encoded
// as (generator, exponent) syllables with nonzero exponents and adjacent
// syllables on distinct generators.
enum class Gen : std::uint8_t { a, b };

struct Syllable {
  Gen gen;
  long long exp;
  bool operator==(const Syllable&) const = default;
};

class Word {
 public:
  Word() = default;

  static Word generator(Gen g, long long exp = 1) {
    Word w;
    w.append(g, exp);
    return w;
  }

  // Normalizing append: merges with the trailing syllable when the generator
  // matches, drops syllables whose exponent cancels to zero.
  Word& append(Gen g, long long exp);
  Word& append(const Word& other);

  Word operator*(const Word& other) const;

  // Letter order flipped, exponents kept: (a b^-1)~ = b^-1 a.
  Word reversed() const;
  // Group inverse: letter order flipped, exponents negated.
  Word inverted() const;
  // Formal power; negative exponents repeat the inverse.
  Word pow(long long e) const;

  const std::vector<Syllable>& syllables() const { return syllables_; }
  bool empty() const { return syllables_.empty(); }
  // Sum of |exponent| over syllables (the word length in letters).
  long long letter_length() const;

  std::string to_string() const;  // e.g. "a b^-1 a^-1 b"

  bool operator==(const Word&) const = default;

 private:
  std::vector<Syllable> syllables_;
};

// Group data of the presentation  < a, b | a w^p = w^p b >  with
//   w = (a b^-1)^m (a^-1 b)^m          for k = 2m,
//   w = (a b^-1)^m a b (a^-1 b)^m      for k = 2m+1,
// and the longitude  lambda = (w^p (w^p)~ a^{-2 eps})^{-1}  where ~ reverses
// letter order (exponents kept) and eps = 0 (k even) or 2p (k odd).
struct Presentation {
  Word w;
  Word relator_lhs;  // a w^p
  Word relator_rhs;  // w^p b
  Word longitude;
};

Presentation build_presentation(const KnotSpec& spec);

// Product of A^e / B^e over the word's syllables.  Syllable powers use
// repeated squaring, so the cost is at most linear in letter_length().
Matrix2C evaluate_word(const Word& word, const Matrix2C& A, const Matrix2C& B);

// Frobenius distance between the two sides of the relator at (A, B); zero
// exactly when (A, B) satisfies the group relation.
double relation_residual(const KnotSpec& spec, const Matrix2C& A, const Matrix2C& B);

}  // namespace ordslope
