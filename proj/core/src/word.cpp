#include "ordslope/word.hpp"

#include <sstream>

#include "ordslope/error.hpp"

namespace ordslope {

Word& Word::append(Gen gen, long long exp) {
  if (exp == 0) return *this;
  if (!syllables_.empty() && syllables_.back().gen == gen) {
    syllables_.back().exp += exp;
    if (syllables_.back().exp == 0) syllables_.pop_back();
    return *this;
  }
  syllables_.push_back(Syllable{gen, exp});
  return *this;
}

Word& Word::append(const Word& other) {
  for (const Syllable& s : other.syllables_) append(s.gen, s.exp);
  return *this;
}

Word Word::operator*(const Word& rhs) const {
  Word out = *this;
  out.append(rhs);
  return out;
}

Word Word::reversed() const {
  Word out;
  for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it) out.append(it->gen, it->exp);
  return out;
}

Word Word::inverted() const {
  Word out;
  for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it) out.append(it->gen, -it->exp);
  return out;
}

Word Word::pow(long long e) const {
  if (e < 0) return inverted().pow(-e);
  Word out;
  for (long long i = 0; i < e; ++i) out.append(*this);
  return out;
}

long long Word::letter_length() const {
  long long total = 0;
  for (const Syllable& s : syllables_) total += s.exp < 0 ? -s.exp : s.exp;
  return total;
}

std::string Word::to_string() const {
  if (syllables_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const Syllable& s : syllables_) {
    if (!first) os << " ";
    first = false;
    os << (s.gen == Gen::a ? 'a' : 'b');
    if (s.exp != 1) os << "^" << s.exp;
  }
  return os.str();
}

Presentation build_presentation(const KnotSpec& spec) {
  const Word a = Word::generator(Gen::a);
  const Word b = Word::generator(Gen::b);
  const Word a_inv = Word::generator(Gen::a, -1);
  const Word b_inv = Word::generator(Gen::b, -1);

  // w = (a b^-1)^m (a^-1 b)^m for k = 2m, with an extra middle "a b" for
  // k = 2m + 1.
  Word w = (a * b_inv).pow(spec.m);
  if (spec.odd()) w.append(a * b);
  w.append((a_inv * b).pow(spec.m));

  Presentation pres;
  pres.w = w;

  const long long p = spec.twist_p();
  Word wp = w.pow(p);
  pres.relator_lhs = a * wp;
  pres.relator_rhs = wp * b;

  // lambda = (w^p (w^p)~ a^-2eps)^-1, where ~ reverses the syllable order
  // without negating exponents.
  Word inside = wp * wp.reversed();
  inside.append(Gen::a, -2LL * spec.epsilon());
  pres.longitude = inside.inverted();
  return pres;
}

Matrix2C evaluate_word(const Word& word, const Matrix2C& A, const Matrix2C& B) {
  Matrix2C out = Matrix2C::identity();
  for (const Syllable& s : word.syllables()) {
    const Matrix2C& gen = s.gen == Gen::a ? A : B;
    out = out * gen.pow(s.exp);
  }
  return out;
}

double relation_residual(const KnotSpec& spec, const Matrix2C& A, const Matrix2C& B) {
  Presentation pres = build_presentation(spec);
  return frobenius_distance(evaluate_word(pres.relator_lhs, A, B),
                            evaluate_word(pres.relator_rhs, A, B));
}

}  // namespace ordslope
