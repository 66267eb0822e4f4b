#pragma once

// Finitely generated complex superalgebras over Q(i): Grassmann generators
// (paired or self-conjugate) plus square-zero even generators, with a
// standard or graded conjugation.

#include "superreal/errors.hpp"
#include "superreal/scalar.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace superreal {

enum class Conjugation { Standard, Graded };
enum class Parity { Even, Odd, Mixed };

inline const char* to_string(Conjugation c) { return c == Conjugation::Standard ? "standard" : "graded"; }

inline int parity_bit(Parity p) { return p == Parity::Odd ? 1 : 0; }

/// Generator layout: pair k (0-based) owns ids 2k (theta) and 2k+1 (its
/// conjugate partner); self-conjugate odd generators follow; square-zero even
/// generators come last. Monomials are bit masks over these ids, so the
/// canonical order of a monomial's factors is ascending id.
struct Signature {
  static constexpr int kMaxOdd = 8;
  static constexpr int kMaxEven = 4;

  int odd_pairs = 0;
  int odd_selfreal = 0;
  int even_nilpotents = 0;
  Conjugation conjugation = Conjugation::Standard;

  static Signature grassmann(int pairs, Conjugation c, int evens = 0) {
    Signature s{pairs, 0, evens, c};
    s.validate();
    return s;
  }

  void validate() const {
    if (odd_pairs < 0 || odd_selfreal < 0 || even_nilpotents < 0)
      throw CapExceeded("negative generator count");
    if (2 * odd_pairs + odd_selfreal > kMaxOdd) throw CapExceeded("more than 8 odd generators");
    if (even_nilpotents > kMaxEven) throw CapExceeded("more than 4 even nilpotent generators");
    if (conjugation == Conjugation::Graded && odd_selfreal != 0)
      throw SignatureMismatch("graded conjugation admits no self-conjugate odd generator");
  }

  int odd_count() const { return 2 * odd_pairs + odd_selfreal; }
  int generator_count() const { return odd_count() + even_nilpotents; }
  std::uint32_t odd_mask() const { return (std::uint32_t{1} << odd_count()) - 1; }
  std::uint32_t full_mask() const { return (std::uint32_t{1} << generator_count()) - 1; }
  bool is_odd_generator(int id) const { return id < odd_count(); }
  int theta(int pair) const { return 2 * pair; }
  int partner(int pair) const { return 2 * pair + 1; }
  int selfreal(int j) const { return 2 * odd_pairs + j; }
  int even(int j) const { return odd_count() + j; }

  std::string generator_name(int id) const {
    if (id < 2 * odd_pairs) return "t" + std::to_string(id / 2 + 1) + (id % 2 ? "~" : "");
    if (id < odd_count()) return "t" + std::to_string(id - odd_pairs + 1);
    return "e" + std::to_string(id - odd_count() + 1);
  }

  std::string str() const {
    std::string out = "C[";
    for (int id = 0; id < generator_count(); ++id) out += (id ? "," : "") + generator_name(id);
    return out + "](" + to_string(conjugation) + ")";
  }

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Image of a single generator under conjugation: sign and target id.
inline std::pair<int, int> conjugate_generator(const Signature& sig, int id) {
  if (id < 2 * sig.odd_pairs) {
    bool is_partner = id % 2 == 1;
    int other = is_partner ? id - 1 : id + 1;
    int sign = (sig.conjugation == Conjugation::Graded && is_partner) ? -1 : 1;
    return {sign, other};
  }
  return {1, id};
}

/// (-1)^(number of transpositions needed to sort a*b), counting odd ids only.
inline int reorder_sign(std::uint32_t a_odd, std::uint32_t b_odd) {
  int count = 0;
  while (b_odd) {
    int j = std::countr_zero(b_odd);
    count += std::popcount(a_odd >> (j + 1));
    b_odd &= b_odd - 1;
  }
  return (count & 1) ? -1 : 1;
}

/// Basis monomial of the Grassmann algebra: a set of generator ids.
struct Monomial {
  std::uint32_t bits = 0;

  std::vector<int> ids() const {
    std::vector<int> out;
    for (std::uint32_t b = bits; b; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }
  Parity parity(const Signature& sig) const {
    return (std::popcount(bits & sig.odd_mask()) & 1) ? Parity::Odd : Parity::Even;
  }
  std::string str(const Signature& sig) const {
    std::string out;
    for (int id : ids()) out += (out.empty() ? "" : "*") + sig.generator_name(id);
    return out.empty() ? "1" : out;
  }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// All monomials of the given parity, ascending by bit mask.
inline std::vector<Monomial> monomials_of_parity(const Signature& sig, Parity p) {
  std::vector<Monomial> out;
  for (std::uint32_t b = 0; b <= sig.full_mask(); ++b) {
    Monomial m{b};
    if (m.parity(sig) == p) out.push_back(m);
  }
  return out;
}

/// Sign and mask of the conjugate of a monomial.
inline std::pair<int, std::uint32_t> conjugate_monomial(const Signature& sig, std::uint32_t bits) {
  int sign = 1;
  std::uint32_t acc = 0;
  const std::uint32_t odd = sig.odd_mask();
  for (std::uint32_t b = bits; b; b &= b - 1) {
    auto [s, id] = conjugate_generator(sig, std::countr_zero(b));
    std::uint32_t bit = std::uint32_t{1} << id;
    sign *= s * reorder_sign(acc & odd, bit & odd);
    acc |= bit;
  }
  return {sign, acc};
}

/// Element of a finitely generated superalgebra, in canonical form: terms
/// sorted by monomial mask, no zero coefficients.
class SuperNumber {
 public:
  struct Term {
    std::uint32_t bits;
    GaussianRational coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  SuperNumber() = default;
  explicit SuperNumber(Signature sig) : sig_(sig) {}

  static SuperNumber constant(const Signature& sig, GaussianRational c) {
    return monomial(sig, Monomial{0}, std::move(c));
  }
  static SuperNumber monomial(const Signature& sig, Monomial m, GaussianRational c = 1) {
    SuperNumber x(sig);
    if (!c.is_zero()) x.terms_.push_back({m.bits, std::move(c)});
    return x;
  }
  static SuperNumber generator(const Signature& sig, int id) {
    if (id < 0 || id >= sig.generator_count()) throw SignatureMismatch("generator id out of range");
    return monomial(sig, Monomial{std::uint32_t{1} << id});
  }

  const Signature& signature() const { return sig_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  GaussianRational body() const {
    if (!terms_.empty() && terms_.front().bits == 0) return terms_.front().coeff;
    return GaussianRational(0);
  }

  GaussianRational coefficient(Monomial m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m.bits,
                               [](const Term& t, std::uint32_t b) { return t.bits < b; });
    if (it != terms_.end() && it->bits == m.bits) return it->coeff;
    return GaussianRational(0);
  }

  Parity parity() const {
    bool even = false, odd = false;
    for (const auto& t : terms_) (Monomial{t.bits}.parity(sig_) == Parity::Odd ? odd : even) = true;
    if (even && odd) return Parity::Mixed;
    return odd ? Parity::Odd : Parity::Even;
  }
  bool is_even() const { return parity() == Parity::Even; }
  bool is_odd() const { return is_zero() || parity() == Parity::Odd; }

  /// Component of the given parity.
  SuperNumber part(Parity p) const {
    SuperNumber out(sig_);
    for (const auto& t : terms_)
      if (Monomial{t.bits}.parity(sig_) == p) out.terms_.push_back(t);
    return out;
  }

  SuperNumber operator-() const {
    SuperNumber out = *this;
    for (auto& t : out.terms_) t.coeff = -t.coeff;
    return out;
  }

  SuperNumber& operator+=(const SuperNumber& o) { return *this = combine(*this, o, false); }
  SuperNumber& operator-=(const SuperNumber& o) { return *this = combine(*this, o, true); }
  SuperNumber& operator*=(const SuperNumber& o) { return *this = mul(*this, o); }

  friend SuperNumber operator+(const SuperNumber& a, const SuperNumber& b) { return combine(a, b, false); }
  friend SuperNumber operator-(const SuperNumber& a, const SuperNumber& b) { return combine(a, b, true); }
  friend SuperNumber operator*(const SuperNumber& a, const SuperNumber& b) { return mul(a, b); }

  friend SuperNumber operator*(const GaussianRational& c, const SuperNumber& x) {
    SuperNumber out(x.sig_);
    if (c.is_zero()) return out;
    out.terms_.reserve(x.terms_.size());
    for (const auto& t : x.terms_) out.terms_.push_back({t.bits, c * t.coeff});
    return out;
  }

  friend bool operator==(const SuperNumber& a, const SuperNumber& b) {
    return a.sig_ == b.sig_ && a.terms_ == b.terms_;
  }

  /// Supercommutative product; signs from the transposition count of the merged odd factors.
  static SuperNumber mul(const SuperNumber& a, const SuperNumber& b) {
    require_same(a, b);
    SuperNumber out(a.sig_);
    if (a.terms_.empty() || b.terms_.empty()) return out;
    const std::uint32_t odd = a.sig_.odd_mask();
    std::vector<Term> raw;
    raw.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) {
        if (x.bits & y.bits) continue;
        GaussianRational c = x.coeff * y.coeff;
        if (reorder_sign(x.bits & odd, y.bits & odd) < 0) c = -c;
        raw.push_back({x.bits | y.bits, std::move(c)});
      }
    out.terms_ = normalize(std::move(raw));
    return out;
  }

  /// Antilinear, multiplicative conjugation of the signature's kind.
  SuperNumber conjugate() const {
    SuperNumber out(sig_);
    std::vector<Term> raw;
    raw.reserve(terms_.size());
    for (const auto& t : terms_) {
      auto [sign, bits] = conjugate_monomial(sig_, t.bits);
      GaussianRational c = t.coeff.conj();
      raw.push_back({bits, sign < 0 ? -c : c});
    }
    out.terms_ = normalize(std::move(raw));
    return out;
  }

  /// Multiplicative inverse: body^-1 * sum_k (-n)^k with n = x/body - 1 nilpotent.
  SuperNumber inverse() const {
    GaussianRational b = body();
    if (b.is_zero()) throw NotInvertible("element with zero body is not invertible");
    GaussianRational binv = b.inverse();
    SuperNumber n = binv * *this - constant(sig_, 1);
    SuperNumber minus_n = -n;
    SuperNumber power = constant(sig_, 1);
    SuperNumber sum = power;
    for (int k = 0; k <= sig_.generator_count(); ++k) {
      power = power * minus_n;
      if (power.is_zero()) break;
      sum += power;
    }
    return binv * sum;
  }

  friend std::ostream& operator<<(std::ostream& os, const SuperNumber& x) { return os << x.str(); }

  std::string str() const {
    if (terms_.empty()) return "(0)";
    std::string out;
    for (const auto& t : terms_) {
      if (!out.empty()) out += " + ";
      out += t.coeff.str();
      for (int id : Monomial{t.bits}.ids()) out += "*" + sig_.generator_name(id);
    }
    return out;
  }

 private:
  static void require_same(const SuperNumber& a, const SuperNumber& b) {
    if (!(a.sig_ == b.sig_)) throw SignatureMismatch("operands live in different superalgebras");
  }

  static std::vector<Term> normalize(std::vector<Term> raw) {
    std::sort(raw.begin(), raw.end(), [](const Term& x, const Term& y) { return x.bits < y.bits; });
    std::vector<Term> out;
    out.reserve(raw.size());
    for (auto& t : raw) {
      if (!out.empty() && out.back().bits == t.bits)
        out.back().coeff += t.coeff;
      else {
        if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
    return out;
  }

  static SuperNumber combine(const SuperNumber& a, const SuperNumber& b, bool subtract) {
    require_same(a, b);
    SuperNumber out(a.sig_);
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
      if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->bits < ib->bits)) {
        out.terms_.push_back(*ia++);
      } else if (ia == a.terms_.end() || ib->bits < ia->bits) {
        out.terms_.push_back({ib->bits, subtract ? -ib->coeff : ib->coeff});
        ++ib;
      } else {
        GaussianRational c = subtract ? ia->coeff - ib->coeff : ia->coeff + ib->coeff;
        if (!c.is_zero()) out.terms_.push_back({ia->bits, std::move(c)});
        ++ia;
        ++ib;
      }
    }
    return out;
  }

  Signature sig_;
  std::vector<Term> terms_;
};

inline bool is_zero(const SuperNumber& x) { return x.is_zero(); }

// ---------------------------------------------------------------------------
// Text grammar
//   number := term ('+' term)*
//   term   := coeff ('*' gen)* | gen ('*' gen)*
//   coeff  := '(' rational (('+'|'-') rational 'i')? ')'
//   gen    := 't' index '~'? | 'e' index

namespace detail {

class LiteralParser {
 public:
  LiteralParser(std::string_view text, const Signature& sig) : sig_(sig) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) src_ += c;
  }

  SuperNumber number() {
    SuperNumber acc(sig_);
    acc += term();
    while (pos_ < src_.size() && src_[pos_] == '+') {
      ++pos_;
      acc += term();
    }
    return acc;
  }

  bool done() const { return pos_ == src_.size(); }
  std::size_t pos() const { return pos_; }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + src_ + "'");
  }

  SuperNumber term() {
    SuperNumber value = SuperNumber::constant(sig_, 1);
    if (pos_ < src_.size() && src_[pos_] == '(') {
      value = SuperNumber::constant(sig_, coeff());
    } else {
      value = gen();
    }
    while (pos_ < src_.size() && src_[pos_] == '*') {
      ++pos_;
      value = value * gen();
    }
    return value;
  }

  std::string rational_token() {
    std::size_t start = pos_;
    if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) ++pos_;
    while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '/')) ++pos_;
    if (pos_ == start) fail("expected rational");
    return src_.substr(start, pos_ - start);
  }

  GaussianRational coeff() {
    ++pos_;  // '('
    Rational re;
    try {
      re = parse_rational(rational_token());
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    Rational im(0);
    if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
      bool neg = src_[pos_] == '-';
      ++pos_;
      try {
        im = parse_rational(rational_token());
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
      if (neg) im = -im;
      if (pos_ >= src_.size() || src_[pos_] != 'i') fail("expected 'i'");
      ++pos_;
    }
    if (pos_ >= src_.size() || src_[pos_] != ')') fail("expected ')'");
    ++pos_;
    return {re, im};
  }

  int index() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected generator index");
    return std::stoi(src_.substr(start, pos_ - start));
  }

  SuperNumber gen() {
    if (pos_ >= src_.size()) fail("expected generator");
    char kind = src_[pos_++];
    if (kind == 't') {
      int k = index();
      bool tilde = pos_ < src_.size() && src_[pos_] == '~';
      if (tilde) ++pos_;
      if (k >= 1 && k <= sig_.odd_pairs)
        return SuperNumber::generator(sig_, tilde ? sig_.partner(k - 1) : sig_.theta(k - 1));
      if (!tilde && k > sig_.odd_pairs && k <= sig_.odd_pairs + sig_.odd_selfreal)
        return SuperNumber::generator(sig_, sig_.selfreal(k - sig_.odd_pairs - 1));
      fail("odd generator t" + std::to_string(k) + (tilde ? "~" : "") + " not in " + sig_.str());
    }
    if (kind == 'e') {
      int k = index();
      if (k >= 1 && k <= sig_.even_nilpotents) return SuperNumber::generator(sig_, sig_.even(k - 1));
      fail("even generator e" + std::to_string(k) + " not in " + sig_.str());
    }
    --pos_;
    fail("expected generator");
  }

  Signature sig_;
  std::string src_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline SuperNumber parse_super_number(std::string_view text, const Signature& sig) {
  detail::LiteralParser p(text, sig);
  SuperNumber x = p.number();
  if (!p.done()) throw ParseError("trailing input in '" + std::string(text) + "'");
  return x;
}

// ---------------------------------------------------------------------------
// Morphisms

/// Superalgebra morphism fixed by the images of the source generators.
///
/// Construction checks parity and that even images square to zero. Whether
/// the map commutes with conjugation is a separate query: the scaling maps
/// v_a used by the Lie functor do not, unless a is real.
class AlgebraMorphism {
 public:
  AlgebraMorphism(Signature source, Signature target, std::vector<SuperNumber> images)
      : source_(source), target_(target), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != source_.generator_count())
      throw InvalidMorphism("morphism needs one image per source generator");
    for (int id = 0; id < source_.generator_count(); ++id) {
      const SuperNumber& img = images_[id];
      if (!(img.signature() == target_)) throw InvalidMorphism("image outside the target algebra");
      if (source_.is_odd_generator(id)) {
        if (!img.is_odd()) throw InvalidMorphism("odd generator must map to an odd element");
      } else {
        if (!img.is_even()) throw InvalidMorphism("even generator must map to an even element");
        if (!(img * img).is_zero()) throw InvalidMorphism("square-zero generator must map to a square-zero element");
      }
    }
  }

  static AlgebraMorphism identity(const Signature& sig) {
    std::vector<SuperNumber> images;
    for (int id = 0; id < sig.generator_count(); ++id) images.push_back(SuperNumber::generator(sig, id));
    return {sig, sig, std::move(images)};
  }

  const Signature& source() const { return source_; }
  const Signature& target() const { return target_; }
  const std::vector<SuperNumber>& images() const { return images_; }

  SuperNumber apply(const SuperNumber& x) const {
    if (!(x.signature() == source_)) throw SignatureMismatch("morphism applied outside its source algebra");
    SuperNumber out(target_);
    for (const auto& t : x.terms()) {
      SuperNumber prod = SuperNumber::constant(target_, t.coeff);
      for (int id : Monomial{t.bits}.ids()) {
        prod = prod * images_[id];
        if (prod.is_zero()) break;
      }
      out += prod;
    }
    return out;
  }

  /// f(conj g) == conj f(g) on every generator.
  bool respects_conjugation() const {
    if (source_.conjugation != target_.conjugation) return false;
    for (int id = 0; id < source_.generator_count(); ++id) {
      auto [sign, cid] = conjugate_generator(source_, id);
      SuperNumber lhs = images_[cid];
      if (sign < 0) lhs = -lhs;
      if (!(lhs == images_[id].conjugate())) return false;
    }
    return true;
  }

  /// this ∘ first
  AlgebraMorphism after(const AlgebraMorphism& first) const {
    if (!(first.target_ == source_)) throw SignatureMismatch("morphisms do not compose");
    std::vector<SuperNumber> images;
    for (const auto& img : first.images_) images.push_back(apply(img));
    return {first.source_, target_, std::move(images)};
  }

 private:
  Signature source_;
  Signature target_;
  std::vector<SuperNumber> images_;
};

namespace detail {

enum class Role { Theta, Partner, SelfReal, Even };

inline std::pair<Role, int> role_of(const Signature& s, int id) {
  if (id < 2 * s.odd_pairs) return {id % 2 ? Role::Partner : Role::Theta, id / 2};
  if (id < s.odd_count()) return {Role::SelfReal, id - 2 * s.odd_pairs};
  return {Role::Even, id - s.odd_count()};
}

inline int id_of(const Signature& s, Role r, int index) {
  switch (r) {
    case Role::Theta: return s.theta(index);
    case Role::Partner: return s.partner(index);
    case Role::SelfReal: return s.selfreal(index);
    case Role::Even: return s.even(index);
  }
  return -1;
}

}  // namespace detail

/// Inclusion/projection between signatures sharing roles: a generator maps
/// to the generator of the same role in the target, or to zero when the
/// target lacks it (or when `killed` says so).
template <class Kill>
AlgebraMorphism role_morphism(const Signature& source, const Signature& target, Kill killed) {
  std::vector<SuperNumber> images;
  for (int id = 0; id < source.generator_count(); ++id) {
    auto [role, index] = detail::role_of(source, id);
    int limit = role == detail::Role::SelfReal ? target.odd_selfreal
                : role == detail::Role::Even   ? target.even_nilpotents
                                               : target.odd_pairs;
    if (killed(role, index) || index >= limit)
      images.emplace_back(target);
    else
      images.push_back(SuperNumber::generator(target, detail::id_of(target, role, index)));
  }
  return {source, target, std::move(images)};
}

/// Projection that kills odd pair `pair` (and renumbers the later pairs down).
inline AlgebraMorphism kill_odd_pair(const Signature& sig, int pair) {
  if (pair < 0 || pair >= sig.odd_pairs) throw InvalidMorphism("no such odd pair");
  Signature target = sig;
  target.odd_pairs -= 1;
  std::vector<SuperNumber> images;
  for (int id = 0; id < sig.generator_count(); ++id) {
    auto [role, index] = detail::role_of(sig, id);
    bool paired = role == detail::Role::Theta || role == detail::Role::Partner;
    if (paired && index == pair) {
      images.emplace_back(target);
      continue;
    }
    int new_index = (paired && index > pair) ? index - 1 : index;
    images.push_back(SuperNumber::generator(target, detail::id_of(target, role, new_index)));
  }
  return {sig, target, std::move(images)};
}

/// Projection that kills even generator `j` (and renumbers the later ones down).
inline AlgebraMorphism kill_even(const Signature& sig, int j) {
  if (j < 0 || j >= sig.even_nilpotents) throw InvalidMorphism("no such even generator");
  Signature target = sig;
  target.even_nilpotents -= 1;
  std::vector<SuperNumber> images;
  for (int id = 0; id < sig.generator_count(); ++id) {
    auto [role, index] = detail::role_of(sig, id);
    if (role == detail::Role::Even && index == j) {
      images.emplace_back(target);
      continue;
    }
    int new_index = (role == detail::Role::Even && index > j) ? index - 1 : index;
    images.push_back(SuperNumber::generator(target, detail::id_of(target, role, new_index)));
  }
  return {sig, target, std::move(images)};
}

/// Inclusion A -> A[theta, theta~] with one extra odd pair.
inline AlgebraMorphism include_extra_pair(const Signature& sig) {
  Signature target = sig;
  target.odd_pairs += 1;
  target.validate();
  return role_morphism(sig, target, [](detail::Role, int) { return false; });
}

struct DualExtension {
  Signature extended;
  AlgebraMorphism include;  ///< i(x) = x + eps*0
  AlgebraMorphism project;  ///< p(x + eps*y) = x
  int eps_id;               ///< generator id of eps in `extended`
};

/// A(eps) = (A + eps A)/(eps^2); eps is even, square-zero and self-conjugate.
inline DualExtension adjoin_dual(const Signature& sig) {
  if (sig.even_nilpotents >= Signature::kMaxEven) throw CapExceeded("cannot adjoin another square-zero generator");
  Signature ext = sig;
  ext.even_nilpotents += 1;
  ext.validate();
  int eps = ext.even(ext.even_nilpotents - 1);
  auto include = role_morphism(sig, ext, [](detail::Role, int) { return false; });
  auto project = kill_even(ext, ext.even_nilpotents - 1);
  return {ext, include, project, eps};
}

/// v_a on A(eps): generators fixed, eps -> a*eps, for even a.
inline AlgebraMorphism scale_dual(const Signature& sig, int eps_id, const SuperNumber& a) {
  if (!a.is_even()) throw InvalidMorphism("v_a needs an even scalar");
  std::vector<SuperNumber> images;
  for (int id = 0; id < sig.generator_count(); ++id) {
    SuperNumber g = SuperNumber::generator(sig, id);
    images.push_back(id == eps_id ? a * g : g);
  }
  return {sig, sig, std::move(images)};
}

/// Endomorphism theta_k -> c_k, theta~_k -> conj(c_k); respects conjugation by construction.
inline AlgebraMorphism substitute_pairs(const Signature& sig, const std::vector<SuperNumber>& thetas) {
  if (static_cast<int>(thetas.size()) != sig.odd_pairs) throw InvalidMorphism("one image per odd pair required");
  std::vector<SuperNumber> images;
  for (int id = 0; id < sig.generator_count(); ++id) {
    auto [role, index] = detail::role_of(sig, id);
    if (role == detail::Role::Theta)
      images.push_back(thetas[index]);
    else if (role == detail::Role::Partner)
      images.push_back(thetas[index].conjugate());
    else
      images.push_back(SuperNumber::generator(sig, id));
  }
  return {sig, sig, std::move(images)};
}

}  // namespace superreal
