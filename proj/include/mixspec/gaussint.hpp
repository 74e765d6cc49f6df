#pragma once

// Arbitrary-precision Gaussian integers Z[i], Gaussian rationals Q(i),
// and the number theory needed downstream: Euclidean division, gcd/lcm,
// normalization into the first quadrant Gamma, factorization, and
// reduction modulo a Gaussian prime.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <regex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mixspec {

using Integer = mpz_class;

class GaussInt {
public:
  GaussInt() = default;
  GaussInt(long re) : re_(re), im_(0) {}
  GaussInt(long re, long im) : re_(re), im_(im) {}
  GaussInt(Integer re) : re_(std::move(re)), im_(0) {}
  GaussInt(Integer re, Integer im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussInt i() { return {0, 1}; }

  const Integer& re() const { return re_; }
  const Integer& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_imaginary() const { return sgn(re_) == 0; }
  bool is_unit() const {
    return (sgn(im_) == 0 && abs(re_) == 1) || (sgn(re_) == 0 && abs(im_) == 1);
  }

  GaussInt conj() const { return {re_, Integer(-im_)}; }

  GaussInt operator-() const { return {Integer(-re_), Integer(-im_)}; }

  GaussInt& operator+=(const GaussInt& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussInt& operator-=(const GaussInt& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussInt& operator*=(const GaussInt& o) {
    Integer r = re_ * o.re_ - im_ * o.im_;
    Integer m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }

  friend GaussInt operator+(GaussInt a, const GaussInt& b) { return a += b; }
  friend GaussInt operator-(GaussInt a, const GaussInt& b) { return a -= b; }
  friend GaussInt operator*(GaussInt a, const GaussInt& b) { return a *= b; }

  friend bool operator==(const GaussInt& a, const GaussInt& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussInt& a, const GaussInt& b) { return !(a == b); }

private:
  Integer re_{0};
  Integer im_{0};
};

inline Integer norm(const GaussInt& z) { return z.re() * z.re() + z.im() * z.im(); }

// Units in the order 1, i, -1, -i (i^k).
inline GaussInt unit_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

inline bool in_gamma(const GaussInt& z) { return sgn(z.re()) > 0 && sgn(z.im()) >= 0; }

/// Returns (unit, rep) with rep in Gamma and unit * rep == z.
inline std::pair<GaussInt, GaussInt> gamma_normalize(const GaussInt& z) {
  if (z.is_zero()) throw std::domain_error("no Gamma-representative of 0");
  // rep = z * i^{-k}; multiplying by -i rotates by -90 degrees.
  GaussInt rep = z;
  for (int k = 0; k < 4; ++k) {
    if (in_gamma(rep)) return {unit_power(k), rep};
    rep *= GaussInt(0, -1);
  }
  throw std::logic_error("gamma_normalize: no associate in Gamma");
}

inline GaussInt gamma_rep(const GaussInt& z) { return gamma_normalize(z).second; }

namespace detail {
// round(x / d) for d > 0, ties toward +infinity.
inline Integer round_div(const Integer& x, const Integer& d) {
  Integer num = 2 * x + d;
  Integer den = 2 * d;
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

inline bool divisible(const Integer& a, const Integer& d) {
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}
}  // namespace detail

/// Euclidean division: a = q*b + r with norm(r) <= norm(b)/2.
inline std::pair<GaussInt, GaussInt> euclidean_divmod(const GaussInt& a, const GaussInt& b) {
  if (b.is_zero()) throw std::domain_error("Gaussian division by zero");
  const GaussInt num = a * b.conj();
  const Integer nb = norm(b);
  GaussInt q(detail::round_div(num.re(), nb), detail::round_div(num.im(), nb));
  GaussInt r = a - q * b;
  return {std::move(q), std::move(r)};
}

/// b | a. Zero divides only zero.
inline bool divides(const GaussInt& b, const GaussInt& a) {
  if (b.is_zero()) return a.is_zero();
  const GaussInt num = a * b.conj();
  const Integer nb = norm(b);
  return detail::divisible(num.re(), nb) && detail::divisible(num.im(), nb);
}

inline std::optional<GaussInt> try_exact_div(const GaussInt& a, const GaussInt& b) {
  if (b.is_zero()) throw std::domain_error("Gaussian division by zero");
  const GaussInt num = a * b.conj();
  const Integer nb = norm(b);
  if (!detail::divisible(num.re(), nb) || !detail::divisible(num.im(), nb)) return std::nullopt;
  Integer re, im;
  mpz_divexact(re.get_mpz_t(), num.re().get_mpz_t(), nb.get_mpz_t());
  mpz_divexact(im.get_mpz_t(), num.im().get_mpz_t(), nb.get_mpz_t());
  return GaussInt(std::move(re), std::move(im));
}

inline GaussInt exact_div(const GaussInt& a, const GaussInt& b) {
  auto q = try_exact_div(a, b);
  if (!q) throw std::domain_error("exact_div: divisor does not divide dividend");
  return *std::move(q);
}

inline GaussInt gauss_gcd(GaussInt a, GaussInt b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd(0, 0) is undefined");
  while (!b.is_zero()) {
    GaussInt r = euclidean_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return gamma_rep(a);
}

inline GaussInt gauss_lcm(const GaussInt& a, const GaussInt& b) {
  if (a.is_zero() || b.is_zero()) throw std::domain_error("lcm with a zero argument");
  return gamma_rep(exact_div(a * b, gauss_gcd(a, b)));
}

enum class Parity { Even, Odd };

/// Even iff (1+i) divides z.
inline Parity parity(const GaussInt& z) {
  Integer d = z.re() - z.im();
  return detail::divisible(d, Integer(2)) ? Parity::Even : Parity::Odd;
}

inline bool is_prime_integer(const Integer& m) {
  if (m < 2) return false;
  if (m < 4) return true;
  if (detail::divisible(m, Integer(2))) return false;
  for (Integer d = 3; d * d <= m; d += 2) {
    if (detail::divisible(m, d)) return false;
  }
  return true;
}

inline bool is_gaussian_prime(const GaussInt& z) {
  if (z.is_zero()) return false;
  if (is_prime_integer(norm(z))) return true;
  if (z.is_real() || z.is_imaginary()) {
    Integer p = abs(z.is_real() ? z.re() : z.im());
    return is_prime_integer(p) && p % 4 == 3;
  }
  return false;
}

struct PrimePower {
  GaussInt prime;
  int multiplicity = 0;
};

struct GammaFactorization {
  GaussInt unit{1};
  std::vector<PrimePower> factors;

  GaussInt product() const {
    GaussInt p = unit;
    for (const auto& f : factors)
      for (int k = 0; k < f.multiplicity; ++k) p *= f.prime;
    return p;
  }
};

namespace detail {
inline Integer powm(const Integer& b, const Integer& e, const Integer& m) {
  Integer r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Gamma-normalized Gaussian prime of norm q, for a rational prime q = 1 (mod 4).
inline GaussInt split_prime_of(const Integer& q) {
  const Integer e = (q - 1) / 4;
  for (Integer x = 2; x < q; ++x) {
    Integer t = powm(x, e, q);
    if ((t * t + 1) % q == 0) return gauss_gcd(GaussInt(q), GaussInt(t, Integer(1)));
  }
  throw std::logic_error("split_prime_of: no square root of -1");
}

inline int strip(GaussInt& z, const GaussInt& p) {
  int k = 0;
  while (auto q = try_exact_div(z, p)) {
    z = *std::move(q);
    ++k;
  }
  return k;
}
}  // namespace detail

/// Factorization into Gamma-normalized primes, ordered by (norm, re).
inline GammaFactorization factor(const GaussInt& z) {
  if (z.is_zero()) throw std::domain_error("cannot factor 0");
  GammaFactorization out;
  GaussInt rest = z;
  Integer n = norm(z);

  auto take = [&](const Integer& q) {
    if (q == 2) {
      int k = detail::strip(rest, GaussInt(1, 1));
      out.factors.push_back({GaussInt(1, 1), k});
    } else if (q % 4 == 3) {
      int k = detail::strip(rest, GaussInt(q));
      out.factors.push_back({GaussInt(q), k});
    } else {
      GaussInt p = detail::split_prime_of(q);
      GaussInt pc = gamma_rep(p.conj());
      if (pc.re() < p.re()) std::swap(p, pc);
      int k1 = detail::strip(rest, p);
      int k2 = detail::strip(rest, pc);
      if (k1 > 0) out.factors.push_back({p, k1});
      if (k2 > 0) out.factors.push_back({pc, k2});
    }
  };

  for (Integer d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (!detail::divisible(n, d)) continue;
    while (detail::divisible(n, d)) n /= d;
    take(d);
  }
  if (n > 1) take(n);
  if (!rest.is_unit()) throw std::logic_error("factor: cofactor is not a unit");
  out.unit = rest;
  return out;
}

inline bool is_square_free(const GaussInt& z) {
  if (z.is_zero()) throw std::domain_error("square-freeness of 0 is undefined");
  for (const auto& f : factor(z).factors)
    if (f.multiplicity >= 2) return false;
  return true;
}

/// An element of Z[i]/(p). For inert primes the field is GF(r^2) stored as
/// a + b*i with a, b mod r; otherwise GF(q) with i mapped to a fixed root t.
struct FieldElem {
  std::int64_t a = 0;
  std::int64_t b = 0;
  friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

class ResidueField {
public:
  explicit ResidueField(const GaussInt& p) {
    if (!is_gaussian_prime(p)) throw std::domain_error("residue modulus is not a Gaussian prime");
    const Integer n = norm(p);
    if (!n.fits_slong_p()) throw std::domain_error("residue field too large");
    if (is_prime_integer(n)) {
      inert_ = false;
      q_ = n.get_si();
      // a + b i = 0 (mod p) => i = -a / b (mod q).
      Integer a = p.re() % n, b = p.im() % n, binv;
      if (a < 0) a += n;
      if (b < 0) b += n;
      mpz_invert(binv.get_mpz_t(), b.get_mpz_t(), n.get_mpz_t());
      Integer t = (n - a) * binv % n;
      t_ = t.get_si();
    } else {
      inert_ = true;
      q_ = Integer(abs(p.is_real() ? p.re() : p.im())).get_si();
    }
  }

  bool inert() const { return inert_; }
  std::int64_t characteristic() const { return q_; }
  std::int64_t root_of_minus_one() const { return t_; }
  std::int64_t order() const { return inert_ ? q_ * q_ : q_; }

  FieldElem reduce(const GaussInt& z) const {
    const Integer q(static_cast<long>(q_));
    Integer a = z.re() % q, b = z.im() % q;
    if (a < 0) a += q;
    if (b < 0) b += q;
    if (inert_) return {a.get_si(), b.get_si()};
    return {mod(a.get_si() + mul_mod(b.get_si(), t_)), 0};
  }

  FieldElem add(FieldElem x, FieldElem y) const { return {mod(x.a + y.a), mod(x.b + y.b)}; }
  FieldElem sub(FieldElem x, FieldElem y) const { return {mod(x.a - y.a), mod(x.b - y.b)}; }
  FieldElem mul(FieldElem x, FieldElem y) const {
    if (!inert_) return {mul_mod(x.a, y.a), 0};
    return {mod(mul_mod(x.a, y.a) - mul_mod(x.b, y.b)), mod(mul_mod(x.a, y.b) + mul_mod(x.b, y.a))};
  }
  FieldElem inv(FieldElem x) const {
    if (is_zero(x)) throw std::domain_error("inverse of zero in residue field");
    if (!inert_) return {pow_mod(x.a, q_ - 2), 0};
    // (a + bi)^{-1} = (a - bi) / (a^2 + b^2)
    std::int64_t n = mod(mul_mod(x.a, x.a) + mul_mod(x.b, x.b));
    std::int64_t ninv = pow_mod(n, q_ - 2);
    return {mul_mod(x.a, ninv), mod(-mul_mod(x.b, ninv))};
  }
  static bool is_zero(FieldElem x) { return x.a == 0 && x.b == 0; }

private:
  std::int64_t mod(std::int64_t x) const {
    x %= q_;
    return x < 0 ? x + q_ : x;
  }
  std::int64_t mul_mod(std::int64_t x, std::int64_t y) const {
    return static_cast<std::int64_t>((static_cast<__int128>(x) * y) % q_);
  }
  std::int64_t pow_mod(std::int64_t b, std::int64_t e) const {
    std::int64_t r = 1 % q_;
    b = mod(b);
    while (e > 0) {
      if (e & 1) r = mul_mod(r, b);
      b = mul_mod(b, b);
      e >>= 1;
    }
    return r;
  }

  bool inert_ = false;
  std::int64_t q_ = 2;
  std::int64_t t_ = 0;
};

inline FieldElem residue(const GaussInt& z, const GaussInt& p) { return ResidueField(p).reduce(z); }

// ---------------------------------------------------------------------------
// Gaussian rationals, kept with a positive ordinary-integer denominator.

class GaussRat {
public:
  GaussRat() = default;
  GaussRat(long v) : num_(v) {}
  GaussRat(GaussInt num) : num_(std::move(num)) {}
  GaussRat(GaussInt num, Integer den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

  const GaussInt& num() const { return num_; }
  const Integer& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_integral() const { return den_ == 1; }

  /// Denominator as a Gaussian integer in lowest terms over Z[i], in Gamma.
  GaussInt gaussian_denominator() const {
    if (num_.is_zero()) return GaussInt(1);
    return gamma_rep(exact_div(GaussInt(den_), gauss_gcd(num_, GaussInt(den_))));
  }

  GaussRat conj() const { return {num_.conj(), den_}; }
  GaussRat operator-() const { return {-num_, den_}; }

  friend GaussRat operator+(const GaussRat& x, const GaussRat& y) {
    return {x.num_ * GaussInt(y.den_) + y.num_ * GaussInt(x.den_), Integer(x.den_ * y.den_)};
  }
  friend GaussRat operator-(const GaussRat& x, const GaussRat& y) { return x + (-y); }
  friend GaussRat operator*(const GaussRat& x, const GaussRat& y) {
    return {x.num_ * y.num_, Integer(x.den_ * y.den_)};
  }
  friend GaussRat operator/(const GaussRat& x, const GaussRat& y) {
    if (y.is_zero()) throw std::domain_error("Gaussian rational division by zero");
    // x / y = (xn * yd * conj(yn)) / (xd * N(yn))
    return {x.num_ * GaussInt(y.den_) * y.num_.conj(), Integer(x.den_ * norm(y.num_))};
  }
  GaussRat& operator+=(const GaussRat& o) { return *this = *this + o; }
  GaussRat& operator-=(const GaussRat& o) { return *this = *this - o; }
  GaussRat& operator*=(const GaussRat& o) { return *this = *this * o; }

  friend bool operator==(const GaussRat& x, const GaussRat& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  friend bool operator!=(const GaussRat& x, const GaussRat& y) { return !(x == y); }

private:
  void reduce() {
    if (sgn(den_) == 0) throw std::domain_error("zero denominator");
    if (sgn(den_) < 0) {
      den_ = -den_;
      num_ = -num_;
    }
    Integer g;
    mpz_gcd(g.get_mpz_t(), num_.re().get_mpz_t(), num_.im().get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den_.get_mpz_t());
    if (g != 1) {
      num_ = GaussInt(Integer(num_.re() / g), Integer(num_.im() / g));
      den_ /= g;
    }
  }

  GaussInt num_{0};
  Integer den_{1};
};

// ---------------------------------------------------------------------------
// Literals: optional sign, then a | bi | i | a+bi | a-bi.

inline GaussInt parse_gauss(const std::string& text) {
  static const std::regex re(R"(^\s*([+-]?)(?:(\d+)(?:([+-])(\d*)i)?|(\d*)i)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw std::invalid_argument("bad Gaussian literal '" + text + "'");
  const bool neg = m[1] == "-";
  Integer a = 0, b = 0;
  if (m[2].matched) {
    a = Integer(m[2].str());
    if (m[3].matched) {
      b = m[4].length() == 0 ? Integer(1) : Integer(m[4].str());
      if (m[3] == "-") b = -b;
    }
  } else {
    b = m[5].length() == 0 ? Integer(1) : Integer(m[5].str());
  }
  if (neg) {
    a = -a;
    if (!m[2].matched) b = -b;
  }
  return {a, b};
}

inline std::string to_string(const GaussInt& z) {
  const Integer& a = z.re();
  const Integer& b = z.im();
  if (sgn(b) == 0) return a.get_str();
  std::string imag;
  Integer mag = abs(b);
  if (mag != 1) imag = mag.get_str();
  imag += "i";
  if (sgn(a) == 0) return (sgn(b) < 0 ? "-" : "") + imag;
  return a.get_str() + (sgn(b) < 0 ? "-" : "+") + imag;
}

inline std::string to_string(const GaussRat& q) {
  if (q.is_integral()) return to_string(q.num());
  std::string n = to_string(q.num());
  if (sgn(q.num().re()) != 0 && sgn(q.num().im()) != 0) n = "(" + n + ")";
  return n + "/" + q.den().get_str();
}

inline std::ostream& operator<<(std::ostream& os, const GaussInt& z) { return os << to_string(z); }
inline std::ostream& operator<<(std::ostream& os, const GaussRat& q) { return os << to_string(q); }

}  // namespace mixspec
