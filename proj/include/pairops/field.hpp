#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace pairops {

// Exact field element. For GF(p) the value is an integer in [0, p) with
// denominator 1; for the rationals it is a reduced fraction. No floating
// point exists anywhere in the system.
using Scalar = mpq_class;

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

inline bool is_prime_ulong(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Coefficient field: the rationals (characteristic 0) or GF(p), p prime.
struct FieldSpec {
  unsigned long characteristic = 0;

  static FieldSpec rationals() { return FieldSpec{0}; }

  static FieldSpec gf(unsigned long p) {
    if (!is_prime_ulong(p))
      throw Error("E-FIELD", "characteristic must be prime, got " + std::to_string(p));
    return FieldSpec{p};
  }

  bool finite() const { return characteristic != 0; }

  bool operator==(const FieldSpec&) const = default;

  std::string describe() const {
    return finite() ? "GF(" + std::to_string(characteristic) + ")" : "QQ";
  }

  // Canonical representative: reduced fraction over QQ, integer in [0, p)
  // over GF(p). Fractions with denominator divisible by p are rejected.
  Scalar canon(const Scalar& x) const {
    if (!finite()) {
      Scalar r = x;
      r.canonicalize();
      return r;
    }
    mpz_class p(characteristic);
    mpz_class num = x.get_num(), den = x.get_den();
    mpz_class nmod = num % p;
    if (nmod < 0) nmod += p;
    if (den != 1) {
      mpz_class dmod = den % p, dinv;
      if (dmod < 0) dmod += p;
      if (mpz_invert(dinv.get_mpz_t(), dmod.get_mpz_t(), p.get_mpz_t()) == 0)
        throw Error("E-FIELD", "denominator not invertible mod " + std::to_string(characteristic));
      nmod = (nmod * dinv) % p;
    }
    return Scalar(nmod);
  }

  Scalar from_long(long v) const { return canon(Scalar(v)); }
  Scalar zero() const { return Scalar(0); }
  Scalar one() const { return Scalar(1); }

  Scalar add(const Scalar& a, const Scalar& b) const { return canon(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return canon(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return canon(a * b); }
  Scalar neg(const Scalar& a) const { return canon(-a); }

  Scalar inv(const Scalar& a) const {
    if (a == 0) throw Error("E-FIELD", "division by zero");
    if (!finite()) return canon(Scalar(a.get_den(), a.get_num()));
    mpz_class p(characteristic), v = a.get_num() % p, r;
    if (v < 0) v += p;
    if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t()) == 0)
      throw Error("E-FIELD", "element not invertible");
    return Scalar(r);
  }

  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }
};

inline std::string scalar_str(const Scalar& x) { return x.get_str(); }

}  // namespace pairops
