#ifndef H10_ALGEBRA_HPP
#define H10_ALGEBRA_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

// Exact arithmetic substrate: arbitrary-precision integers/rationals,
// prime fields F_ell and small extensions F_{ell^f} with f <= 4, and
// univariate polynomials over them.  No floating point anywhere.

namespace h10 {

using Int = mpz_class;
using Rat = mpq_class;

struct MathError : std::runtime_error {
    explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

inline long to_long(const Int& x) {
    if (!x.fits_slong_p()) throw MathError("integer does not fit in long: " + x.get_str());
    return x.get_si();
}

bool is_prime(const Int& n);
std::vector<uint32_t> primes_up_to(uint32_t n);

// Kronecker symbol (a|n) with the usual 2-adic conventions; n = 0 rejected.
int kronecker_symbol(const Int& a, const Int& n);

// Exact ell-adic valuation of a rational; +infinity for x = 0.
struct PadicVal {
    bool infinite = false;
    long v = 0;
    bool operator==(const PadicVal&) const = default;
};
PadicVal padic_valuation(const Rat& x, const Int& ell);
long padic_valuation_int(const Int& x, const Int& ell);  // x != 0

// ---------------------------------------------------------------------------
// Finite fields F_{ell^f}, f <= 4.  Elements are coefficient vectors of
// length f over F_ell with respect to a fixed monic irreducible modulus; the
// modulus for given (ell, f) is canonical (least in coefficient-lex order),
// so descriptors compare by (ell, f) alone.

struct FqElem {
    std::array<long, 4> c{0, 0, 0, 0};
    bool operator==(const FqElem&) const = default;
};

class FqField {
  public:
    explicit FqField(long ell);       // prime field, modulus X
    FqField(long ell, int degree);    // extension, canonical modulus

    long characteristic() const { return p_; }
    int degree() const { return f_; }
    long order() const { return q_; }
    const std::vector<long>& modulus() const { return mod_; }

    FqElem zero() const { return FqElem{}; }
    FqElem one() const { return from_int(1); }
    FqElem from_int(const Int& n) const;
    FqElem from_coeffs(const std::vector<long>& c) const;
    // Enumeration: element with index i in [0, order()), base-p digit order.
    FqElem element(long index) const;
    long index_of(const FqElem& a) const;

    bool is_zero(const FqElem& a) const { return a == FqElem{}; }
    FqElem add(const FqElem& a, const FqElem& b) const;
    FqElem sub(const FqElem& a, const FqElem& b) const;
    FqElem neg(const FqElem& a) const;
    FqElem mul(const FqElem& a, const FqElem& b) const;
    FqElem inv(const FqElem& a) const;
    FqElem pow(const FqElem& a, const Int& e) const;
    // Square root when one exists (odd q: Euler criterion + search; char 2:
    // Frobenius preimage).  Throws if a is not a square.
    FqElem sqrt(const FqElem& a) const;

    bool operator==(const FqField& o) const { return p_ == o.p_ && f_ == o.f_; }

  private:
    long p_;
    int f_;
    long q_;
    std::vector<long> mod_;  // size f_+1, monic
    void reduce_(std::array<long, 8>& prod, FqElem& out) const;
};

// Dense univariate polynomial over Fq, ascending coefficients.
struct FqPoly {
    std::vector<FqElem> c;
};

FqPoly poly_make(const FqField& F, std::vector<FqElem> coeffs);
int poly_degree(const FqField& F, const FqPoly& f);  // -1 for zero polynomial
FqElem poly_eval(const FqField& F, const FqPoly& f, const FqElem& x);
FqPoly poly_mul(const FqField& F, const FqPoly& a, const FqPoly& b);
// Division with remainder; divisor must be nonzero.
void poly_divrem(const FqField& F, const FqPoly& num, const FqPoly& den,
                 FqPoly& quot, FqPoly& rem);

// Largest m with (X - r)^m | f; f must not be the zero polynomial.
int root_multiplicity(const FqField& F, const FqPoly& f, const FqElem& r);

// All roots in Fq with multiplicity, by exhaustive evaluation.
// deg f must be 2 or 3.
struct FqRoot {
    FqElem value;
    int multiplicity;
};
std::vector<FqRoot> finite_field_roots(const FqField& F, const FqPoly& f);

// Internal helper shared with Tate's algorithm: does the quadratic
// a X^2 + b X + c have a root in Fq?  (a may be zero.)
bool quadratic_has_root(const FqField& F, const FqElem& a, const FqElem& b,
                        const FqElem& c);

}  // namespace h10

#endif
