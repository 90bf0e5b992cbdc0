#ifndef H10_NUMBERFIELD_HPP
#define H10_NUMBERFIELD_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "h10/algebra.hpp"
#include "h10/intlattice.hpp"

// Imaginary quadratic fields K = Q(sqrt(-D)), the compositum K' = K(mu_p),
// prime-ideal factorization with residue fields, class numbers via reduced
// binary quadratic forms, norm equations, and exact element arithmetic.
//
// Fields are represented by their maximal orders: a Z-basis b_0 = 1, ...,
// b_{n-1} with an integer multiplication table.  Field elements are rational
// coordinate vectors with respect to that basis.

namespace h10::nf {

using Coords = std::vector<Int>;
using QCoords = std::vector<Rat>;

struct UnsupportedField : MathError {
    explicit UnsupportedField(const std::string& w) : MathError(w) {}
};

class Order;
using OrderPtr = std::shared_ptr<const Order>;

class Order {
  public:
    // Z itself (degree 1).
    static OrderPtr rationals();
    // Z[theta] with theta^2 = t*theta - nrm  (minimal polynomial x^2 - t x + nrm).
    static OrderPtr quadratic(const Int& t, const Int& nrm);
    // Product basis a_i b_j of two orders with coprime discriminants.
    static OrderPtr tensor(const OrderPtr& a, const OrderPtr& b);

    int degree() const { return n_; }
    Coords zero() const { return Coords(size_t(n_), 0); }
    Coords one() const;
    Coords basis_elem(int i) const;
    Coords mul(const Coords& x, const Coords& y) const;
    Coords add(const Coords& x, const Coords& y) const;
    Coords scale(const Int& c, const Coords& x) const;

    QCoords qzero() const { return QCoords(size_t(n_), Rat(0)); }
    QCoords qone() const;
    QCoords from_rational(const Rat& x) const;
    QCoords to_q(const Coords& x) const;
    QCoords qmul(const QCoords& x, const QCoords& y) const;
    QCoords qadd(const QCoords& x, const QCoords& y) const;
    QCoords qsub(const QCoords& x, const QCoords& y) const;
    QCoords qscale(const Rat& c, const QCoords& x) const;
    QCoords qneg(const QCoords& x) const;
    bool qis_zero(const QCoords& x) const;
    // Field inverse (the order spans a number field).
    QCoords qinv(const QCoords& x) const;
    QCoords qpow(const QCoords& x, long k) const;  // k >= 0

    // Column matrix of multiplication by x on the order (integral x).
    IntMat mul_matrix(const Coords& x) const;

  private:
    int n_;
    // mult_[i][j] = coordinates of b_i * b_j
    std::vector<std::vector<Coords>> mult_;
    Order(int n, std::vector<std::vector<Coords>> mult);
};

// ---------------------------------------------------------------------------

class PrimeIdeal {
  public:
    // Internal factory: the ideal (ell, gens...) of the order, which must be
    // maximal.  Verified on construction (norm a prime power, residue ring a
    // field of the right size).
    static PrimeIdeal make(OrderPtr order, const Int& ell, std::vector<Coords> gens,
                           std::string label);

    const Order& order() const;
    const Int& residue_char() const;
    int ramification_index() const;  // e
    int residue_degree() const;      // f
    Int norm() const;                // ell^f
    const std::string& label() const;
    const std::vector<Coords>& extra_generators() const;

    const FqField& residue_field() const;
    // Valuation of a field element; x = 0 gives the infinite valuation.
    PadicVal valuation(const QCoords& x) const;
    // Residue of x / pi^k (k = 0 for plain reduction); requires v(x) >= k.
    FqElem reduce(const QCoords& x) const;
    FqElem reduce_shifted(const QCoords& x, long k) const;
    // Some integral preimage of a residue element.
    QCoords lift(const FqElem& a) const;
    QCoords uniformizer() const;

    // Does this prime of a larger field lie above the given prime of a
    // subfield, where embed maps subfield coordinates into this field?
    bool lies_above(const PrimeIdeal& below,
                    const std::vector<QCoords>& embedded_gens) const;

    // Index of the conjugate prime within the same primes_above() result
    // (self-index when the prime is its own conjugate).
    int partner_index = 0;

    bool operator==(const PrimeIdeal& o) const;

  private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

// ---------------------------------------------------------------------------

enum class Splitting { Split, Inert, Ramified };

class ImagQuadField {
  public:
    explicit ImagQuadField(const Int& D);  // D > 0 squarefree

    const Int& D() const { return D_; }
    const Int& discriminant() const { return disc_; }
    // true when D = 3 mod 4: maximal order Z[(1+omega)/2], else Z[omega]
    bool half_basis() const { return half_; }
    const OrderPtr& order() const { return order_; }

    // Coordinates of a + b*omega (omega = sqrt(-D)) in the order basis.
    QCoords from_quad(const Rat& a, const Rat& b) const;
    // Back to (a, b) with x = a + b*omega.
    std::pair<Rat, Rat> to_quad(const QCoords& x) const;

    Splitting splitting(const Int& ell) const;
    std::vector<PrimeIdeal> primes_above(const Int& ell) const;

    std::string name() const;  // "Q(sqrt(-D))"

  private:
    Int D_, disc_;
    bool half_;
    OrderPtr order_;
};

Splitting splitting_in_K(const Int& ell, const ImagQuadField& K);

// Class number by exhaustive enumeration of reduced primitive binary
// quadratic forms of discriminant disc(K).
Int class_number(const ImagQuadField& K, const Int& bound = Int(1000000));

// Coprime (a, b) with a^2 + Delta b^2 = m, smallest b >= 0 then a > 0.
struct NormEquationSolution {
    Int a, b;
};
std::optional<NormEquationSolution> solve_norm_equation(const Int& m, const Int& Delta);

// Exact k-th power of a + b*omega in Q(sqrt(-D)) (omega^2 = -D).
struct QuadElem {
    Rat a, b;
    bool operator==(const QuadElem&) const = default;
};
QuadElem quad_mul(const QuadElem& x, const QuadElem& y, const Int& D);
QuadElem quad_power(const QuadElem& x, unsigned long k, const Int& D);

// ---------------------------------------------------------------------------

// K' = K(mu_p).  Supported concretely for p = 3 with disc(K) coprime to 3,
// where the ring of integers is the tensor of the two quadratic rings and the
// degree is 4; other parameters raise UnsupportedField.
class CompositumField {
  public:
    CompositumField(const ImagQuadField& K, const Int& p);

    const ImagQuadField& base() const { return K_; }
    const OrderPtr& order() const { return order_; }
    int degree() const { return 4; }

    QCoords embed_base(const QCoords& xK) const;  // K coords -> K' coords
    QCoords from_rational(const Rat& x) const;

    std::vector<PrimeIdeal> primes_above(const Int& ell) const;

    std::string name() const;

  private:
    ImagQuadField K_;
    Int p_;
    OrderPtr cyclo_;  // Z[zeta_3]
    OrderPtr order_;
};

}  // namespace h10::nf

#endif
