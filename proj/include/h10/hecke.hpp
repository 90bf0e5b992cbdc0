#ifndef H10_HECKE_HPP
#define H10_HECKE_HPP

#include <mutex>

#include "h10/localdata.hpp"

// Hecke coefficient sequences a_n of a rational elliptic curve: traces at
// good primes by point counting, bad-prime values from the reduction kind,
// and the multiplicative extension.  The prime sweep is a parallel map with
// a deterministic merge.

namespace h10::curves {

class HeckeCoefficients {
  public:
    explicit HeckeCoefficients(Model minimal_model);

    const Model& model() const { return m_; }
    const Int& conductor() const { return conductor_; }
    const std::map<Int, localdata::LocalReductionData>& bad_data() const { return bad_; }

    // a_ell for a prime ell: trace at good primes, +-1 / 0 at bad primes.
    Int a_ell(const Int& ell) const;
    // multiplicative extension; n >= 1
    Int a_n(const Int& n) const;
    // exact a_n for all 1 <= n <= bound (index n), parallel over primes
    std::vector<long> a_n_sweep(long bound, int jobs) const;

  private:
    Model m_;
    Int conductor_;
    std::map<Int, localdata::LocalReductionData> bad_;
    mutable std::mutex mtx_;
    mutable std::map<Int, Int> cache_;
    Int a_prime_power(const Int& ell, long k) const;
};

}  // namespace h10::curves

#endif
