#include "h10/hecke.hpp"

#include <future>
#include <thread>

namespace h10::curves {

HeckeCoefficients::HeckeCoefficients(Model minimal) : m_(std::move(minimal)) {
    if (minimal_model(m_) != m_) throw MathError("HeckeCoefficients: model is not minimal");
    auto Q = nf::Order::rationals();
    conductor_ = 1;
    for (const Int& ell : bad_primes(m_)) {
        auto P = nf::PrimeIdeal::make(Q, ell, {}, ell.get_str());
        localdata::LocalReductionData d = localdata::tate_algorithm(localdata::base_change(m_, Q), P);
        for (long i = 0; i < d.conductor_exponent; ++i) conductor_ *= ell;
        if (d.kind != localdata::ReductionKind::Good) bad_.emplace(ell, d);
    }
}

Int HeckeCoefficients::a_ell(const Int& ell) const {
    if (!is_prime(ell)) throw MathError("a_ell: not a prime");
    auto it = bad_.find(ell);
    if (it != bad_.end()) return it->second.a_v;
    {
        std::lock_guard<std::mutex> lock(mtx_);
        auto c = cache_.find(ell);
        if (c != cache_.end()) return c->second;
    }
    Int a = trace_good(m_, ell);
    std::lock_guard<std::mutex> lock(mtx_);
    cache_.emplace(ell, a);
    return a;
}

Int HeckeCoefficients::a_prime_power(const Int& ell, long k) const {
    Int a = a_ell(ell);
    if (bad_.count(ell)) {
        Int out = 1;
        for (long i = 0; i < k; ++i) out *= a;  // a_{ell^k} = a_ell^k at bad primes
        return out;
    }
    Int prev = 1, cur = a;
    for (long i = 1; i < k; ++i) {
        Int next = a * cur - ell * prev;
        prev = cur;
        cur = next;
    }
    return k == 0 ? Int(1) : cur;
}

Int HeckeCoefficients::a_n(const Int& n) const {
    if (n < 1) throw MathError("a_n: n must be >= 1");
    Int out = 1;
    for (const auto& [ell, k] : factor(n)) out *= a_prime_power(ell, k);
    return out;
}

std::vector<long> HeckeCoefficients::a_n_sweep(long bound, int jobs) const {
    if (bound < 1) throw MathError("a_n_sweep: bound must be >= 1");
    if (bound > 10000000) throw MathError("a_n_sweep: bound too large");
    if (jobs <= 0) jobs = int(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;

    std::vector<uint32_t> primes = primes_up_to(uint32_t(bound));
    std::vector<long> a_p(primes.size(), 0);
    auto work = [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) {
            Int ell(primes[i]);
            auto it = bad_.find(ell);
            if (it != bad_.end())
                a_p[i] = to_long(it->second.a_v);
            else
                a_p[i] = long(primes[i]) + 1 - count_points_mod_ell(m_, long(primes[i]));
        }
    };
    if (jobs == 1 || primes.size() < 64) {
        work(0, primes.size());
    } else {
        std::vector<std::future<void>> futs;
        size_t chunk = (primes.size() + size_t(jobs) - 1) / size_t(jobs);
        for (int j = 0; j < jobs; ++j) {
            size_t lo = size_t(j) * chunk, hi = std::min(primes.size(), lo + chunk);
            if (lo >= hi) break;
            futs.push_back(std::async(std::launch::async, work, lo, hi));
        }
        for (auto& f : futs) f.get();
    }

    // smallest-prime-factor sieve, then multiplicative fill
    std::vector<uint32_t> spf(size_t(bound) + 1, 0);
    for (size_t i = 0; i < primes.size(); ++i) {
        uint64_t p = primes[i];
        for (uint64_t m = p; m <= uint64_t(bound); m += p)
            if (spf[size_t(m)] == 0) spf[size_t(m)] = uint32_t(i + 1);  // 1-based index
    }
    std::vector<long> a(size_t(bound) + 1, 0);
    a[1] = 1;
    for (long n = 2; n <= bound; ++n) {
        uint32_t pi = spf[size_t(n)] - 1;
        long p = long(primes[pi]);
        long n1 = n / p;
        // a_{p n1} = a_p a_{n1} - [p good and p | n1] * p * a_{n1/p}
        long val = a_p[pi] * a[size_t(n1)];
        if (n1 % p == 0 && !bad_.count(Int(p))) val -= p * a[size_t(n1 / p)];
        a[size_t(n)] = val;
    }
    return a;
}

}  // namespace h10::curves
