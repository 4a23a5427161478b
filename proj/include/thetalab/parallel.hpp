#pragma once

// Deterministic data-parallel reduction.
//
// An index range is cut into fixed-size chunks whose boundaries depend only on
// the range and the chunk size. Chunks are evaluated by a pool of worker
// threads and the partial results are combined in ascending chunk order, so
// the result is bit-identical for any thread count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <thread>
#include <vector>

namespace thetalab {

namespace detail {
inline std::atomic<unsigned>& thread_count_slot() {
    static std::atomic<unsigned> n{1};
    return n;
}
}  // namespace detail

/// Process-wide worker count for chunked reductions (0 means hardware concurrency).
inline void set_thread_count(unsigned n) {
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    detail::thread_count_slot().store(n);
}
inline unsigned thread_count() { return detail::thread_count_slot().load(); }

/// Neumaier-compensated accumulator.
template <class T>
class CompensatedSum {
public:
    void add(T x) {
        T t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    void add(const CompensatedSum& o) {
        add(o.sum_);
        add(o.comp_);
    }
    T value() const { return sum_ + comp_; }

private:
    T sum_{};
    T comp_{};
};

/// Complex accumulator compensating real and imaginary parts separately.
class ComplexCompensatedSum {
public:
    void add(std::complex<double> z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    void add(const ComplexCompensatedSum& o) {
        re_.add(o.re_);
        im_.add(o.im_);
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum<double> re_;
    CompensatedSum<double> im_;
};

/// Evaluates fn(lo, hi) on every chunk [lo, hi) of [begin, end) and returns
/// the per-chunk results in ascending order.
template <class Fn>
auto chunked_map(std::uint64_t begin, std::uint64_t end, std::uint64_t chunk, Fn&& fn)
    -> std::vector<decltype(fn(begin, end))> {
    using R = decltype(fn(begin, end));
    if (end <= begin) return {};
    chunk = std::max<std::uint64_t>(chunk, 1);
    const std::uint64_t count = (end - begin + chunk - 1) / chunk;
    std::vector<R> out(count);
    auto run = [&](std::uint64_t c) {
        std::uint64_t lo = begin + c * chunk;
        std::uint64_t hi = std::min(end, lo + chunk);
        out[c] = fn(lo, hi);
    };
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(thread_count(), count));
    if (workers <= 1) {
        for (std::uint64_t c = 0; c < count; ++c) run(c);
        return out;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::uint64_t c = next.fetch_add(1); c < count; c = next.fetch_add(1)) run(c);
        });
    }
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace thetalab
