#pragma once

#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "lamehardy/multivector.hpp"

namespace lamehardy {

// Worker count: hardware concurrency capped by LAMEHARDY_THREADS and by the
// job count.  Results never depend on it; parallel loops only ever write
// disjoint slots and all reductions are per-slot sequential.
inline int worker_count(std::size_t jobs) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("LAMEHARDY_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1 && v < 1024) hw = std::min(hw, (unsigned)v);
    }
    if (jobs < hw) hw = (unsigned)(jobs == 0 ? 1 : jobs);
    return (int)hw;
}

template <typename Body>
inline void parallel_for(std::size_t n, Body&& body) {
    const int nw = worker_count(n);
    if (nw <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr first;
    std::mutex mtx;
    auto run = [&](int w) {
        try {
            for (std::size_t i = (std::size_t)w; i < n; i += (std::size_t)nw) body(i);
        } catch (...) {
            std::lock_guard<std::mutex> lk(mtx);
            if (!first) first = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nw - 1);
    for (int w = 1; w < nw; ++w) pool.emplace_back(run, w);
    run(0);
    for (auto& t : pool) t.join();
    if (first) std::rethrow_exception(first);
}

// Compensated (Kahan) accumulation, per coefficient slot.
class KahanScalar {
public:
    void add(double v) {
        const double y = v - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

class KahanMultivector {
public:
    explicit KahanMultivector(int m) : s_(m), c_(m) {}

    void add(const Multivector& v) {
        for (unsigned i = 0, n = s_.size(); i < n; ++i) {
            const double y = v.coeff(i) - c_.coeff(i);
            const double t = s_.coeff(i) + y;
            c_.coeff(i) = (t - s_.coeff(i)) - y;
            s_.coeff(i) = t;
        }
    }

    void add_scaled(double w, const Multivector& v) {
        for (unsigned i = 0, n = s_.size(); i < n; ++i) {
            const double y = w * v.coeff(i) - c_.coeff(i);
            const double t = s_.coeff(i) + y;
            c_.coeff(i) = (t - s_.coeff(i)) - y;
            s_.coeff(i) = t;
        }
    }

    const Multivector& value() const { return s_; }

private:
    Multivector s_;
    Multivector c_;
};

} // namespace lamehardy
