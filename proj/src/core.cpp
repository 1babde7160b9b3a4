#include "bloch/core.hpp"
#include "bloch/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace bloch {

std::string format_momentum(const std::vector<double>& k) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (i) os << ", ";
        os << k[i];
    }
    os << ')';
    return os.str();
}

NotInsulatorError::NotInsulatorError(std::vector<double> momentum, double smallest_magnitude)
    : UnresolvedError("not an insulator: |lambda| = " + std::to_string(smallest_magnitude) +
                      " at k = " + format_momentum(momentum)),
      momentum_(std::move(momentum)),
      smallest_magnitude_(smallest_magnitude) {}

unsigned thread_count() {
    unsigned requested = 0;
    if (const char* env = std::getenv("BLOCH_TOPO_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) requested = static_cast<unsigned>(v);
    }
    if (requested == 0) requested = std::max(1u, std::thread::hardware_concurrency());
    return requested;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace bloch
