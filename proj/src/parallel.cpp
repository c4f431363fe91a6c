#include "flatfront/parallel.hpp"

#include <cstdlib>

namespace flatfront {

namespace {

int initial_threads() {
    if (const char* env = std::getenv("FLATFRONT_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::atomic<int> g_threads{0};

}  // namespace

int default_threads() {
    int n = g_threads.load();
    if (n <= 0) {
        n = initial_threads();
        g_threads.store(n);
    }
    return n;
}

void set_default_threads(int n) { g_threads.store(n); }

}  // namespace flatfront
