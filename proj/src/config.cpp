#include "pgw/config.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace pgw {
namespace {

std::atomic<int> g_threads{-1};  // -1 = not initialized, 0 = auto

int hardware_default() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

int init_from_env() {
  if (const char* env = std::getenv("PGW_THREADS")) {
    int n = std::atoi(env);
    if (n >= 0) return n;
  }
  return 0;
}

}  // namespace

void set_threads(int n) { g_threads.store(n < 0 ? 0 : n); }

int threads() {
  int v = g_threads.load();
  if (v < 0) {
    v = init_from_env();
    g_threads.store(v);
  }
  return v == 0 ? hardware_default() : v;
}

bool parallel_enabled() { return threads() > 1; }

}  // namespace pgw
