#pragma once

namespace pgw {

// Worker-thread count for the data-parallel kernels. 0 = hardware default.
// Reads PGW_THREADS once on first use; set_threads overrides at runtime.
void set_threads(int n);
int threads();
bool parallel_enabled();

}  // namespace pgw
