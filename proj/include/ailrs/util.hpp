#pragma once

#include <functional>
#include <string>

namespace ailrs {

// Runs fn(0..count-1) on up to AILRS_THREADS workers (default: hardware
// concurrency). Callers must write results into per-index slots; reductions
// happen afterwards in index order, so results do not depend on scheduling.
void parallel_for(int count, const std::function<void(int)>& fn);

int thread_cap();

// Shortest decimal form that parses back to the identical double.
std::string fmt_double(double v);

// write-temp-then-rename
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace ailrs
