#pragma once

namespace qpc {

enum class Exec { Serial, Parallel };

// OpenMP thread budget, capped by QPC_THREADS when set.
int thread_count();

}  // namespace qpc
