#pragma once

namespace agmon {

// Execution policy for the hot kernels (matvec, eigensolver inner loops,
// Monte Carlo sampling).  The serial path is the reference implementation;
// parallel paths partition work so that every output element is accumulated
// in the same order as the serial code, which makes the two modes
// bit-identical.  Tests rely on that equivalence.
enum class Exec { serial, parallel };

int max_threads();

}  // namespace agmon
