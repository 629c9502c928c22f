#pragma once

namespace bexsam {

// Execution policy for the data-parallel kernels. Serial is the reference
// implementation; parallel uses OpenMP and must produce bit-identical results.
enum class Exec { serial, parallel };

}  // namespace bexsam
