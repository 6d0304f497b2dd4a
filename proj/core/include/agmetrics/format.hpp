#pragma once

#include <string>

namespace agm {

/// Shortest decimal form of `v` with `significant` significant digits
/// (printf %g semantics). Used everywhere a file format pins its precision,
/// so emitted bytes are reproducible across runs.
std::string format_sig(double v, int significant);

} // namespace agm
