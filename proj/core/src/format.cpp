#include "agmetrics/format.hpp"

#include <cstdio>

namespace agm {

std::string format_sig(double v, int significant) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", significant, v);
    return buf;
}

} // namespace agm
